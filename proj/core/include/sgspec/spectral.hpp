#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sgspec/graph.hpp"

namespace sgspec {

using cplx = std::complex<double>;

/// Discrete probability measure on the real line.
///
/// Atoms are sorted by strictly increasing location with positive weights
/// summing to 1 (within 1e-12).
class SpectralMeasure {
public:
    struct Atom {
        double location;
        double weight;
        friend bool operator==(const Atom&, const Atom&) = default;
    };

    SpectralMeasure() = default;
    /// Validates and sorts; atoms sharing a location are merged.
    explicit SpectralMeasure(std::vector<Atom> atoms);

    /// Uniform weights over `values`. Consecutive sorted values closer than
    /// rel_tol * max(1, |value|) collapse into one atom at their mean.
    static SpectralMeasure from_values(std::vector<double> values, double rel_tol = 0.0);
    static SpectralMeasure dirac(double x) { return SpectralMeasure({{x, 1.0}}); }

    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }

    /// mu((-inf, x]).
    double cdf(double x) const;
    double mean() const;
    /// Smallest x with cdf(x) >= q.
    double quantile(double q) const;

    friend bool operator==(const SpectralMeasure&, const SpectralMeasure&) = default;

private:
    std::vector<Atom> atoms_;
};

/// Equal-weight mixture, the seed-averaged empirical measure.
SpectralMeasure mixture(std::span<const SpectralMeasure> parts);

namespace spectral {

inline constexpr int kDefaultDenseCap = 6000;
/// Relative tolerance for collapsing numerically equal eigenvalues into atoms.
inline constexpr double kAtomMergeTolerance = 1e-9;

/// Delta = A - alpha D (unweighted) or W o A - alpha T (weighted), dense.
struct DeltaMatrix {
    int alpha = 0;
    Eigen::MatrixXd entries;

    Eigen::Index n() const noexcept { return entries.rows(); }
};

/// Throws CapacityError when n exceeds dense_cap, InvalidArgument for alpha not in {0, 1}.
DeltaMatrix delta_matrix(const Graph& g, int alpha, int dense_cap = kDefaultDenseCap);
DeltaMatrix delta_matrix(const WeightedGraph& g, int alpha, int dense_cap = kDefaultDenseCap);

/// All eigenvalues in increasing order. Throws NumericalError if the solver
/// does not converge or the result fails its residual spot check.
std::vector<double> eigenvalues(const DeltaMatrix& m);

/// Empirical spectral measure with near-equal eigenvalues merged.
SpectralMeasure esd(const DeltaMatrix& m);

/// sum_i w_i / (lambda_i - z). Throws InvalidArgument if Im z <= 0.
cplx stieltjes_empirical(const SpectralMeasure& mu, cplx z);

/// Diagonal of (Delta - zI)^{-1} from a complex LU factorization.
std::vector<cplx> resolvent_diag(const DeltaMatrix& m, cplx z);

/// Exact Levy distance (to 1e-9) between two discrete measures.
double levy_distance(const SpectralMeasure& mu, const SpectralMeasure& nu);

/// sup_x |F_mu(x) - F_nu(x)|.
double kolmogorov_distance(const SpectralMeasure& mu, const SpectralMeasure& nu);

/// Drops every edge with an endpoint whose original degree exceeds ell.
Graph truncate_high_degree(const Graph& g, int ell);

struct RankBound {
    double levy;
    double bound;
};
/// Levy distance between the spectra of Delta(g) and Delta(truncated g) next to
/// rank(difference)/n, rank counted as singular values above 1e-9 n.
RankBound rank_bound_check(const Graph& g, int ell, int alpha, int dense_cap = kDefaultDenseCap);

/// max_i |R_ii - (Delta_ii - z - beta_i^T (Delta_(i) - z)^{-1} beta_i)^{-1}|,
/// the two sides of the Schur complement formula.
double schur_check(const DeltaMatrix& m, cplx z);

struct HistogramBin {
    double left;
    double right;
    double mass;
};
/// Mass of mu on [left, right) for `bins` equal bins covering [lo, hi]; the last
/// bin is closed. Mass outside [lo, hi] is not reported.
std::vector<HistogramBin> histogram(const SpectralMeasure& mu, double lo, double hi, int bins);

// CSV: "location,weight" and "bin_left,bin_right,mass", 17 significant digits.
void write_measure_csv(std::ostream& os, const SpectralMeasure& mu);
SpectralMeasure read_measure_csv(std::istream& is);
void write_histogram_csv(std::ostream& os, const std::vector<HistogramBin>& h);

}  // namespace spectral
}  // namespace sgspec

#include "sgspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "sgspec/errors.hpp"
#include "sgspec/format.hpp"

namespace sgspec {

SpectralMeasure::SpectralMeasure(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.location < b.location; });
    double total = 0;
    for (const auto& a : atoms) {
        if (!(a.weight > 0) || !std::isfinite(a.location)) throw InvalidArgument("measure atoms need finite location and positive weight");
        if (!atoms_.empty() && atoms_.back().location == a.location) {
            atoms_.back().weight += a.weight;
        } else {
            atoms_.push_back(a);
        }
        total += a.weight;
    }
    if (atoms_.empty()) throw InvalidArgument("measure has no atoms");
    if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("measure weights sum to " + fmt17(total) + ", expected 1");
}

SpectralMeasure SpectralMeasure::from_values(std::vector<double> values, double rel_tol) {
    if (values.empty()) throw InvalidArgument("measure has no atoms");
    std::sort(values.begin(), values.end());
    const double w = 1.0 / static_cast<double>(values.size());
    std::vector<Atom> atoms;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= values.size(); ++i) {
        const bool split = i == values.size() ||
                           values[i] - values[i - 1] > rel_tol * std::max(1.0, std::abs(values[i - 1]));
        if (!split) continue;
        const auto count = static_cast<double>(i - start);
        const double loc = std::accumulate(values.begin() + static_cast<std::ptrdiff_t>(start),
                                           values.begin() + static_cast<std::ptrdiff_t>(i), 0.0) / count;
        atoms.push_back({loc, count * w});
        start = i;
    }
    // Summing count/size directly can drift from 1 by a few ulps over many atoms.
    double total = 0;
    for (const auto& a : atoms) total += a.weight;
    atoms.back().weight += 1.0 - total;
    return SpectralMeasure(std::move(atoms));
}

double SpectralMeasure::cdf(double x) const {
    double acc = 0;
    for (const auto& a : atoms_) {
        if (a.location > x) break;
        acc += a.weight;
    }
    return std::min(acc, 1.0);
}

double SpectralMeasure::mean() const {
    double m = 0;
    for (const auto& a : atoms_) m += a.location * a.weight;
    return m;
}

double SpectralMeasure::quantile(double q) const {
    double acc = 0;
    for (const auto& a : atoms_) {
        acc += a.weight;
        if (acc >= q - 1e-15) return a.location;
    }
    return atoms_.back().location;
}

SpectralMeasure mixture(std::span<const SpectralMeasure> parts) {
    if (parts.empty()) throw InvalidArgument("mixture of zero measures");
    std::vector<SpectralMeasure::Atom> atoms;
    const double w = 1.0 / static_cast<double>(parts.size());
    for (const auto& p : parts)
        for (const auto& a : p.atoms()) atoms.push_back({a.location, a.weight * w});
    double total = 0;
    for (const auto& a : atoms) total += a.weight;
    atoms.back().weight += 1.0 - total;
    return SpectralMeasure(std::move(atoms));
}

namespace spectral {

namespace {

void check_alpha(int alpha) {
    if (alpha != 0 && alpha != 1) throw InvalidArgument("alpha must be 0 or 1");
}

void check_cap(Vertex n, int dense_cap) {
    if (n > dense_cap) {
        throw CapacityError("graph with n=" + std::to_string(n) + " exceeds dense_cap=" + std::to_string(dense_cap));
    }
}

void check_upper(cplx z) {
    if (!(z.imag() > 0)) throw InvalidArgument("Stieltjes argument needs Im z > 0");
}

/// Sorted locations with cumulative masses; cdf by binary search.
struct StepCdf {
    std::vector<double> x;
    std::vector<double> c;

    explicit StepCdf(const SpectralMeasure& mu) {
        double acc = 0;
        for (const auto& a : mu.atoms()) {
            x.push_back(a.location);
            c.push_back(acc += a.weight);
        }
        c.back() = 1.0;
    }
    double operator()(double t) const {
        const auto it = std::upper_bound(x.begin(), x.end(), t);
        return it == x.begin() ? 0.0 : c[static_cast<std::size_t>(it - x.begin()) - 1];
    }
};

/// sup_x G(x) - F(x + h). Both sides are right-continuous step functions, so
/// the supremum is attained at a jump of G or just where F(x + h) jumps.
double sup_gap(const StepCdf& g, const StepCdf& f, double h) {
    double best = 0;
    for (std::size_t i = 0; i < g.x.size(); ++i) best = std::max(best, g.c[i] - f(g.x[i] + h));
    for (std::size_t j = 0; j < f.x.size(); ++j) best = std::max(best, g(f.x[j] - h) - f.c[j]);
    return best;
}

}  // namespace

DeltaMatrix delta_matrix(const Graph& g, int alpha, int dense_cap) {
    check_alpha(alpha);
    check_cap(g.n(), dense_cap);
    DeltaMatrix m{alpha, Eigen::MatrixXd::Zero(g.n(), g.n())};
    for (const auto& e : g.edges()) {
        m.entries(e.u, e.v) = m.entries(e.v, e.u) = 1.0;
        m.entries(e.u, e.u) -= alpha;
        m.entries(e.v, e.v) -= alpha;
    }
    return m;
}

DeltaMatrix delta_matrix(const WeightedGraph& wg, int alpha, int dense_cap) {
    check_alpha(alpha);
    const auto& g = wg.graph();
    check_cap(g.n(), dense_cap);
    DeltaMatrix m{alpha, Eigen::MatrixXd::Zero(g.n(), g.n())};
    for (std::size_t i = 0; i < g.m(); ++i) {
        const auto& e = g.edges()[i];
        const double w = wg.weights()[i];
        m.entries(e.u, e.v) = m.entries(e.v, e.u) = w;
        m.entries(e.u, e.u) -= alpha * w;
        m.entries(e.v, e.v) -= alpha * w;
    }
    return m;
}

std::vector<double> eigenvalues(const DeltaMatrix& m) {
    const auto n = m.n();
    if (n == 0) return {};
    // Small matrices get a full eigenvector residual check; large ones are
    // checked through the first two spectral moments, which need no vectors.
    const bool with_vectors = n <= 400;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.entries,
                                                          with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge (n=" + std::to_string(n) + ")");
    const auto& values = solver.eigenvalues();
    const double norm = std::max(1.0, m.entries.norm());
    if (with_vectors) {
        const Eigen::MatrixXd residual = m.entries * solver.eigenvectors() - solver.eigenvectors() * values.asDiagonal();
        const double worst = residual.colwise().norm().maxCoeff();
        if (worst > 1e-8 * norm) throw NumericalError("eigen residual " + fmt17(worst) + " exceeds 1e-8 * ||M||");
    } else {
        const double trace_err = std::abs(values.sum() - m.entries.trace());
        const double frob_err = std::abs(values.squaredNorm() - m.entries.squaredNorm());
        if (trace_err > 1e-8 * norm * static_cast<double>(n) || frob_err > 1e-8 * norm * norm) {
            throw NumericalError("eigenvalues fail the trace/Frobenius spot check");
        }
    }
    return {values.data(), values.data() + values.size()};
}

SpectralMeasure esd(const DeltaMatrix& m) {
    if (m.n() == 0) throw InvalidArgument("empty matrix has no spectral measure");
    return SpectralMeasure::from_values(eigenvalues(m), kAtomMergeTolerance);
}

cplx stieltjes_empirical(const SpectralMeasure& mu, cplx z) {
    check_upper(z);
    cplx s = 0;
    for (const auto& a : mu.atoms()) s += a.weight / (a.location - z);
    return s;
}

std::vector<cplx> resolvent_diag(const DeltaMatrix& m, cplx z) {
    check_upper(z);
    const auto n = m.n();
    Eigen::MatrixXcd shifted = m.entries.cast<cplx>();
    shifted.diagonal().array() -= z;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
    const Eigen::MatrixXcd inv = lu.solve(Eigen::MatrixXcd::Identity(n, n));
    if (!inv.allFinite()) throw NumericalError("resolvent solve produced non-finite values");
    std::vector<cplx> out(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = inv(i, i);
    return out;
}

double levy_distance(const SpectralMeasure& mu, const SpectralMeasure& nu) {
    const StepCdf f(mu), g(nu);
    auto feasible = [&](double h) { return sup_gap(g, f, h) <= h && sup_gap(f, g, h) <= h; };
    if (feasible(0.0)) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-11) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
    }
    return hi;
}

double kolmogorov_distance(const SpectralMeasure& mu, const SpectralMeasure& nu) {
    const StepCdf f(mu), g(nu);
    double best = 0;
    for (const double x : f.x) best = std::max(best, std::abs(f(x) - g(x)));
    for (const double x : g.x) best = std::max(best, std::abs(f(x) - g(x)));
    return best;
}

Graph truncate_high_degree(const Graph& g, int ell) {
    if (ell < 0) throw InvalidArgument("truncation level must be >= 0");
    const auto deg = g.degrees();
    std::vector<Edge> kept;
    for (const auto& e : g.edges())
        if (deg[e.u] <= ell && deg[e.v] <= ell) kept.push_back(e);
    return Graph(g.n(), std::move(kept));
}

RankBound rank_bound_check(const Graph& g, int ell, int alpha, int dense_cap) {
    if (g.n() == 0) return {0.0, 0.0};
    const auto full = delta_matrix(g, alpha, dense_cap);
    const auto cut = delta_matrix(truncate_high_degree(g, ell), alpha, dense_cap);
    const double levy = levy_distance(SpectralMeasure::from_values(eigenvalues(full)),
                                      SpectralMeasure::from_values(eigenvalues(cut)));
    const DeltaMatrix diff{alpha, full.entries - cut.entries};
    // Singular values of a symmetric matrix are |eigenvalues|.
    const double cutoff = 1e-9 * static_cast<double>(g.n());
    const auto ev = eigenvalues(diff);
    const auto rank = std::count_if(ev.begin(), ev.end(), [cutoff](double x) { return std::abs(x) > cutoff; });
    return {levy, static_cast<double>(rank) / static_cast<double>(g.n())};
}

double schur_check(const DeltaMatrix& m, cplx z) {
    check_upper(z);
    const auto n = m.n();
    if (n <= 1) return 0.0;
    const auto diag = resolvent_diag(m, z);
    double worst = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        // Minor with row/column i removed, and the i-th column without entry i.
        Eigen::MatrixXcd minor(n - 1, n - 1);
        Eigen::VectorXcd beta(n - 1);
        for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
            if (r == i) continue;
            beta(rr) = m.entries(r, i);
            for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
                if (c == i) continue;
                minor(rr, cc++) = m.entries(r, c);
            }
            ++rr;
        }
        minor.diagonal().array() -= z;
        const Eigen::VectorXcd x = minor.partialPivLu().solve(beta);
        const cplx schur = 1.0 / (m.entries(i, i) - z - beta.cwiseProduct(x).sum());
        worst = std::max(worst, std::abs(diag[static_cast<std::size_t>(i)] - schur));
    }
    return worst;
}

std::vector<HistogramBin> histogram(const SpectralMeasure& mu, double lo, double hi, int bins) {
    if (bins < 1 || !(hi > lo)) throw InvalidArgument("histogram needs bins >= 1 and hi > lo");
    std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
    const double width = (hi - lo) / bins;
    for (int b = 0; b < bins; ++b) out[static_cast<std::size_t>(b)] = {lo + b * width, b + 1 == bins ? hi : lo + (b + 1) * width, 0.0};
    for (const auto& a : mu.atoms()) {
        if (a.location < lo || a.location > hi) continue;
        auto b = static_cast<int>((a.location - lo) / width);
        b = std::clamp(b, 0, bins - 1);
        out[static_cast<std::size_t>(b)].mass += a.weight;
    }
    return out;
}

void write_measure_csv(std::ostream& os, const SpectralMeasure& mu) {
    os << "location,weight\n";
    for (const auto& a : mu.atoms()) os << fmt17(a.location) << ',' << fmt17(a.weight) << '\n';
}

SpectralMeasure read_measure_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "location,weight") throw InvalidArgument("measure CSV: missing header");
    std::vector<SpectralMeasure::Atom> atoms;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw InvalidArgument("measure CSV: malformed row '" + line + "'");
        atoms.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
    return SpectralMeasure(std::move(atoms));
}

void write_histogram_csv(std::ostream& os, const std::vector<HistogramBin>& h) {
    os << "bin_left,bin_right,mass\n";
    for (const auto& b : h) os << fmt17(b.left) << ',' << fmt17(b.right) << ',' << fmt17(b.mass) << '\n';
}

}  // namespace spectral
}  // namespace sgspec

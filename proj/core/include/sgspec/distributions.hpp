#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "sgspec/random.hpp"

namespace sgspec {

/// Probability mass function with finite support on {0, 1, 2, ...}.
///
/// Stored densely as p[0..kmax]; zero entries are allowed internally but
/// support() lists only k with p_k > 0. The total mass equals 1 within 1e-12.
class DegreeDistribution {
public:
    /// Tail quantile at which infinite-support laws are cut before renormalizing.
    static constexpr double kTruncationTail = 1e-12;

    /// Throws InvalidArgument on negative entries or a total mass off by more than 1e-12.
    explicit DegreeDistribution(std::vector<double> pmf);
    /// Entries (k, p_k); p_k must be positive.
    static DegreeDistribution from_map(const std::map<int, double>& pmf);

    static DegreeDistribution delta(int k);
    /// Poisson(lambda) truncated at its 1 - 1e-12 quantile and renormalized.
    static DegreeDistribution poisson(double lambda);
    static DegreeDistribution uniform(int lo, int hi);

    double operator[](int k) const noexcept {
        return k >= 0 && static_cast<std::size_t>(k) < pmf_.size() ? pmf_[static_cast<std::size_t>(k)] : 0.0;
    }
    int max_degree() const noexcept { return static_cast<int>(pmf_.size()) - 1; }
    const std::vector<double>& pmf() const noexcept { return pmf_; }
    std::vector<std::pair<int, double>> support() const;

    double mean() const noexcept;
    double second_moment() const noexcept;
    bool is_delta() const noexcept;

    int sample(Philox& rng) const noexcept;

    /// Compact text form: "delta:3", "poisson:2", or "0:0.25,3:0.75".
    /// The parsed form of "poisson:x" is the truncated pmf.
    static DegreeDistribution parse(const std::string& text);
    std::string describe() const;

    friend bool operator==(const DegreeDistribution&, const DegreeDistribution&) = default;

private:
    std::vector<double> pmf_;
    std::vector<double> cdf_;
};

/// Total variation distance between two pmfs.
double total_variation(const DegreeDistribution& a, const DegreeDistribution& b);

/// Offspring law seen along an edge: F(k-1) proportional to k F*(k).
/// Throws InvalidArgument when F* has mean 0.
DegreeDistribution size_biased_offspring(const DegreeDistribution& fstar);

/// Edge-weight law for weighted graphs and the weighted recursion.
struct WeightSpec {
    struct Constant { double c; };
    struct Gaussian { double mean; double sd; };
    struct Uniform { double lo; double hi; };
    struct Rademacher {};
    std::variant<Constant, Gaussian, Uniform, Rademacher> law = Constant{1.0};

    double sample(Philox& rng) const noexcept;
    double mean() const noexcept;
    double second_moment() const noexcept;

    /// "constant:c", "gaussian:mu,sigma", "uniform:a,b", "rademacher".
    static WeightSpec parse(const std::string& text);
    std::string describe() const;
};

}  // namespace sgspec

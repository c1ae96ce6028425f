#include "sgspec/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sgspec/errors.hpp"
#include "sgspec/format.hpp"

namespace sgspec {

namespace {

constexpr double kMassTolerance = 1e-12;

std::vector<double> trim(std::vector<double> pmf) {
    while (!pmf.empty() && pmf.back() == 0.0) pmf.pop_back();
    return pmf;
}

double parse_number(const std::string& s, const std::string& context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidArgument("cannot parse number '" + s + "' in " + context);
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

}  // namespace

DegreeDistribution::DegreeDistribution(std::vector<double> pmf) : pmf_(trim(std::move(pmf))) {
    if (pmf_.empty()) throw InvalidArgument("degree distribution has no mass");
    double total = 0;
    for (const double p : pmf_) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidArgument("degree distribution has a negative or non-finite entry");
        total += p;
    }
    if (std::abs(total - 1.0) > kMassTolerance) {
        throw InvalidArgument("degree distribution mass is " + fmt17(total) + ", expected 1");
    }
    cdf_.resize(pmf_.size());
    double acc = 0;
    for (std::size_t k = 0; k < pmf_.size(); ++k) cdf_[k] = acc += pmf_[k];
    cdf_.back() = 1.0;
}

DegreeDistribution DegreeDistribution::from_map(const std::map<int, double>& pmf) {
    if (pmf.empty()) throw InvalidArgument("degree distribution has no mass");
    if (pmf.begin()->first < 0) throw InvalidArgument("negative degree in distribution");
    std::vector<double> dense(static_cast<std::size_t>(pmf.rbegin()->first) + 1, 0.0);
    for (const auto& [k, p] : pmf) {
        if (!(p > 0.0)) throw InvalidArgument("degree " + std::to_string(k) + " has non-positive probability");
        dense[static_cast<std::size_t>(k)] = p;
    }
    return DegreeDistribution(std::move(dense));
}

DegreeDistribution DegreeDistribution::delta(int k) {
    if (k < 0) throw InvalidArgument("negative degree");
    std::vector<double> pmf(static_cast<std::size_t>(k) + 1, 0.0);
    pmf.back() = 1.0;
    return DegreeDistribution(std::move(pmf));
}

DegreeDistribution DegreeDistribution::poisson(double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidArgument("Poisson intensity must be >= 0");
    if (lambda == 0.0) return delta(0);
    std::vector<double> pmf;
    double term = std::exp(-lambda);
    double acc = 0.0;
    for (int k = 0;; ++k) {
        if (k > 0) term *= lambda / k;
        pmf.push_back(term);
        acc += term;
        // Stop once the remaining tail is below the truncation level; the mode
        // guard keeps the loop going while terms are still growing.
        if (k >= lambda && 1.0 - acc <= kTruncationTail) break;
        if (k > 10000) break;
    }
    // Renormalize with compensated sum so the mass is 1 to rounding.
    for (auto& p : pmf) p /= acc;
    double total = 0;
    for (const double p : pmf) total += p;
    pmf[static_cast<std::size_t>(std::min<double>(std::floor(lambda), static_cast<double>(pmf.size() - 1)))] += 1.0 - total;
    return DegreeDistribution(std::move(pmf));
}

DegreeDistribution DegreeDistribution::uniform(int lo, int hi) {
    if (lo < 0 || hi < lo) throw InvalidArgument("uniform degree range invalid");
    std::vector<double> pmf(static_cast<std::size_t>(hi) + 1, 0.0);
    for (int k = lo; k <= hi; ++k) pmf[static_cast<std::size_t>(k)] = 1.0 / (hi - lo + 1);
    return DegreeDistribution(std::move(pmf));
}

std::vector<std::pair<int, double>> DegreeDistribution::support() const {
    std::vector<std::pair<int, double>> out;
    for (std::size_t k = 0; k < pmf_.size(); ++k)
        if (pmf_[k] > 0) out.emplace_back(static_cast<int>(k), pmf_[k]);
    return out;
}

double DegreeDistribution::mean() const noexcept {
    double m = 0;
    for (std::size_t k = 0; k < pmf_.size(); ++k) m += static_cast<double>(k) * pmf_[k];
    return m;
}

double DegreeDistribution::second_moment() const noexcept {
    double m = 0;
    for (std::size_t k = 0; k < pmf_.size(); ++k) m += static_cast<double>(k * k) * pmf_[k];
    return m;
}

bool DegreeDistribution::is_delta() const noexcept {
    return pmf_.back() == 1.0;
}

int DegreeDistribution::sample(Philox& rng) const noexcept {
    if (is_delta()) return max_degree();
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf_.begin(), static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
}

DegreeDistribution DegreeDistribution::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "delta") return delta(static_cast<int>(parse_number(rest, text)));
    if (head == "poisson") return poisson(parse_number(rest, text));
    std::map<int, double> pmf;
    for (const auto& item : split(text, ',')) {
        const auto c = item.find(':');
        if (c == std::string::npos) throw InvalidArgument("degree distribution entry '" + item + "' is not k:p");
        pmf[static_cast<int>(parse_number(item.substr(0, c), text))] = parse_number(item.substr(c + 1), text);
    }
    return from_map(pmf);
}

std::string DegreeDistribution::describe() const {
    if (is_delta()) return "delta:" + std::to_string(max_degree());
    std::string out;
    for (const auto& [k, p] : support()) {
        if (!out.empty()) out += ',';
        out += std::to_string(k) + ':' + fmt17(p);
    }
    return out;
}

double total_variation(const DegreeDistribution& a, const DegreeDistribution& b) {
    const int kmax = std::max(a.max_degree(), b.max_degree());
    double tv = 0;
    for (int k = 0; k <= kmax; ++k) tv += std::abs(a[k] - b[k]);
    return tv / 2;
}

DegreeDistribution size_biased_offspring(const DegreeDistribution& fstar) {
    const double mean = fstar.mean();
    if (!(mean > 0)) throw InvalidArgument("size-biasing needs a degree law with positive mean");
    std::vector<double> f(static_cast<std::size_t>(fstar.max_degree()), 0.0);
    for (int k = 1; k <= fstar.max_degree(); ++k) f[static_cast<std::size_t>(k - 1)] = k * fstar[k] / mean;
    double total = 0;
    for (const double p : f) total += p;
    for (auto& p : f) p /= total;
    return DegreeDistribution(std::move(f));
}

double WeightSpec::sample(Philox& rng) const noexcept {
    return std::visit(
        [&rng](const auto& w) -> double {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, Constant>) return w.c;
            else if constexpr (std::is_same_v<T, Gaussian>) return w.mean + w.sd * rng.normal();
            else if constexpr (std::is_same_v<T, Uniform>) return w.lo + (w.hi - w.lo) * rng.uniform();
            else return (rng() >> 63) ? 1.0 : -1.0;
        },
        law);
}

double WeightSpec::mean() const noexcept {
    return std::visit(
        [](const auto& w) -> double {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, Constant>) return w.c;
            else if constexpr (std::is_same_v<T, Gaussian>) return w.mean;
            else if constexpr (std::is_same_v<T, Uniform>) return (w.lo + w.hi) / 2;
            else return 0.0;
        },
        law);
}

double WeightSpec::second_moment() const noexcept {
    return std::visit(
        [](const auto& w) -> double {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, Constant>) return w.c * w.c;
            else if constexpr (std::is_same_v<T, Gaussian>) return w.mean * w.mean + w.sd * w.sd;
            else if constexpr (std::is_same_v<T, Uniform>) return (w.lo * w.lo + w.lo * w.hi + w.hi * w.hi) / 3;
            else return 1.0;
        },
        law);
}

WeightSpec WeightSpec::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const auto args = colon == std::string::npos ? std::vector<std::string>{} : split(text.substr(colon + 1), ',');
    auto need = [&](std::size_t count) {
        if (args.size() != count) throw InvalidArgument("weight law '" + text + "' expects " + std::to_string(count) + " parameter(s)");
    };
    if (head == "constant") {
        need(1);
        return {Constant{parse_number(args[0], text)}};
    }
    if (head == "gaussian") {
        need(2);
        const double sd = parse_number(args[1], text);
        if (sd < 0) throw InvalidArgument("gaussian weight sd must be >= 0");
        return {Gaussian{parse_number(args[0], text), sd}};
    }
    if (head == "uniform") {
        need(2);
        const double lo = parse_number(args[0], text), hi = parse_number(args[1], text);
        if (hi < lo) throw InvalidArgument("uniform weight range reversed");
        return {Uniform{lo, hi}};
    }
    if (head == "rademacher") {
        need(0);
        return {Rademacher{}};
    }
    throw InvalidArgument("unknown weight law '" + text + "'");
}

std::string WeightSpec::describe() const {
    return std::visit(
        [](const auto& w) -> std::string {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, Constant>) return "constant:" + fmt17(w.c);
            else if constexpr (std::is_same_v<T, Gaussian>) return "gaussian:" + fmt17(w.mean) + "," + fmt17(w.sd);
            else if constexpr (std::is_same_v<T, Uniform>) return "uniform:" + fmt17(w.lo) + "," + fmt17(w.hi);
            else return "rademacher";
        },
        law);
}

}  // namespace sgspec

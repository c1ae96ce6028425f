#include "sgspec/closed_form.hpp"

#include <array>
#include <cmath>

#include "sgspec/errors.hpp"

namespace sgspec::closed {

namespace {

using cplx = std::complex<double>;

void check_upper(cplx z) {
    if (!(z.imag() > 0)) throw InvalidArgument("Stieltjes argument needs Im z > 0");
}

/// Picks the candidate that is a Herglotz value at z: Im > 0 and |v| <= 1/Im z.
/// For transforms of probability measures exactly one branch qualifies; ties
/// from rounding go to the larger imaginary part.
cplx herglotz_branch(const std::array<cplx, 2>& candidates, cplx z) {
    const double bound = 1.0 / z.imag() * (1 + 1e-12);
    auto score = [&](cplx v) { return (v.imag() > 0 ? 2 : 0) + (std::abs(v) <= bound ? 1 : 0); };
    const int s0 = score(candidates[0]), s1 = score(candidates[1]);
    if (s0 != s1) return s0 > s1 ? candidates[0] : candidates[1];
    return candidates[0].imag() >= candidates[1].imag() ? candidates[0] : candidates[1];
}

}  // namespace

double kesten_mckay_edge(int k) { return 2.0 * std::sqrt(static_cast<double>(k - 1)); }

double kesten_mckay_density(int k, double x) {
    if (k < 2) throw InvalidArgument("Kesten-McKay law needs k >= 2");
    const double r2 = 4.0 * (k - 1) - x * x;
    if (r2 <= 0) return 0.0;
    return k / (2.0 * M_PI) * std::sqrt(r2) / (static_cast<double>(k) * k - x * x);
}

cplx kesten_mckay_stieltjes(int k, cplx z) {
    if (k < 2) throw InvalidArgument("Kesten-McKay law needs k >= 2");
    check_upper(z);
    const cplx root = std::sqrt(z * z - 4.0 * (k - 1));
    auto value = [&](cplx s) { return -2.0 * (k - 1) / ((k - 2.0) * z + static_cast<double>(k) * s); };
    return herglotz_branch({value(root), value(-root)}, z);
}

cplx semicircle_stieltjes(double sigma, cplx z) {
    if (!(sigma > 0)) throw InvalidArgument("semicircle needs sigma > 0");
    check_upper(z);
    const double s2 = sigma * sigma;
    const cplx root = std::sqrt(z * z - 4.0 * s2);
    return herglotz_branch({(-z + root) / (2.0 * s2), (-z - root) / (2.0 * s2)}, z);
}

double semicircle_density(double sigma, double x) {
    if (!(sigma > 0)) throw InvalidArgument("semicircle needs sigma > 0");
    const double r2 = 4.0 * sigma * sigma - x * x;
    return r2 <= 0 ? 0.0 : std::sqrt(r2) / (2.0 * M_PI * sigma * sigma);
}

DensityCurve invert_stieltjes(const StieltjesCurve& curve) {
    DensityCurve d;
    d.xs = curve.xs;
    d.eta_used = curve.eta;
    d.density.reserve(curve.size());
    for (const auto& m : curve.values) d.density.push_back(std::max(0.0, m.imag()) / M_PI);
    return d;
}

SpectralMeasure measure_from_density(const DensityCurve& curve) {
    if (curve.xs.size() < 2) throw InvalidArgument("density grid needs at least two points");
    std::vector<SpectralMeasure::Atom> atoms;
    double total = 0;
    for (std::size_t i = 1; i < curve.xs.size(); ++i) {
        const double mass = 0.5 * (curve.density[i] + curve.density[i - 1]) * (curve.xs[i] - curve.xs[i - 1]);
        if (mass > 0) {
            atoms.push_back({0.5 * (curve.xs[i] + curve.xs[i - 1]), mass});
            total += mass;
        }
    }
    if (atoms.empty()) throw InvalidArgument("density is zero on the whole grid");
    double acc = 0;
    for (auto& a : atoms) acc += a.weight /= total;
    atoms.back().weight += 1.0 - acc;
    return SpectralMeasure(std::move(atoms));
}

}  // namespace sgspec::closed

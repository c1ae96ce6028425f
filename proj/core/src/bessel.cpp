#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

#include "sgspec/errors.hpp"
#include "sgspec/parallel.hpp"
#include "sgspec/rde.hpp"

namespace sgspec::rde {

namespace {

constexpr double kSeriesLimit = 12.0;
// Upper bound on |J1| over the reals.
constexpr double kJ1Max = 0.5819;
constexpr double kTailTolerance = 1e-6;

double j1_series(double x) {
    const double q = -x * x / 4;
    double term = x / 2;  // k = 0
    double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * (k + 1));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

double j1_asymptotic(double x) {
    // Hankel expansion, order nu = 1 (mu = 4 nu^2 = 4).
    const double mu = 4.0;
    const double w = 8.0 * x;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    for (int k = 1; k <= 16; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * w);
        if (k % 2 == 1) {
            q += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
        } else {
            p += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
        }
        if (std::abs(term) < 1e-17) break;
    }
    const double chi = x - 0.75 * M_PI;
    return std::sqrt(2.0 / (M_PI * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j1(double x) {
    if (x < 0) return -bessel_j1(-x);
    return x <= kSeriesLimit ? j1_series(x) : j1_asymptotic(x);
}

double bessel_equation_residual(double p, double u, cplx z, const Population& pop) {
    if (u < 0) throw InvalidArgument("Bessel identity needs u >= 0");
    if (!(z.imag() > 0)) throw InvalidArgument("Bessel identity needs Im z > 0");
    if (pop.size() == 0) throw InvalidArgument("Bessel identity needs a nonempty population");
    const auto& y = pop.values();
    const std::size_t m = y.size();

    // Characteristic function of the population law, summed in fixed blocks.
    auto charfn = [&](double t) {
        constexpr std::size_t block = 4096;
        const std::size_t blocks = (m + block - 1) / block;
        std::vector<cplx> partial(blocks);
        parallel_for(blocks, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t b = lo; b < hi; ++b) {
                cplx acc = 0;
                for (std::size_t i = b * block; i < std::min(m, (b + 1) * block); ++i) acc += std::exp(cplx(0, t) * y[i]);
                partial[b] = acc;
            }
        });
        cplx total = 0;
        for (const auto& c : partial) total += c;
        return total / static_cast<double>(m);
    };

    const cplx lhs = charfn(u);
    if (u == 0) return std::abs(lhs - 1.0);

    // Substituting t = s^2 removes the 1/sqrt(t) singularity:
    //   int_0^inf J1(2 sqrt(ut)) / sqrt(t) g(t) dt = 2 int_0^inf J1(2 sqrt(u) s) g(s^2) ds,
    // and |g(t)| <= exp(-t Im z) bounds the tail beyond s_max.
    const double c = z.imag();
    const double ru = std::sqrt(u);
    auto tail = [&](double s) { return ru * 2.0 * kJ1Max * std::exp(-s * s * c) / (2.0 * s * c); };
    double s_max = 1.0;
    while (tail(s_max) > kTailTolerance) s_max *= 1.25;

    auto integrand = [&](double s) -> cplx {
        if (s == 0) return 0.0;
        const double t = s * s;
        const cplx phi = std::exp(p * (charfn(t) - 1.0));
        return 2.0 * bessel_j1(2.0 * ru * s) * std::exp(cplx(0, t) * z) * phi;
    };
    double err = 0;
    const cplx integral =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, s_max, 12, 1e-10, &err);
    const cplx rhs = 1.0 - ru * integral;
    return std::abs(lhs - rhs);
}

}  // namespace sgspec::rde

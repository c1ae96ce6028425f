#include "sgspec/curves.hpp"

#include <ostream>

#include "sgspec/errors.hpp"
#include "sgspec/format.hpp"

namespace sgspec {

double DensityCurve::mass() const {
    double m = 0;
    for (std::size_t i = 1; i < xs.size(); ++i) m += 0.5 * (density[i] + density[i - 1]) * (xs[i] - xs[i - 1]);
    return m;
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw InvalidArgument("linspace needs at least one point");
    if (n == 1) return {lo};
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    xs.back() = hi;
    return xs;
}

void write_curve_csv(std::ostream& os, const StieltjesCurve& c) {
    os << "x,eta,re_m,im_m,stderr,converged\n";
    for (std::size_t i = 0; i < c.size(); ++i) {
        os << fmt17(c.xs[i]) << ',' << fmt17(c.eta) << ',' << fmt17(c.values[i].real()) << ','
           << fmt17(c.values[i].imag()) << ',' << fmt17(i < c.std_error.size() ? c.std_error[i] : 0.0) << ','
           << ((i >= c.converged.size() || c.converged[i]) ? 1 : 0) << '\n';
    }
}

void write_density_csv(std::ostream& os, const DensityCurve& d) {
    os << "x,density,eta_used\n";
    for (std::size_t i = 0; i < d.xs.size(); ++i) os << fmt17(d.xs[i]) << ',' << fmt17(d.density[i]) << ',' << fmt17(d.eta_used) << '\n';
}

}  // namespace sgspec

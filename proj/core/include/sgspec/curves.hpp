#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

namespace sgspec {

/// Stieltjes transform sampled along x + i eta.
struct StieltjesCurve {
    double eta = 0;
    std::vector<double> xs;
    std::vector<std::complex<double>> values;
    std::vector<double> std_error;    ///< Monte Carlo standard error per point (0 for exact curves)
    std::vector<bool> converged;  ///< per-point fixed-point convergence flag

    std::size_t size() const noexcept { return xs.size(); }
};

/// Density sampled on an increasing grid. eta_used is the imaginary offset the
/// density was read at (0 for exact formulas).
struct DensityCurve {
    std::vector<double> xs;
    std::vector<double> density;
    double eta_used = 0;

    /// Trapezoid-rule integral over the grid.
    double mass() const;
};

/// n equally spaced points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int n);

// CSV "x,eta,re_m,im_m,stderr,converged" and "x,density,eta_used".
void write_curve_csv(std::ostream& os, const StieltjesCurve& c);
void write_density_csv(std::ostream& os, const DensityCurve& d);

}  // namespace sgspec

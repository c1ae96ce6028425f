#pragma once

#include <complex>

#include "sgspec/curves.hpp"
#include "sgspec/spectral.hpp"

namespace sgspec::closed {

/// Kesten-McKay density of the infinite k-regular tree, k >= 2.
double kesten_mckay_density(int k, double x);

/// Root Stieltjes transform of the k-regular tree,
/// -2(k-1) / ((k-2) z + k sqrt(z^2 - 4(k-1))), on the branch landing in C+.
std::complex<double> kesten_mckay_stieltjes(int k, std::complex<double> z);

/// The C+ root of sigma^2 m^2 + z m + 1 = 0 (semicircle of radius 2 sigma).
std::complex<double> semicircle_stieltjes(double sigma, std::complex<double> z);
double semicircle_density(double sigma, double x);

/// Edge of the Kesten-McKay support, 2 sqrt(k-1).
double kesten_mckay_edge(int k);

/// Density estimate Im m(x + i eta) / pi at the curve's own eta.
DensityCurve invert_stieltjes(const StieltjesCurve& curve);

/// Discretizes a density: one atom per grid cell at its midpoint, weighted by
/// the cell's trapezoid mass, renormalized. Throws InvalidArgument if the
/// density vanishes on the whole grid.
SpectralMeasure measure_from_density(const DensityCurve& curve);

/// Samples fn on xs into an exact (eta_used = 0) density curve.
template <class Fn>
DensityCurve tabulate(const std::vector<double>& xs, Fn&& fn) {
    DensityCurve d;
    d.xs = xs;
    d.density.reserve(xs.size());
    for (const double x : xs) d.density.push_back(fn(x));
    return d;
}

}  // namespace sgspec::closed

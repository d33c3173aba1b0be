#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "bobylev/common.hpp"

namespace bobylev {

/// Isotropic Fourier-side state: phi(x) with x = |eta|^2 on a grid with
/// x[0] = 0. Real because the underlying density is even/radial.
/// Off-grid evaluation uses local Lagrange interpolation of order
/// interp_order (interp_order + 1 points).
struct IsoSpectralField {
    std::vector<double> x;
    std::vector<double> phi;
    int d = 3;
    int interp_order = 5;
    bool quadratic_grid = false; // x_i = x_max (i/n)^2

    double x_max() const { return x.back(); }
    std::size_t size() const { return x.size(); }

    /// Interpolated phi(u); u must lie in [0, x_max].
    double value_at(double u) const;

    /// Checks monotone grid, x0 = 0, matching lengths, interp_order >= 3.
    void validate() const;

    /// max_i |phi_i| / phi(0) - 1 (Bochner excess; expected <= ~0 for
    /// transforms of nonnegative densities).
    double bochner_excess() const;

    /// Precomputed inverse Lagrange denominators per stencil, shared across
    /// copies of the field (the grid is immutable). Built on demand.
    void build_interp_table() const;

private:
    // invd[(lo)*(m) + a] = 1 / prod_{b != a} (x[lo+a] - x[lo+b])
    mutable std::shared_ptr<const std::vector<double>> interp_table_;
};

/// Quadratically graded grid x_i = x_max (i/n)^2, i = 0..n, sampled from f.
IsoSpectralField make_field(int n, double x_max, int d,
                            const std::function<double(double)>& f,
                            int interp_order = 5);

/// Trapezoidal weights against the radial Plancherel measure
/// omega_d(x) = (|S^{d-1}|/2) x^{d/2-1}; pairs and norms over the grid use
/// these so that compared functionals share one discrete measure.
std::vector<double> plancherel_weights(const IsoSpectralField& f);

/// omega_d(x)
double radial_weight(double x, int d);

/// Small Cartesian 2D Fourier grid, FFT-style coordinates
/// eta_i = (i - n/2) h with h = 2 eta_max / n; value(0) at (n/2, n/2).
struct Grid2DField {
    int n = 0;
    double eta_max = 0.0;
    std::vector<std::complex<double>> v;

    Grid2DField() = default;
    Grid2DField(int n_, double eta_max_)
        : n(n_), eta_max(eta_max_), v(static_cast<std::size_t>(n_) * n_) {}

    double h() const { return 2.0 * eta_max / n; }
    double coord(int i) const { return (i - n / 2) * h(); }
    std::complex<double>& at(int i, int j) { return v[static_cast<std::size_t>(i) * n + j]; }
    const std::complex<double>& at(int i, int j) const {
        return v[static_cast<std::size_t>(i) * n + j];
    }

    /// Local m x m Lagrange interpolation (m = order + 1), stencil clamped at
    /// the grid edge.
    std::complex<double> value_at(double ex, double ey, int order = 5) const;

    /// Hermitian defect max |v(-eta) - conj(v(eta))| over index pairs with
    /// |eta| <= r_max (the FFT-style grid has no mirror for the i = 0 row).
    double hermitian_defect(double r_max = 1e300) const;
};

/// Sample a radial profile phi(|eta|^2) onto the 2D grid.
Grid2DField make_grid2d_radial(int n, double eta_max,
                               const std::function<double(double)>& phi_of_x);

} // namespace bobylev

#pragma once

#include "bobylev/field.hpp"
#include "bobylev/kernel.hpp"
#include "bobylev/weights.hpp"

namespace bobylev {

/// Fourier-side collision operator for the isotropic reduction:
///   Qhat(x) = \int btilde(t) [phi(x s) phi(x c) - phi(0) phi(x)] dt,
/// s = sin^2(t/2), c = cos^2(t/2). The bracket is evaluated fused; the gain
/// and loss parts diverge separately for non-cutoff kernels.
IsoSpectralField bobylev_q_iso(const IsoSpectralField& phi, const AngularRule& rule);
IsoSpectralField bobylev_q_iso(const IsoSpectralField& phi, const AngularKernel& k, double tol);

/// Precomputed gather plan for repeated operator applications on a fixed
/// (grid, rule) pair: interpolation stencils and Lagrange basis weights for
/// every (grid point, quadrature node) are tabulated once, so each apply is
/// multiply-accumulate only. The time stepper owns one of these.
class CollisionPlan {
public:
    CollisionPlan(const IsoSpectralField& grid_proto, const AngularRule& rule);

    /// out_i = Qhat(phi)(x_i); phi indexed like the plan's grid.
    void apply(const std::vector<double>& phi, std::vector<double>& out) const;

    /// Bilinear variant: Qhat_{g,f}(x_i).
    void apply_bilinear(const std::vector<double>& g, const std::vector<double>& f,
                        std::vector<double>& out) const;

    std::size_t grid_points() const { return n_; }
    std::size_t nodes() const { return nodes_; }

private:
    std::size_t n_ = 0, nodes_ = 0;
    int m_ = 0;
    std::vector<double> wb_;
    std::vector<int> lo_;      // 2 stencil starts per (i, node): s then c
    std::vector<double> bas_;  // 2*m basis weights per (i, node)
};

/// Bilinear form variant: Qhat_{g,f}(x) = \int btilde [phi_g(xs) phi_f(xc) -
/// phi_g(0) phi_f(x)] dt on the shared grid of g and f.
IsoSpectralField bobylev_q_iso_bilinear(const IsoSpectralField& g, const IsoSpectralField& f,
                                        const AngularRule& rule);

/// Direct sigma-quadrature on a small Cartesian grid (d = 2), the anisotropic
/// cross-check oracle. n_theta_panels graded panels on (0, pi/2]; local
/// polynomial interpolation of order interp_order for f(eta+-); nodes with
/// |eta| theta below a fraction of the mesh width are skipped (the true fused
/// bracket there is beneath the interpolation floor).
Grid2DField bobylev_q_2d(const Grid2DField& f, const AngularKernel& k,
                         int n_theta_panels, int interp_order = 5);

/// -<Q(g,f), f> via the radial Plancherel pairing on the shared grid.
double coercivity_functional(const IsoSpectralField& g, const IsoSpectralField& f,
                             const AngularRule& rule);

/// Trilinear commutation-error forms. Both sides are assembled on identical
/// (theta, x) quadrature nodes; the bound is pointwise, so the discrete margin
/// inherits the sign.
///   LHS: \int\int btilde G_L(x)|phi(x)| |phi(xs)| |phi(xc)| |G(x) - G(xc)| dt dmu(x)
///   RHS: beta t (mu+1) \int\int btilde s ((1/2)log(alpha+x))^mu
///          G(xs)^{(mu+1)/(1+log alpha)} |phi(xs)| G(xc)|phi(xc)| G_L(x)|phi(x)| dt dmu(x)
double commutation_error_lhs(const IsoSpectralField& f, const WeightParams& p,
                             const AngularRule& rule);
double commutation_error_rhs(const IsoSpectralField& f, const WeightParams& p,
                             const AngularRule& rule);

} // namespace bobylev

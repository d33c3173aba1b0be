#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bobylev/collision.hpp"
#include "bobylev/solver.hpp"

#include <json.hpp>

namespace bobylev {

/// One inequality-check record: pass iff margin >= -tol.
struct CheckEntry {
    std::string check_id;
    nlohmann::json inputs;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool pass = false;
    double tol = 0.0;
};

struct VerificationReport {
    std::vector<CheckEntry> entries;
    double tol_report = 1e-12;

    void add(const std::string& id, const nlohmann::json& inputs, double lhs, double rhs,
             double margin);
    bool all_pass() const;
    int violations() const;
    nlohmann::json to_json() const;
};

/// inf over grid points x > 0 of (phi_g(0) - |phi_g(x)|) / min(x, 1), the
/// x -> 0 limit handled by the energy (second-moment stencil). Degenerate
/// (nonpositive) infimum is an error: g is concentrated at a point.
double estimate_cg_tilde(const IsoSpectralField& g);

/// Constant chain of the coercivity lower bound, instantiated for the
/// logarithmic model kernel (exact form on the whole support, theta0 = pi/2).
struct CoercivityConstants {
    double c_tilde_g = 0.0; // modulus constant of g
    double c_g_prime = 0.0; // sigma-integral lower-bound constant
    double c_g = 0.0;       // = c_g_prime / 2
    double big_c = 0.0;     // cancellation-identity constant (I2 moment)
    double big_r = 0.0;     // frequency threshold R
    double theta0 = 0.0;
};
CoercivityConstants coercivity_constants(const IsoSpectralField& g, const AngularKernel& k,
                                         double mu, const AngularRule& rule);

/// margin = -<Q(g,f), f> - RHS(alpha) >= 0 expected, where
/// RHS = C_g/(log(alpha+e))^{mu+1} ||(log<D>_alpha)_+^{(mu+1)/2} f||^2
///       - (C_g (log R)^{mu+1} + C ||g||_L1) ||f||^2.
/// The weighted multiplier is clamped at zero where log<eta>_alpha < 0
/// (alpha < 1 on low frequencies), which only strengthens the bound chain.
struct CoercivityCheck {
    double lhs, rhs, margin;
    CoercivityConstants constants;
};
CoercivityCheck check_coercivity(const IsoSpectralField& g, const IsoSpectralField& f,
                                 const AngularKernel& k, double alpha, double mu,
                                 const AngularRule& rule);

/// Pointwise-in-cube L^infinity-from-L^2 bound:
///   |h(x)| <= L (int_{Q_x} |h|^2 dy)^{1/(d+2)},
///   L = (max{ (d+2) ||grad h||_inf, ||h||_inf })^{d/(d+2)},
/// Q_x the unit cube cornered at x, oriented away from the origin.
/// Returns RHS - LHS. d in {1, 2}.
double check_embedding(const std::function<double(const std::vector<double>&)>& h,
                       double sup_h, double sup_grad_h, const std::vector<double>& x);

/// Explicit trilinear constant
///   c_{b,d} = 1/2 max{1, 2^{mu-1}} max{2^{d-1-mu} (log 2)^mu, 1 + 2^{d-1}}
///             |S^{d-2}| \int_0^{pi/2} sin^d(t) b(cos t) dt.
double c_bd_constant(const AngularKernel& k, double tol);

/// margin = RHS - LHS of the trilinear bound
///   \int\int btilde s ((1/2)log(alpha+x))^mu G_L(xc)|phi(xc)| G_L(x)|phi(x)|
///     <= c_{b,d} (||G_L f||^2 + ||(log<D>_alpha)_+^{mu/2} G_L f||^2).
struct TrilinearCheck {
    double lhs, rhs, margin, c_bd;
};
TrilinearCheck check_trilinear_bound(const IsoSpectralField& f, const WeightParams& p,
                                     const AngularKernel& k, const AngularRule& rule);

/// beta_0(alpha) = C_f0 / (log(e+alpha))^{mu+1} * log(alpha) / (log(alpha)
///                 + 2 T0 (mu+1) c_bd M)
double beta0(double alpha, double big_m, double t0, double c_f0, double mu, double c_bd);

/// Constants and ladder of the frequency-induction replay.
struct InductionState {
    double alpha_star = 0.0;
    double exponent = 0.0; // (mu+1)/(1+log alpha*), equals 2/(d+2)
    double lambda0 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double big_m = 0.0;
    double big_k = 0.0;
    double c_f0 = 0.0;
    double c_tilde_f0 = 0.0;
    double c_bd = 0.0;
    double a_f0 = 0.0;
    double beta0_value = 0.0;
    double beta_tilde = 0.0;
    double beta = 0.0;
    double t0 = 0.0;
};

struct LadderRow {
    int n = 0;
    double lambda_n = 0.0;
    double sup_weighted = 0.0; // sup over snapshots/grid of G^exponent (|phi| + modulus slack)
    double margin = 0.0;       // M - sup
    bool pass = false;
};

struct LadderReport {
    InductionState constants;
    std::vector<LadderRow> rows;
    int n_max_pass = -1; // largest N with rows 0..N all passing
};

/// Replays the induction hypothesis sup_{|xi| <= Lambda_N} G^exponent |fhat| <= M
/// on trajectory snapshots, with beta = min(beta0, beta_tilde) and beta_tilde
/// located by bisection on the N = 0 rung. Sub-grid suprema are bounded by
/// inflating grid values with the gradient bound 2 pi B1 times the local
/// spacing in |xi|.
LadderReport run_induction(const Trajectory& traj, const AngularKernel& k, double mu,
                           double t0, double quad_tol = 1e-10);

} // namespace bobylev

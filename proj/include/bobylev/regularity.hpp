#pragma once

#include <functional>
#include <vector>

#include "bobylev/field.hpp"

namespace bobylev {

/// Least-squares fit of -log|phi(x)| against y(x) = ((1/2) log(alpha+x))^{mu+1}
/// over [x_lo, x_hi]; the slope estimates beta*t, the intercept -log M.
/// Points with |phi| < 1e-14 (noise floor) are excluded; fewer than 10 usable
/// points is an error.
struct FitBetaResult {
    double beta_hat = 0.0;
    double m_hat = 0.0;
    double r_squared = 0.0;
    int n_points = 0;
    /// Lack-of-fit indicator: set when a quadratic term in y absorbs almost
    /// all of the linear fit's residual, i.e. the decay deviates from the
    /// weight shape systematically rather than by noise.
    bool model_mismatch = false;
};
FitBetaResult fit_beta(const IsoSpectralField& phi, double t, double alpha, double mu,
                       double x_lo, double x_hi);

/// log D_n for n = 0..n_max where
///   D_n^2 = (2 pi)^{2n} \int x^n phi(x)^2 omega_d(x) dx
/// (the sum of all |alpha| = n squared derivative norms via the multinomial
/// identity). Accumulated in log space; the closure variant integrates to
/// whatever range the weight needs, the grid variant checks that the last
/// decade of [0, x_max] contributes < 1e-12 of the total.
struct DerivNorms {
    std::vector<double> log_dn;
    bool tail_resolved = true;
    double required_x_max = 0.0;
};
DerivNorms derivative_norms(const std::function<double(double)>& log_abs_phi,
                            double x_max, int n_max, int d, bool unbounded_domain);
DerivNorms derivative_norms(const IsoSpectralField& phi, int n_max);

/// Derivative-growth fit on synthetic exact-weight data
/// phi(x) = exp(-tau ((1/2) log(1+x))^{mu+1}):
///  - constrained fit log D_n = c0 + n log C + b n^{1+1/mu}, reports b_hat
///    against the saddle-point prediction b_pred = tau^{-1/mu} mu (mu+1)^{-(1+1/mu)};
///  - free-power fit log D_n = c0 + c1 n + b n^p over p, reports p_hat.
struct AmuFit {
    double b_hat = 0.0;
    double b_pred = 0.0;
    double ratio = 0.0;
    double c_hat = 0.0;
    double p_hat = 0.0;
    std::vector<double> log_dn;
};
AmuFit check_amu_forward(double tau, double mu, int n_max, int d = 3);

/// Free-power growth fit on externally supplied log D_n (n = 0..size-1).
double fit_growth_power(const std::vector<double>& log_dn, int n_lo);

/// Substitution identity and (mu >= 1) Laplace bound for
///   \int_1^inf t^{2n-1} e^{-2 tau (log t)^{mu+1}} dt.
/// Values are carried in log space (the integrals overflow doubles for small
/// mu at moderate n); linear mirrors are populated when representable.
struct LaplaceCheck {
    double lhs_log = 0.0;    // log of the direct integral
    double rhs_log = 0.0;    // log of the substituted form
    double bound_log = 0.0;  // log of the closed-form upper bound
    double rel_diff = 0.0;   // |exp(lhs_log - rhs_log) - 1|
    double margin_log = 0.0; // bound_log - rhs_log
    double lhs = 0.0, rhs = 0.0, bound = 0.0, margin = 0.0;
    bool strict_branch = false; // mu >= 1: the bound is valid for all n
};
LaplaceCheck check_laplace_integral(double tau, double mu, int n);

} // namespace bobylev

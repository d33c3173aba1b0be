#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bobylev/common.hpp"

namespace bobylev {

/// Parameter bundle for the logarithmic Fourier weight
///   G(t, eta) = exp(beta t (log <eta>_alpha)^{mu+1}),  <eta>_alpha = sqrt(alpha + |eta|^2).
/// All weight code takes x = |eta|^2 to avoid square roots in hot loops.
struct WeightParams {
    double alpha = 0.0;
    double beta = 0.0;
    double mu = 1.0;
    double t = 0.0;
    std::optional<double> lambda_cut; // Fourier cutoff Lambda, if any

    void validate() const; // requires alpha >= e^mu (concavity of the profile)
};

/// sqrt(alpha + x)
double bracket_alpha(double x, double alpha);

/// h(s) = (log(alpha+s))^{mu+1}; increasing and concave for alpha >= e^mu.
double h_profile(double s, double alpha, double mu);

/// log G(t, x) = beta t ((1/2) log(alpha+x))^{mu+1}, without cutoff.
double log_g_weight(double x, const WeightParams& p);

/// G(t, x); returns 0 when a cutoff is set and sqrt(x) > Lambda.
double g_weight(double x, const WeightParams& p);

/// RHS - LHS of the enhanced subadditivity bound
///   h(s_- + s_+) <= (mu+1)/(1+log alpha) h(s_-) + h(s_+),  0 <= s_- <= s_+.
/// Nonnegative margin expected.
double subadditivity_margin(double alpha, double mu, double s_minus, double s_plus);

/// Difference bound for Gt(r) = exp(beta t 2^{-mu-1} (log(alpha+r))^{mu+1}):
///   |Gt(s) - Gt(s_+)| <= 2^{-mu} beta t (mu+1) (1 - s_+/s) (log(alpha+s))^mu
///                        * Gt(s_-)^{(mu+1)/(1+log alpha)} * Gt(s_+),
/// with s = s_- + s_+ > 0.  Evaluated in log space; the sides can exceed the
/// double range for large arguments, so the report carries log(LHS), log(RHS)
/// and their difference.
struct GtildeMargin {
    double lhs_log;
    double rhs_log;
    double margin_log; // rhs_log - lhs_log, >= 0 expected
    bool pass;
};
GtildeMargin gtilde_diff_margin(const WeightParams& p, double s_minus, double s_plus);

/// psi_alpha(r) = (log sqrt(alpha + r))^{mu+1}
double psi_alpha(double r, double alpha, double mu);

/// Scaling/growth checks for psi_alpha on a (lambda, x = |eta|^2) grid:
///  (i)  psi(r) -> infinity on the sampled ladder,
///  (ii) psi(r) <= r from some r0 on (reported),
///  (iii) psi(lambda^2 x) >= lambda^2 psi(x) whenever lambda sqrt(x) >= R.
struct PsiReport {
    bool unbounded_ok = false;
    double r0 = 0.0;
    bool linear_bound_ok = false;
    int scaling_checked = 0;
    int scaling_violations = 0;
    double worst_margin = 0.0;
};
PsiReport check_psi_properties(double alpha, double mu, double R,
                               const std::vector<std::pair<double, double>>& grid);

} // namespace bobylev

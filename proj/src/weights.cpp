#include "bobylev/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bobylev {

void WeightParams::validate() const {
    if (!(mu > 0)) throw std::invalid_argument("weights: mu must be positive");
    if (!(alpha >= std::exp(mu) * (1.0 - 1e-12)))
        throw std::invalid_argument("weights: alpha must satisfy alpha >= e^mu");
    if (beta < 0) throw std::invalid_argument("weights: beta must be nonnegative");
    if (t < 0) throw std::invalid_argument("weights: t must be nonnegative");
    if (lambda_cut && !(*lambda_cut > 0))
        throw std::invalid_argument("weights: lambda_cut must be positive when set");
}

double bracket_alpha(double x, double alpha) {
    if (alpha < 0 || x < 0) throw std::domain_error("bracket_alpha: negative argument");
    return std::sqrt(alpha + x);
}

double h_profile(double s, double alpha, double mu) {
    return std::pow(std::log(alpha + s), mu + 1.0);
}

double log_g_weight(double x, const WeightParams& p) {
    return p.beta * p.t * std::pow(0.5 * std::log(p.alpha + x), p.mu + 1.0);
}

double g_weight(double x, const WeightParams& p) {
    if (p.lambda_cut && std::sqrt(x) > *p.lambda_cut) return 0.0;
    return std::exp(log_g_weight(x, p));
}

double subadditivity_margin(double alpha, double mu, double s_minus, double s_plus) {
    if (!(s_minus >= 0) || !(s_plus >= s_minus))
        throw std::domain_error("subadditivity_margin: need 0 <= s_- <= s_+");
    if (!(alpha >= std::exp(mu) * (1.0 - 1e-12)))
        throw std::domain_error("subadditivity_margin: need alpha >= e^mu");
    const double rhs = (mu + 1.0) / (1.0 + std::log(alpha)) * h_profile(s_minus, alpha, mu) +
                       h_profile(s_plus, alpha, mu);
    return rhs - h_profile(s_minus + s_plus, alpha, mu);
}

GtildeMargin gtilde_diff_margin(const WeightParams& p, double s_minus, double s_plus) {
    p.validate();
    if (!(s_minus >= 0) || !(s_plus >= s_minus))
        throw std::domain_error("gtilde_diff_margin: need 0 <= s_- <= s_+");
    const double s = s_minus + s_plus;
    if (!(s > 0)) throw std::domain_error("gtilde_diff_margin: s_- + s_+ must be positive");

    // log Gt(r) = beta t 2^{-mu-1} (log(alpha+r))^{mu+1} = log_g_weight(r, p)
    const double lg_plus = log_g_weight(s_plus, p);
    const double lg_minus = log_g_weight(s_minus, p);
    // delta = log Gt(s) - log Gt(s_+), formed without cancellation:
    // L_s = L_+ + log1p(s_-/(alpha+s_+)),
    // L_s^{mu+1} - L_+^{mu+1} = L_+^{mu+1} expm1((mu+1) log1p(dL/L_+)).
    const double l_plus = std::log(p.alpha + s_plus);
    const double dl = std::log1p(s_minus / (p.alpha + s_plus));
    const double delta = p.beta * p.t * std::pow(2.0, -p.mu - 1.0) *
                         std::pow(l_plus, p.mu + 1.0) *
                         std::expm1((p.mu + 1.0) * std::log1p(dl / l_plus));

    // LHS = Gt(s_+) (e^{delta} - 1)
    double lhs_log;
    if (delta <= 0) {
        lhs_log = -std::numeric_limits<double>::infinity();
    } else if (delta < 30) {
        lhs_log = lg_plus + std::log(std::expm1(delta));
    } else {
        lhs_log = lg_plus + delta; // e^delta - 1 ~ e^delta
    }

    const double kappa_alpha = (p.mu + 1.0) / (1.0 + std::log(p.alpha));
    // (1 - s_+/s) = s_-/s exactly; the left form underflows for s_- << s_+
    const double factor =
        std::pow(2.0, -p.mu) * p.beta * p.t * (p.mu + 1.0) * (s_minus / s);
    double rhs_log;
    if (factor <= 0) {
        rhs_log = -std::numeric_limits<double>::infinity();
    } else {
        rhs_log = std::log(factor) + p.mu * std::log(std::log(p.alpha + s)) +
                  kappa_alpha * lg_minus + lg_plus;
    }

    GtildeMargin out;
    out.lhs_log = lhs_log;
    out.rhs_log = rhs_log;
    out.margin_log = rhs_log - lhs_log;
    out.pass = !(lhs_log > rhs_log);
    if (std::isinf(lhs_log) && lhs_log < 0) {
        out.margin_log = std::numeric_limits<double>::infinity();
        out.pass = true;
    }
    return out;
}

double psi_alpha(double r, double alpha, double mu) {
    return std::pow(std::log(std::sqrt(alpha + r)), mu + 1.0);
}

PsiReport check_psi_properties(double alpha, double mu, double R,
                               const std::vector<std::pair<double, double>>& grid) {
    if (!(alpha >= std::exp(mu) * (1.0 - 1e-12)))
        throw std::domain_error("check_psi_properties: need alpha >= e^mu");
    if (!(R >= 1)) throw std::domain_error("check_psi_properties: need R >= 1");
    PsiReport rep;
    rep.worst_margin = std::numeric_limits<double>::infinity();

    // (i) unboundedness along a geometric ladder
    double prev = psi_alpha(1.0, alpha, mu);
    rep.unbounded_ok = true;
    for (double r = 10.0; r <= 1e200; r *= 100.0) {
        const double v = psi_alpha(r, alpha, mu);
        if (!(v > prev)) rep.unbounded_ok = false;
        prev = v;
    }
    rep.unbounded_ok = rep.unbounded_ok && prev > 1e3;

    // (ii) psi(r) <= r from some r0 on; scan a ladder and report the first
    // point from which the bound holds for all larger sampled r.
    std::vector<double> ladder;
    for (double r = 1e-3; r <= 1e12; r *= 1.5) ladder.push_back(r);
    rep.linear_bound_ok = false;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        bool ok = true;
        for (std::size_t j = i; j < ladder.size(); ++j)
            if (psi_alpha(ladder[j], alpha, mu) > ladder[j]) { ok = false; break; }
        if (ok) {
            rep.r0 = ladder[i];
            rep.linear_bound_ok = true;
            break;
        }
    }

    // (iii) scaling inequality on the supplied grid
    for (const auto& [lambda, x] : grid) {
        if (!(lambda >= 0 && lambda <= 1)) continue;
        if (lambda * std::sqrt(x) < R) continue; // outside the stated regime
        const double margin =
            psi_alpha(lambda * lambda * x, alpha, mu) - lambda * lambda * psi_alpha(x, alpha, mu);
        ++rep.scaling_checked;
        rep.worst_margin = std::min(rep.worst_margin, margin);
        if (margin < -1e-12) ++rep.scaling_violations;
    }
    return rep;
}

} // namespace bobylev

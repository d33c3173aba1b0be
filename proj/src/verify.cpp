#include "bobylev/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bobylev {

void VerificationReport::add(const std::string& id, const nlohmann::json& inputs, double lhs,
                             double rhs, double margin) {
    CheckEntry e;
    e.check_id = id;
    e.inputs = inputs;
    e.lhs = lhs;
    e.rhs = rhs;
    e.margin = margin;
    e.tol = tol_report;
    e.pass = margin >= -tol_report;
    entries.push_back(std::move(e));
}

bool VerificationReport::all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.pass; });
}

int VerificationReport::violations() const {
    int n = 0;
    for (const auto& e : entries)
        if (!e.pass) ++n;
    return n;
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries) {
        arr.push_back({{"check_id", e.check_id},
                       {"inputs", e.inputs},
                       {"lhs", e.lhs},
                       {"rhs", e.rhs},
                       {"margin", e.margin},
                       {"pass", e.pass},
                       {"tol", e.tol}});
    }
    return arr;
}

double estimate_cg_tilde(const IsoSpectralField& g) {
    g.validate();
    const double g0 = g.phi.front();
    double inf = moments(g, 1).m[1]; // x -> 0 limit: the energy -phi'(0)
    for (std::size_t i = 1; i < g.x.size(); ++i) {
        const double ratio = (g0 - std::abs(g.phi[i])) / std::min(g.x[i], 1.0);
        inf = std::min(inf, ratio);
    }
    if (!(inf > 0))
        throw std::runtime_error("estimate_cg_tilde: degenerate state (mass concentrated at a point)");
    return inf;
}

CoercivityConstants coercivity_constants(const IsoSpectralField& g, const AngularKernel& k,
                                         double mu, const AngularRule& rule) {
    if (k.family != KernelFamily::debye_yukawa_model)
        throw std::invalid_argument("coercivity_constants: logarithmic model kernel required");
    CoercivityConstants c;
    c.theta0 = kPi / 2; // model form is exact on the whole support
    c.big_r = std::max(std::sqrt(std::exp(1.0)), 1.0 / c.theta0 + 1.0);
    c.c_tilde_g = estimate_cg_tilde(g);
    c.c_g_prime = c.c_tilde_g * sphere_measure_sd2(k.d) / (4.0 * kPi * kPi) * (k.kappa / 2.0) /
                  (mu + 1.0);
    c.c_g = 0.5 * c.c_g_prime;
    c.big_c = kernel_moment_on_rule(rule, MomentWeight::cancellation_i2, k.d);
    return c;
}

CoercivityCheck check_coercivity(const IsoSpectralField& g, const IsoSpectralField& f,
                                 const AngularKernel& k, double alpha, double mu,
                                 const AngularRule& rule) {
    if (alpha < 0) throw std::invalid_argument("check_coercivity: alpha must be >= 0");
    CoercivityCheck out;
    out.constants = coercivity_constants(g, k, mu, rule);
    out.lhs = coercivity_functional(g, f, rule);

    const std::vector<double> w = plancherel_weights(f);
    double norm_sq = 0.0, weighted_sq = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double fi2 = f.phi[i] * f.phi[i];
        norm_sq += w[i] * fi2;
        const double lg = 0.5 * std::log(alpha + f.x[i]);
        if (lg > 0) weighted_sq += w[i] * std::pow(lg, mu + 1.0) * fi2;
    }
    const double log_ae = std::log(alpha + std::exp(1.0));
    const double mass_g = g.phi.front();
    out.rhs = out.constants.c_g / std::pow(log_ae, mu + 1.0) * weighted_sq -
              (out.constants.c_g * std::pow(std::log(out.constants.big_r), mu + 1.0) +
               out.constants.big_c * mass_g) *
                  norm_sq;
    out.margin = out.lhs - out.rhs;
    return out;
}

double check_embedding(const std::function<double(const std::vector<double>&)>& h,
                       double sup_h, double sup_grad_h, const std::vector<double>& x) {
    const int d = static_cast<int>(x.size());
    if (d < 1 || d > 2) throw std::invalid_argument("check_embedding: d in {1,2} supported");
    const double big_l =
        std::pow(std::max((d + 2) * sup_grad_h, sup_h), static_cast<double>(d) / (d + 2));

    const GaussLegendre& gl = gauss_legendre(24);
    // unit cube cornered at x, oriented away from the origin
    std::vector<double> lo(d);
    for (int a = 0; a < d; ++a) lo[a] = x[a] >= 0 ? x[a] : x[a] - 1.0;

    double integral = 0.0;
    if (d == 1) {
        for (std::size_t q = 0; q < gl.node.size(); ++q) {
            const std::vector<double> pt{lo[0] + 0.5 * (gl.node[q] + 1.0)};
            const double v = h(pt);
            integral += 0.5 * gl.weight[q] * v * v;
        }
    } else {
        for (std::size_t qa = 0; qa < gl.node.size(); ++qa)
            for (std::size_t qb = 0; qb < gl.node.size(); ++qb) {
                const std::vector<double> pt{lo[0] + 0.5 * (gl.node[qa] + 1.0),
                                             lo[1] + 0.5 * (gl.node[qb] + 1.0)};
                const double v = h(pt);
                integral += 0.25 * gl.weight[qa] * gl.weight[qb] * v * v;
            }
    }
    const double rhs = big_l * std::pow(integral, 1.0 / (d + 2));
    return rhs - std::abs(h(x));
}

double c_bd_constant(const AngularKernel& k, double tol) {
    const double mu = k.mu;
    const double pref = 0.5 * std::max(1.0, std::pow(2.0, mu - 1.0)) *
                        std::max(std::pow(2.0, k.d - 1.0 - mu) * std::pow(std::log(2.0), mu),
                                 1.0 + std::pow(2.0, k.d - 1.0));
    return pref * sphere_measure_sd2(k.d) * momentum_transfer(k, tol);
}

TrilinearCheck check_trilinear_bound(const IsoSpectralField& f, const WeightParams& p,
                                     const AngularKernel& k, const AngularRule& rule) {
    p.validate();
    if (!p.lambda_cut) throw std::invalid_argument("check_trilinear_bound: cutoff required");
    const double lam_sq = *p.lambda_cut * *p.lambda_cut;
    const std::vector<double> w = plancherel_weights(f);

    TrilinearCheck out{};
    out.c_bd = c_bd_constant(k, 1e-12);
    double lhs = 0.0, norm_sq = 0.0, weighted_sq = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double xi = f.x[i];
        if (xi > lam_sq) continue;
        const double g_x = std::exp(log_g_weight(xi, p));
        const double fi = std::abs(f.phi[i]);
        const double lg = 0.5 * std::log(p.alpha + xi);
        norm_sq += w[i] * g_x * g_x * fi * fi;
        weighted_sq += w[i] * std::pow(lg, p.mu) * g_x * g_x * fi * fi;
        double inner = 0.0;
        for (std::size_t j = 0; j < rule.theta.size(); ++j) {
            const double xc = xi * rule.c_half[j];
            const double g_c = std::exp(log_g_weight(xc, p));
            inner += rule.weight[j] * rule.btilde[j] * rule.s_half[j] * g_c *
                     std::abs(f.value_at(xc));
        }
        lhs += w[i] * std::pow(lg, p.mu) * g_x * fi * inner;
    }
    out.lhs = lhs;
    out.rhs = out.c_bd * (norm_sq + weighted_sq);
    out.margin = out.rhs - out.lhs;
    return out;
}

double beta0(double alpha, double big_m, double t0, double c_f0, double mu, double c_bd) {
    if (!(alpha > 1.0)) throw std::invalid_argument("beta0: alpha must exceed 1");
    const double la = std::log(alpha);
    return c_f0 / std::pow(std::log(std::exp(1.0) + alpha), mu + 1.0) * la /
           (la + 2.0 * t0 * (mu + 1.0) * c_bd * big_m);
}

namespace {

/// sup over snapshots t <= t0 and grid |xi| <= lambda of
/// G(t,xi)^exponent (|phi| + 2 pi B1 * local |xi| spacing), the slack covering
/// sub-grid points via the gradient bound.
double hyp_sup(const Trajectory& traj, double t0, double lambda, double exponent,
               double beta, double alpha, double mu, double b1) {
    double sup = 0.0;
    const double lam_sq = lambda * lambda;
    for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
        const double t = traj.times[s];
        if (t > t0 + 1e-12) continue;
        const IsoSpectralField& f = traj.snapshots[s];
        WeightParams p{alpha, beta, mu, t, std::nullopt};
        for (std::size_t i = 0; i < f.x.size(); ++i) {
            if (f.x[i] > lam_sq) break;
            const double xi_lo = i > 0 ? std::sqrt(f.x[i - 1]) : 0.0;
            const double xi_hi = i + 1 < f.x.size() ? std::sqrt(f.x[i + 1]) : std::sqrt(f.x[i]);
            const double spacing = 0.5 * (xi_hi - xi_lo);
            const double v = std::exp(exponent * log_g_weight(f.x[i], p)) *
                             (std::abs(f.phi[i]) + 2.0 * kPi * b1 * spacing);
            sup = std::max(sup, v);
        }
    }
    return sup;
}

} // namespace

LadderReport run_induction(const Trajectory& traj, const AngularKernel& k, double mu,
                           double t0, double quad_tol) {
    if (traj.snapshots.empty()) throw std::invalid_argument("run_induction: empty trajectory");
    if (std::abs(traj.times.front()) > 1e-12)
        throw std::invalid_argument("run_induction: trajectory must include the t = 0 snapshot");
    double max_gap = 0.0, prev = 0.0;
    for (double t : traj.times) {
        if (t > t0 + 1e-12) break;
        max_gap = std::max(max_gap, t - prev);
        prev = t;
    }
    max_gap = std::max(max_gap, t0 - prev);
    if (max_gap > t0 / 10.0 + 1e-12)
        throw std::invalid_argument(
            "run_induction: snapshots too coarse; need spacing <= t0/10 = " +
            std::to_string(t0 / 10.0));

    const IsoSpectralField& f0 = traj.snapshots.front();
    const int d = k.d;
    const AngularRule rule = make_angular_rule(k, quad_tol);

    LadderReport rep;
    InductionState& st = rep.constants;
    st.t0 = t0;
    st.alpha_star = std::exp(0.5 * d + 0.5 * (d + 2) * mu);
    st.exponent = (mu + 1.0) / (1.0 + std::log(st.alpha_star));
    st.lambda0 = 2.0 * std::sqrt(static_cast<double>(d)) / (std::sqrt(2.0) - 1.0);

    const MomentsResult m0 = moments(f0, 2);
    st.b1 = m0.m[0] + d * m0.m[1] / (2.0 * kPi * kPi);

    const CoercivityConstants cc = coercivity_constants(f0, k, mu, rule);
    st.c_f0 = cc.c_g;
    st.c_tilde_f0 = cc.c_g * std::pow(std::log(cc.big_r), mu + 1.0) + cc.big_c * m0.m[0];
    st.a_f0 = st.c_tilde_f0 + st.c_f0 * std::log(st.alpha_star) /
                                  (2.0 * std::pow(std::log(std::exp(1.0) + st.alpha_star), mu + 1.0));

    const std::vector<double> w = plancherel_weights(f0);
    double l2 = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) l2 += w[i] * f0.phi[i] * f0.phi[i];
    st.b2 = std::sqrt(l2) * std::exp(t0 * st.a_f0);

    st.big_k = std::pow(2.0 * kPi * (d + 2) * st.b1 * std::pow(st.b2, 2.0 / d),
                        static_cast<double>(d) / (d + 2));
    st.big_m = std::max(2.0 * st.b1 + 1.0, st.big_k);
    st.c_bd = c_bd_constant(k, quad_tol);
    st.beta0_value = beta0(st.alpha_star, st.big_m, t0, st.c_f0, mu, st.c_bd);

    // beta_tilde: largest beta <= 1 keeping the N = 0 rung true (bisection;
    // the rung supremum is increasing in beta).
    auto rung0 = [&](double beta) {
        return hyp_sup(traj, t0, st.lambda0, st.exponent, beta, st.alpha_star, mu, st.b1) <=
               st.big_m;
    };
    if (!rung0(0.0)) {
        st.beta_tilde = 0.0;
    } else if (rung0(1.0)) {
        st.beta_tilde = 1.0;
    } else {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (rung0(mid) ? lo : hi) = mid;
        }
        st.beta_tilde = lo;
    }
    st.beta = std::min(st.beta0_value, st.beta_tilde);

    const double x_max = f0.x_max();
    for (int n = 0;; ++n) {
        const double lam = st.lambda0 * std::pow(0.5 * (1.0 + std::sqrt(2.0)), n);
        if (lam * lam > x_max) break;
        LadderRow row;
        row.n = n;
        row.lambda_n = lam;
        row.sup_weighted = hyp_sup(traj, t0, lam, st.exponent, st.beta, st.alpha_star, mu, st.b1);
        row.margin = st.big_m - row.sup_weighted;
        row.pass = row.margin >= 0.0;
        rep.rows.push_back(row);
    }
    rep.n_max_pass = -1;
    for (const auto& row : rep.rows) {
        if (!row.pass) break;
        rep.n_max_pass = row.n;
    }
    return rep;
}

} // namespace bobylev

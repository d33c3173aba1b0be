#include "bobylev/suite.hpp"

#include <cmath>
#include <random>

namespace bobylev {

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

} // namespace

IsoSpectralField random_state(std::uint64_t seed, int n, double x_max, int d) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const int kind = static_cast<int>(u01(rng) * 3.0);
    if (kind == 0) {
        // Maxwellian mixture
        const int comps = 1 + static_cast<int>(u01(rng) * 3.0);
        std::vector<double> wts(comps), rates(comps);
        double tot = 0.0;
        for (int i = 0; i < comps; ++i) {
            wts[i] = 0.1 + u01(rng);
            rates[i] = log_uniform(rng, 0.3, 3.0);
            tot += wts[i];
        }
        for (auto& w : wts) w /= tot;
        return make_field(n, x_max, d, [=](double x) {
            double v = 0.0;
            for (int i = 0; i < comps; ++i) v += wts[i] * std::exp(-rates[i] * x);
            return v;
        });
    }
    if (kind == 1) {
        // relaxation-family state inside the positivity range
        const double a0 = -0.35 * u01(rng);
        const double e0 = 0.5 + 1.5 * u01(rng);
        return make_field(n, x_max, d, [=](double x) {
            return (1.0 + a0 * x) * std::exp(-(e0 + a0) * x);
        });
    }
    const double p = 0.5 * d + 1.0 + 3.0 * u01(rng);
    return make_field(n, x_max, d, [=](double x) { return std::pow(1.0 + x, -p); });
}

VerificationReport run_inequality_suite(const ExperimentConfig& cfg) {
    VerificationReport rep;
    rep.tol_report = cfg.tol_report;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double mus[3] = {0.5, 1.0, 2.0};

    // --- enhanced subadditivity of h(s) = (log(alpha+s))^{mu+1}
    {
        double worst = std::numeric_limits<double>::infinity();
        int violations = 0;
        for (long i = 0; i < cfg.subadditivity_samples; ++i) {
            const double mu = mus[i % 3];
            const double alpha = log_uniform(rng, std::exp(mu), 1e6);
            double s1 = log_uniform(rng, 1e-6, 1e12) * (u01(rng) < 0.05 ? 0.0 : 1.0);
            double s2 = log_uniform(rng, 1e-6, 1e12);
            if (s1 > s2) std::swap(s1, s2);
            const double m = subadditivity_margin(alpha, mu, s1, s2);
            worst = std::min(worst, m);
            if (m < -rep.tol_report) ++violations;
        }
        rep.add("subadditivity_sweep",
                {{"samples", cfg.subadditivity_samples}, {"violations", violations}}, 0.0,
                worst, worst);
    }

    // --- weight-difference bound (log-domain margins)
    {
        double worst = std::numeric_limits<double>::infinity();
        int violations = 0;
        for (long i = 0; i < cfg.gtilde_samples; ++i) {
            const double mu = mus[i % 3];
            WeightParams p;
            p.mu = mu;
            p.alpha = log_uniform(rng, std::exp(mu), 1e6);
            p.beta = log_uniform(rng, 1e-3, 1.0);
            p.t = 1.0;
            double s1 = log_uniform(rng, 1e-9, 1e12) * (u01(rng) < 0.05 ? 0.0 : 1.0);
            double s2 = log_uniform(rng, 1e-9, 1e12);
            if (s1 > s2) std::swap(s1, s2);
            if (s1 + s2 <= 0.0) s2 = 1.0;
            const GtildeMargin gm = gtilde_diff_margin(p, s1, s2);
            if (std::isfinite(gm.margin_log)) worst = std::min(worst, gm.margin_log);
            if (!gm.pass) ++violations;
        }
        rep.add("gtilde_diff_sweep",
                {{"samples", cfg.gtilde_samples}, {"violations", violations}, {"domain", "log"}},
                0.0, worst, worst);
    }

    // --- psi scaling grid
    {
        std::vector<std::pair<double, double>> grid;
        grid.reserve(cfg.psi_samples);
        for (long i = 0; i < cfg.psi_samples; ++i)
            grid.emplace_back(u01(rng), log_uniform(rng, 1.0, 1e8));
        const double mu = 1.0;
        const PsiReport pr = check_psi_properties(std::exp(mu), mu, 3.0, grid);
        rep.add("psi_scaling_grid",
                {{"checked", pr.scaling_checked},
                 {"violations", pr.scaling_violations},
                 {"r0", pr.r0},
                 {"unbounded", pr.unbounded_ok},
                 {"linear_bound", pr.linear_bound_ok}},
                0.0, pr.worst_margin,
                (pr.unbounded_ok && pr.linear_bound_ok) ? pr.worst_margin : -1.0);
    }

    // --- cube embedding: analytic Gaussian (d=1) and simulated radial (d=2)
    {
        double worst = std::numeric_limits<double>::infinity();
        int violations = 0;
        const IsoSpectralField snap = random_state(cfg.seed ^ 0x9e3779b9ull, 256, 64.0, 2);
        const MomentsResult mm = moments(snap, 2);
        const double b1 = mm.m[0] + 2.0 * mm.m[1] / (2.0 * kPi * kPi);
        for (long i = 0; i < cfg.embedding_samples; ++i) {
            double m;
            if (i % 2 == 0) {
                auto h = [](const std::vector<double>& y) { return std::exp(-y[0] * y[0]); };
                const std::vector<double> x{-5.0 + 10.0 * u01(rng)};
                m = check_embedding(h, 1.0, std::sqrt(2.0 / std::exp(1.0)), x);
            } else {
                auto h = [&](const std::vector<double>& y) {
                    return snap.value_at(std::min(y[0] * y[0] + y[1] * y[1], snap.x_max()));
                };
                const double rad = (std::sqrt(snap.x_max()) - 1.6) * u01(rng);
                const double ang = 2.0 * kPi * u01(rng);
                const std::vector<double> x{rad * std::cos(ang), rad * std::sin(ang)};
                m = check_embedding(h, snap.phi.front(), 2.0 * kPi * b1, x);
            }
            worst = std::min(worst, m);
            if (m < -rep.tol_report) ++violations;
        }
        rep.add("embedding_sweep",
                {{"samples", cfg.embedding_samples}, {"violations", violations}}, 0.0, worst,
                worst);
    }

    // --- coercivity with measured constants
    {
        AngularKernel k = cfg.sim.kernel;
        if (k.family != KernelFamily::debye_yukawa_model) {
            k = AngularKernel{};
        }
        const AngularRule rule = make_angular_rule(k, 1e-10);
        const double alphas[4] = {0.0, 1.0, std::exp(k.mu), 1e3};
        double worst = std::numeric_limits<double>::infinity();
        int violations = 0;
        for (long i = 0; i < cfg.coercivity_samples; ++i) {
            const IsoSpectralField g = random_state(cfg.seed + 1000 + i, 192, 64.0, k.d);
            IsoSpectralField f = g;
            if (i % 3 == 1) {
                // band-limited high-frequency bump
                const double x0 = 20.0 + 30.0 * u01(rng);
                const double s0 = 2.0 + 6.0 * u01(rng);
                f = make_field(192, 64.0, k.d, [=](double x) {
                    return std::exp(-(x - x0) * (x - x0) / (s0 * s0));
                });
            } else if (i % 3 == 2) {
                f = random_state(cfg.seed + 5000 + i, 192, 64.0, k.d);
            }
            const double alpha = alphas[i % 4];
            const CoercivityCheck cc = check_coercivity(g, f, k, alpha, k.mu, rule);
            worst = std::min(worst, cc.margin);
            if (cc.margin < -rep.tol_report) ++violations;
        }
        rep.add("coercivity_sweep",
                {{"samples", cfg.coercivity_samples}, {"violations", violations}}, 0.0, worst,
                worst);
    }

    // --- commutation error bound, identical quadrature nodes on both sides
    {
        AngularKernel k = cfg.sim.kernel;
        if (k.family != KernelFamily::debye_yukawa_model) k = AngularKernel{};
        const AngularRule rule = make_angular_rule(k, 1e-10);
        double worst = std::numeric_limits<double>::infinity();
        int violations = 0;
        for (long i = 0; i < cfg.commutation_samples; ++i) {
            const IsoSpectralField f = random_state(cfg.seed + 90000 + i, 192, 64.0, k.d);
            WeightParams p;
            p.mu = k.mu;
            p.alpha = log_uniform(rng, std::exp(k.mu), 1e3);
            p.beta = log_uniform(rng, 1e-2, 0.5);
            p.t = 1.0;
            p.lambda_cut = log_uniform(rng, 2.0, std::sqrt(f.x_max()));
            const double lhs = commutation_error_lhs(f, p, rule);
            const double rhs = commutation_error_rhs(f, p, rule);
            const double m = rhs - lhs;
            worst = std::min(worst, m);
            if (m < -rep.tol_report * std::max(1.0, rhs)) ++violations;
        }
        rep.add("commutation_sweep",
                {{"samples", cfg.commutation_samples}, {"violations", violations}}, 0.0, worst,
                worst);
    }

    // --- trilinear bound with the explicit constant
    {
        AngularKernel k = cfg.sim.kernel;
        if (k.family != KernelFamily::debye_yukawa_model) k = AngularKernel{};
        const AngularRule rule = make_angular_rule(k, 1e-10);
        double worst = std::numeric_limits<double>::infinity();
        int violations = 0;
        for (long i = 0; i < cfg.trilinear_samples; ++i) {
            const IsoSpectralField f = random_state(cfg.seed + 70000 + i, 192, 64.0, k.d);
            WeightParams p;
            p.mu = k.mu;
            p.alpha = log_uniform(rng, std::exp(k.mu), 1e3);
            p.beta = log_uniform(rng, 1e-2, 0.5);
            p.t = 1.0;
            p.lambda_cut = log_uniform(rng, 2.0, std::sqrt(f.x_max()));
            const TrilinearCheck tc = check_trilinear_bound(f, p, k, rule);
            worst = std::min(worst, tc.margin);
            if (tc.margin < -rep.tol_report * std::max(1.0, tc.rhs)) ++violations;
        }
        rep.add("trilinear_sweep",
                {{"samples", cfg.trilinear_samples}, {"violations", violations}}, 0.0, worst,
                worst);
    }

    // --- Laplace substitution identity and mu >= 1 margin
    {
        const LaplaceCheck id = check_laplace_integral(1.0, 1.0, 3);
        rep.add("laplace_identity", {{"tau", 1.0}, {"mu", 1.0}, {"n", 3}}, id.lhs, id.rhs,
                1e-8 - id.rel_diff);
        double worst = std::numeric_limits<double>::infinity();
        for (int n = 1; n <= 10; ++n) {
            const LaplaceCheck lc = check_laplace_integral(1.0, 2.0, n);
            worst = std::min(worst, lc.margin / lc.bound);
        }
        rep.add("laplace_bound_mu2", {{"tau", 1.0}, {"mu", 2.0}, {"n", "1..10"}}, 0.0, worst,
                worst);
    }

    return rep;
}

} // namespace bobylev

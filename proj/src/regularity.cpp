#include "bobylev/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bobylev {

FitBetaResult fit_beta(const IsoSpectralField& phi, double t, double alpha, double mu,
                       double x_lo, double x_hi) {
    if (!(t > 0)) throw std::invalid_argument("fit_beta: t must be positive");
    if (!(x_lo >= 0 && x_hi > x_lo && x_hi <= phi.x_max() * (1 + 1e-12)))
        throw std::invalid_argument("fit_beta: window must lie inside the grid");
    std::vector<double> y, z;
    for (std::size_t i = 0; i < phi.x.size(); ++i) {
        const double xi = phi.x[i];
        if (xi < x_lo || xi > x_hi) continue;
        const double v = std::abs(phi.phi[i]);
        if (v < 1e-14) continue; // noise floor
        y.push_back(std::pow(0.5 * std::log(alpha + xi), mu + 1.0));
        z.push_back(-std::log(v));
    }
    if (y.size() < 10)
        throw std::runtime_error("fit_beta: fewer than 10 usable points in the window");
    const LinearFit fit = linear_fit(y, z);
    FitBetaResult out;
    out.beta_hat = fit.slope / t;
    out.m_hat = std::exp(-fit.intercept);
    out.r_squared = fit.r_squared;
    out.n_points = static_cast<int>(y.size());

    // lack-of-fit: residual after adding a quadratic term in y
    double m[3][4] = {{0}};
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double f[3] = {1.0, y[i], y[i] * y[i]};
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) m[a][b] += f[a] * f[b];
            m[a][3] += f[a] * z[i];
        }
    }
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int a = c + 1; a < 3; ++a)
            if (std::abs(m[a][c]) > std::abs(m[piv][c])) piv = a;
        std::swap(m[c], m[piv]);
        for (int a = 0; a < 3; ++a) {
            if (a == c) continue;
            const double fac = m[a][c] / m[c][c];
            for (int b = c; b < 4; ++b) m[a][b] -= fac * m[c][b];
        }
    }
    const double q0 = m[0][3] / m[0][0], q1 = m[1][3] / m[1][1], q2 = m[2][3] / m[2][2];
    double rss_lin = 0.0, rss_quad = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double rl = z[i] - (fit.intercept + fit.slope * y[i]);
        const double rq = z[i] - (q0 + q1 * y[i] + q2 * y[i] * y[i]);
        rss_lin += rl * rl;
        rss_quad += rq * rq;
    }
    out.model_mismatch = rss_lin > 1e-16 && rss_lin > 100.0 * rss_quad;
    return out;
}

namespace {

/// log of \int_a^b exp(g(u)) du by composite Gauss-Legendre in u.
double log_integral_panels(const std::function<double(double)>& g, double a, double b,
                           double panel_width, int gl_order = 16) {
    const GaussLegendre& gl = gauss_legendre(gl_order);
    std::vector<double> logs;
    double lo = a;
    while (lo < b) {
        const double hi = std::min(lo + panel_width, b);
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        double m = -std::numeric_limits<double>::infinity();
        std::vector<double> vals(gl.node.size());
        for (std::size_t q = 0; q < gl.node.size(); ++q) {
            vals[q] = g(mid + half * gl.node[q]);
            m = std::max(m, vals[q]);
        }
        double s = 0.0;
        for (std::size_t q = 0; q < gl.node.size(); ++q)
            s += gl.weight[q] * std::exp(vals[q] - m);
        logs.push_back(m + std::log(half * s));
        lo = hi;
    }
    return log_sum_exp(logs);
}

} // namespace

DerivNorms derivative_norms(const std::function<double(double)>& log_abs_phi,
                            double x_max, int n_max, int d, bool unbounded_domain) {
    if (n_max < 0 || n_max > 64)
        throw std::invalid_argument("derivative_norms: n_max out of range");
    DerivNorms out;
    out.log_dn.resize(n_max + 1);
    const double log_sd = std::log(0.5 * sphere_surface(d - 1));
    for (int n = 0; n <= n_max; ++n) {
        // integrand in u = log x: exp((n + d/2) u + 2 log|phi(e^u)|)
        auto g = [&](double u) {
            const double xx = std::exp(u);
            return (n + 0.5 * d) * u + 2.0 * log_abs_phi(xx);
        };
        double u_hi = std::log(x_max);
        if (unbounded_domain) {
            // extend until the local integrand is far below the running peak
            double peak = -std::numeric_limits<double>::infinity();
            double u = u_hi;
            for (;;) {
                peak = std::max(peak, g(u));
                if (g(u) < peak - 60.0 || u > 5e4) break;
                u += 1.0;
            }
            u_hi = u;
        }
        const double log_int = log_integral_panels(g, -40.0, u_hi, 0.25);
        if (!unbounded_domain) {
            // tail check: last decade of [0, x_max]
            const double log_tail =
                log_integral_panels(g, std::log(x_max / 10.0), std::log(x_max), 0.25);
            if (log_tail > log_int + std::log(1e-12)) {
                out.tail_resolved = false;
                out.required_x_max = std::max(out.required_x_max, x_max * 10.0);
            }
        }
        out.log_dn[n] = n * std::log(2.0 * kPi) + 0.5 * (log_sd + log_int);
    }
    if (!out.tail_resolved)
        throw std::runtime_error(
            "derivative_norms: tail unresolved; extend the grid to x_max >= " +
            std::to_string(out.required_x_max));
    return out;
}

DerivNorms derivative_norms(const IsoSpectralField& phi, int n_max) {
    return derivative_norms(
        [&](double x) {
            const double v = std::abs(phi.value_at(std::min(x, phi.x_max())));
            return v > 0 ? std::log(v) : -745.0; // below double floor
        },
        phi.x_max(), n_max, phi.d, /*unbounded_domain=*/false);
}

namespace {

/// least squares for log D_n = c0 + c1 n + b n^p with fixed power p
struct PowerFit {
    double c0, c1, b, rss;
};
PowerFit fit_fixed_power(const std::vector<double>& log_dn, double p, int n_lo) {
    const int N = static_cast<int>(log_dn.size());
    double M[3][3] = {{0}}, r[3] = {0};
    for (int n = n_lo; n < N; ++n) {
        const double f[3] = {1.0, static_cast<double>(n), std::pow(n, p)};
        for (int a = 0; a < 3; ++a) {
            r[a] += f[a] * log_dn[n];
            for (int b = 0; b < 3; ++b) M[a][b] += f[a] * f[b];
        }
    }
    // 3x3 Gaussian elimination
    double A[3][4];
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) A[a][b] = M[a][b];
        A[a][3] = r[a];
    }
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int a = c + 1; a < 3; ++a)
            if (std::abs(A[a][c]) > std::abs(A[piv][c])) piv = a;
        std::swap(A[c], A[piv]);
        for (int a = 0; a < 3; ++a) {
            if (a == c) continue;
            const double fac = A[a][c] / A[c][c];
            for (int b = c; b < 4; ++b) A[a][b] -= fac * A[c][b];
        }
    }
    PowerFit out{A[0][3] / A[0][0], A[1][3] / A[1][1], A[2][3] / A[2][2], 0.0};
    for (int n = n_lo; n < N; ++n) {
        const double pred = out.c0 + out.c1 * n + out.b * std::pow(n, p);
        out.rss += (log_dn[n] - pred) * (log_dn[n] - pred);
    }
    return out;
}

} // namespace

double fit_growth_power(const std::vector<double>& log_dn, int n_lo) {
    // golden-section scan of the power minimizing the residual
    double lo = 1.05, hi = 4.5;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    double fa = fit_fixed_power(log_dn, a, n_lo).rss;
    double fb = fit_fixed_power(log_dn, b, n_lo).rss;
    for (int it = 0; it < 80; ++it) {
        if (fa < fb) {
            hi = b; b = a; fb = fa;
            a = hi - gr * (hi - lo);
            fa = fit_fixed_power(log_dn, a, n_lo).rss;
        } else {
            lo = a; a = b; fa = fb;
            b = lo + gr * (hi - lo);
            fb = fit_fixed_power(log_dn, b, n_lo).rss;
        }
    }
    return 0.5 * (lo + hi);
}

AmuFit check_amu_forward(double tau, double mu, int n_max, int d) {
    if (!(tau > 0 && mu > 0)) throw std::invalid_argument("check_amu_forward: tau, mu > 0");
    auto log_phi = [tau, mu](double x) {
        return -tau * std::pow(0.5 * std::log1p(x), mu + 1.0);
    };
    const DerivNorms dn = derivative_norms(log_phi, 1.0, n_max, d, /*unbounded_domain=*/true);
    AmuFit out;
    out.log_dn = dn.log_dn;
    out.b_pred = std::pow(tau, -1.0 / mu) * mu * std::pow(mu + 1.0, -(1.0 + 1.0 / mu));
    const int n_lo = std::max(2, n_max / 3);
    const PowerFit cf = fit_fixed_power(dn.log_dn, 1.0 + 1.0 / mu, n_lo);
    out.b_hat = cf.b;
    out.c_hat = std::exp(cf.c1);
    out.ratio = cf.b / out.b_pred;
    out.p_hat = fit_growth_power(dn.log_dn, n_lo);
    return out;
}

LaplaceCheck check_laplace_integral(double tau, double mu, int n) {
    if (!(tau > 0 && mu > 0 && n >= 1))
        throw std::invalid_argument("check_laplace_integral: need tau, mu > 0 and n >= 1");
    LaplaceCheck out;

    // direct side, in u = log t: \int_0^inf e^{2 n u - 2 tau u^{mu+1}} du
    auto g_lhs = [&](double u) { return 2.0 * n * u - 2.0 * tau * std::pow(u, mu + 1.0); };
    const double u_star = std::pow(n / (tau * (mu + 1.0)), 1.0 / mu);
    double u_hi = std::max(1.0, u_star);
    while (g_lhs(u_hi) > g_lhs(u_star) - 80.0 && u_hi < 1e6) u_hi *= 1.5;
    out.lhs_log = log_integral_panels(g_lhs, 0.0, u_hi, std::max(0.05, u_hi / 2000.0));

    // substituted side: (n/tau)^{1/mu} \int_0^inf e^{A (t - t^{mu+1})} dt
    const double A = 2.0 * std::pow(tau, -1.0 / mu) * std::pow(n, 1.0 + 1.0 / mu);
    auto g_rhs = [&](double t) { return A * (t - std::pow(t, mu + 1.0)); };
    const double t_star = std::pow(mu + 1.0, -1.0 / mu);
    double t_hi = 2.0;
    while (g_rhs(t_hi) > g_rhs(t_star) - 80.0 && t_hi < 1e6) t_hi *= 1.5;
    out.rhs_log = (1.0 / mu) * std::log(n / tau) +
                  log_integral_panels(g_rhs, 0.0, t_hi, 0.01);
    out.rel_diff = std::abs(std::expm1(out.lhs_log - out.rhs_log));

    // closed-form bound, valid branch mu >= 1:
    // (n/tau)^{1/mu} ( t* + sqrt(pi)/(2 sqrt(mu)) (tau/(mu+1))^{1/(2mu)} n^{-(mu+1)/(2mu)} )
    //   * e^{A h(t*)},  h(t*) = mu (mu+1)^{-(1+1/mu)}
    const double h_star = mu * std::pow(mu + 1.0, -(1.0 + 1.0 / mu));
    out.bound_log = (1.0 / mu) * std::log(n / tau) +
                    std::log(t_star + 0.5 * std::sqrt(kPi / mu) *
                                          std::pow(tau / (mu + 1.0), 0.5 / mu) *
                                          std::pow(n, -(mu + 1.0) / (2.0 * mu))) +
                    A * h_star;
    out.margin_log = out.bound_log - out.rhs_log;
    out.strict_branch = mu >= 1.0;

    out.lhs = out.lhs_log < 700.0 ? std::exp(out.lhs_log) : std::numeric_limits<double>::infinity();
    out.rhs = out.rhs_log < 700.0 ? std::exp(out.rhs_log) : std::numeric_limits<double>::infinity();
    out.bound =
        out.bound_log < 700.0 ? std::exp(out.bound_log) : std::numeric_limits<double>::infinity();
    out.margin = std::isfinite(out.bound) && std::isfinite(out.rhs) ? out.bound - out.rhs
                                                                    : out.margin_log;
    return out;
}

} // namespace bobylev

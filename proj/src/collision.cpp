#include "bobylev/collision.hpp"

#include <cmath>

namespace bobylev {

namespace {

/// Stencil start and Lagrange basis weights at evaluation point u.
void basis_at(const IsoSpectralField& f, double u, int m, int& lo_out, double* w_out) {
    const std::size_t n = f.x.size();
    std::size_t i;
    if (u <= 0.0) {
        lo_out = 0;
        for (int a = 0; a < m; ++a) w_out[a] = a == 0 ? 1.0 : 0.0;
        return;
    }
    if (f.quadratic_grid) {
        const double fi = (n - 1) * std::sqrt(u / f.x.back());
        i = static_cast<std::size_t>(fi);
        if (i >= n - 1) i = n - 2;
        while (i > 0 && u < f.x[i]) --i;
        while (i + 1 < n - 1 && u >= f.x[i + 1]) ++i;
    } else {
        i = static_cast<std::size_t>(std::upper_bound(f.x.begin(), f.x.end(), u) -
                                     f.x.begin()) -
            1;
        if (i >= n - 1) i = n - 2;
    }
    std::ptrdiff_t lo = static_cast<std::ptrdiff_t>(i) - (m / 2 - 1);
    lo = std::clamp<std::ptrdiff_t>(lo, 0, static_cast<std::ptrdiff_t>(n) - m);
    lo_out = static_cast<int>(lo);
    double pre[8], suf[8], acc = 1.0;
    for (int a = 0; a < m; ++a) {
        pre[a] = acc;
        acc *= u - f.x[lo + a];
    }
    acc = 1.0;
    for (int a = m - 1; a >= 0; --a) {
        suf[a] = acc;
        acc *= u - f.x[lo + a];
    }
    for (int a = 0; a < m; ++a) {
        double d = 1.0;
        for (int b = 0; b < m; ++b)
            if (b != a) d *= f.x[lo + a] - f.x[lo + b];
        w_out[a] = pre[a] * suf[a] / d;
    }
}

} // namespace

CollisionPlan::CollisionPlan(const IsoSpectralField& grid_proto, const AngularRule& rule) {
    grid_proto.validate();
    n_ = grid_proto.x.size();
    nodes_ = rule.theta.size();
    m_ = grid_proto.interp_order + 1;
    wb_ = rule.wb;
    lo_.resize(2 * n_ * nodes_);
    bas_.resize(2 * static_cast<std::size_t>(m_) * n_ * nodes_);
    for (std::size_t i = 0; i < n_; ++i) {
        const double xi = grid_proto.x[i];
        for (std::size_t j = 0; j < nodes_; ++j) {
            const std::size_t slot = i * nodes_ + j;
            basis_at(grid_proto, xi * rule.s_half[j], m_, lo_[2 * slot],
                     &bas_[2 * m_ * slot]);
            basis_at(grid_proto, xi * rule.c_half[j], m_, lo_[2 * slot + 1],
                     &bas_[2 * m_ * slot + m_]);
        }
    }
}

void CollisionPlan::apply(const std::vector<double>& phi, std::vector<double>& out) const {
    if (phi.size() != n_) throw GridMismatchError("collision plan: state size mismatch");
    out.resize(n_);
    const double phi0 = phi.front();
    const double* p = phi.data();
    for (std::size_t i = 0; i < n_; ++i) {
        const double loss = phi0 * p[i];
        double acc = 0.0;
        const int* lo = lo_.data() + 2 * i * nodes_;
        const double* w = bas_.data() + 2 * m_ * i * nodes_;
        for (std::size_t j = 0; j < nodes_; ++j, lo += 2, w += 2 * m_) {
            const double* ps_p = p + lo[0];
            const double* pc_p = p + lo[1];
            double ps = 0.0, pc = 0.0;
            for (int a = 0; a < m_; ++a) {
                ps += w[a] * ps_p[a];
                pc += w[m_ + a] * pc_p[a];
            }
            acc += wb_[j] * (ps * pc - loss);
        }
        out[i] = acc;
    }
}

void CollisionPlan::apply_bilinear(const std::vector<double>& g, const std::vector<double>& f,
                                   std::vector<double>& out) const {
    if (g.size() != n_ || f.size() != n_)
        throw GridMismatchError("collision plan: state size mismatch");
    out.resize(n_);
    const double g0 = g.front();
    const double* gp = g.data();
    const double* fp = f.data();
    for (std::size_t i = 0; i < n_; ++i) {
        const double loss = g0 * fp[i];
        double acc = 0.0;
        const int* lo = lo_.data() + 2 * i * nodes_;
        const double* w = bas_.data() + 2 * m_ * i * nodes_;
        for (std::size_t j = 0; j < nodes_; ++j, lo += 2, w += 2 * m_) {
            const double* gs_p = gp + lo[0];
            const double* fc_p = fp + lo[1];
            double gs = 0.0, fc = 0.0;
            for (int a = 0; a < m_; ++a) {
                gs += w[a] * gs_p[a];
                fc += w[m_ + a] * fc_p[a];
            }
            acc += wb_[j] * (gs * fc - loss);
        }
        out[i] = acc;
    }
}

IsoSpectralField bobylev_q_iso(const IsoSpectralField& phi, const AngularRule& rule) {
    const CollisionPlan plan(phi, rule);
    IsoSpectralField out = phi;
    plan.apply(phi.phi, out.phi);
    return out;
}

IsoSpectralField bobylev_q_iso(const IsoSpectralField& phi, const AngularKernel& k, double tol) {
    return bobylev_q_iso(phi, make_angular_rule(k, tol));
}

IsoSpectralField bobylev_q_iso_bilinear(const IsoSpectralField& g, const IsoSpectralField& f,
                                        const AngularRule& rule) {
    if (g.x.size() != f.x.size() || g.x.back() != f.x.back())
        throw GridMismatchError("bobylev_q_iso_bilinear: g and f must share one grid");
    const CollisionPlan plan(f, rule);
    IsoSpectralField out = f;
    plan.apply_bilinear(g.phi, f.phi, out.phi);
    return out;
}

Grid2DField bobylev_q_2d(const Grid2DField& f, const AngularKernel& k,
                         int n_theta_panels, int interp_order) {
    if (f.n > 64) throw ResourceError("bobylev_q_2d: grid larger than the n <= 64 oracle budget");
    if (k.d != 2) throw std::invalid_argument("bobylev_q_2d: only d = 2 grids are supported");
    k.validate();
    if (interp_order < 1 || interp_order > 7)
        throw std::invalid_argument("bobylev_q_2d: interp_order out of range");

    // Graded rule, fixed panel count (resolution parameter of the oracle).
    const GaussLegendre& gl = gauss_legendre(8);
    std::vector<double> th, w, bt;
    double hi = kPi / 2;
    for (int j = 0; j < n_theta_panels; ++j) {
        const double lo = hi * 0.5;
        const double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
        for (std::size_t q = 0; q < gl.node.size(); ++q) {
            th.push_back(mid + half * gl.node[q]);
            w.push_back(half * gl.weight[q]);
            bt.push_back(eval_reduced_kernel(k, th.back()));
        }
        hi = lo;
    }

    const int n = f.n;
    const double h = f.h();
    const std::complex<double> f0 = f.at(n / 2, n / 2);
    Grid2DField out(n, f.eta_max);

    // Rolloff: below |eta| theta ~ gamma h the true bracket is smaller than
    // the interpolation floor; integrating the kernel against that floor
    // diverges logarithmically, so those nodes are skipped.
    const double gamma = 0.05;

#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double ex = f.coord(i), ey = f.coord(j);
            const double r = std::hypot(ex, ey);
            if (r == 0.0) {
                out.at(i, j) = {0.0, 0.0}; // bracket vanishes identically at eta = 0
                continue;
            }
            if (r > f.eta_max) {
                // outside the inscribed disk the sigma-circle leaves the grid
                out.at(i, j) = {0.0, 0.0};
                continue;
            }
            const double ux = ex / r, uy = ey / r;
            const double theta_min = gamma * h / std::max(r, h);
            const std::complex<double> fc = f.at(i, j);
            std::complex<double> acc{0.0, 0.0};
            for (std::size_t q = 0; q < th.size(); ++q) {
                if (th[q] < theta_min) continue;
                const double ct = std::cos(th[q]), st = std::sin(th[q]);
                std::complex<double> contrib{0.0, 0.0};
                for (double sgn : {1.0, -1.0}) {
                    const double sx = ct * ux - sgn * st * uy;
                    const double sy = sgn * st * ux + ct * uy;
                    const std::complex<double> fp =
                        f.value_at(0.5 * (ex + r * sx), 0.5 * (ey + r * sy), interp_order);
                    const std::complex<double> fm =
                        f.value_at(0.5 * (ex - r * sx), 0.5 * (ey - r * sy), interp_order);
                    contrib += fm * fp - f0 * fc;
                }
                acc += w[q] * (0.5 * bt[q]) * contrib;
            }
            out.at(i, j) = acc;
        }
    }
    return out;
}

double coercivity_functional(const IsoSpectralField& g, const IsoSpectralField& f,
                             const AngularRule& rule) {
    const IsoSpectralField q = bobylev_q_iso_bilinear(g, f, rule);
    const std::vector<double> w = plancherel_weights(f);
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * q.phi[i] * f.phi[i];
    return -acc;
}

double commutation_error_lhs(const IsoSpectralField& f, const WeightParams& p,
                             const AngularRule& rule) {
    p.validate();
    if (!p.lambda_cut) throw std::invalid_argument("commutation_error_lhs: cutoff required");
    const double lam_sq = *p.lambda_cut * *p.lambda_cut;
    const std::vector<double> wx = plancherel_weights(f);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(f.x.size());
    double total = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double xi = f.x[i];
        if (xi > lam_sq) continue;
        const double gl_x = std::exp(log_g_weight(xi, p));
        const double outer = wx[i] * gl_x * std::abs(f.phi[i]);
        if (outer == 0.0) continue;
        double acc = 0.0;
        for (std::size_t j = 0; j < rule.theta.size(); ++j) {
            const double xs = xi * rule.s_half[j];
            const double xc = xi * rule.c_half[j];
            const double gdiff = gl_x - std::exp(log_g_weight(xc, p)); // >= 0
            acc += rule.weight[j] * rule.btilde[j] *
                   std::abs(f.value_at(xs)) * std::abs(f.value_at(xc)) * gdiff;
        }
        total += outer * acc;
    }
    return total;
}

double commutation_error_rhs(const IsoSpectralField& f, const WeightParams& p,
                             const AngularRule& rule) {
    p.validate();
    if (!p.lambda_cut) throw std::invalid_argument("commutation_error_rhs: cutoff required");
    const double lam_sq = *p.lambda_cut * *p.lambda_cut;
    const double kappa_alpha = (p.mu + 1.0) / (1.0 + std::log(p.alpha));
    const double pref = p.beta * p.t * (p.mu + 1.0);
    const std::vector<double> wx = plancherel_weights(f);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(f.x.size());
    double total = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double xi = f.x[i];
        if (xi > lam_sq) continue;
        const double gl_x = std::exp(log_g_weight(xi, p));
        const double logterm = std::pow(0.5 * std::log(p.alpha + xi), p.mu);
        const double outer = wx[i] * gl_x * std::abs(f.phi[i]) * pref * logterm;
        if (outer == 0.0) continue;
        double acc = 0.0;
        for (std::size_t j = 0; j < rule.theta.size(); ++j) {
            const double xs = xi * rule.s_half[j];
            const double xc = xi * rule.c_half[j];
            const double g_minus = std::exp(kappa_alpha * log_g_weight(xs, p));
            const double g_plus = std::exp(log_g_weight(xc, p));
            acc += rule.weight[j] * rule.btilde[j] * rule.s_half[j] * g_minus *
                   std::abs(f.value_at(xs)) * g_plus * std::abs(f.value_at(xc));
        }
        total += outer * acc;
    }
    return total;
}

} // namespace bobylev

#include "bobylev/solver.hpp"

#include <algorithm>
#include <cmath>

namespace bobylev {

double InitialCondition::eval(double x) const {
    switch (family) {
    case Family::maxwellian: return std::exp(-c * x);
    case Family::bkw: return (1.0 + a0 * x) * std::exp(-(e0 + a0) * x);
    case Family::matern: return std::pow(1.0 + x, -p);
    case Family::two_temperature: return w * std::exp(-c1 * x) + (1.0 - w) * std::exp(-c2 * x);
    }
    return 0.0;
}

void InitialCondition::validate(int d) const {
    switch (family) {
    case Family::maxwellian:
        if (!(c > 0)) throw std::invalid_argument("ic: maxwellian needs c > 0");
        break;
    case Family::bkw:
        if (!(e0 + a0 > 0)) throw std::invalid_argument("ic: bkw needs e0 + a0 > 0");
        if (!(e0 > 0)) throw std::invalid_argument("ic: bkw needs e0 > 0");
        break;
    case Family::matern:
        if (!(p >= 0.5 * d + 1.0))
            throw std::invalid_argument("ic: matern needs p >= d/2 + 1 for a positive density");
        break;
    case Family::two_temperature:
        if (!(c1 > 0 && c2 > 0 && w >= 0 && w <= 1))
            throw std::invalid_argument("ic: two_temperature needs c1,c2 > 0 and w in [0,1]");
        break;
    }
}

std::array<double, 5> InitialCondition::taylor_moments() const {
    std::array<double, 5> m{};
    switch (family) {
    case Family::maxwellian:
        for (int k = 0; k <= 4; ++k) m[k] = std::pow(c, k);
        break;
    case Family::bkw: {
        // phi = (1 + a x) e^{-b x}, b = e0 + a: m_k = b^k - k a b^{k-1}
        const double b = e0 + a0;
        for (int k = 0; k <= 4; ++k)
            m[k] = std::pow(b, k) - k * a0 * std::pow(b, k - 1);
        m[0] = 1.0;
        break;
    }
    case Family::matern:
        // (1+x)^{-p}: m_k = p (p+1) ... (p+k-1)
        m[0] = 1.0;
        for (int k = 1; k <= 4; ++k) m[k] = m[k - 1] * (p + k - 1);
        break;
    case Family::two_temperature:
        for (int k = 0; k <= 4; ++k)
            m[k] = w * std::pow(c1, k) + (1.0 - w) * std::pow(c2, k);
        break;
    }
    return m;
}

void SimConfig::validate() const {
    kernel.validate();
    ic.validate(kernel.d);
    if (!(dt > 0) || !(t_end > 0) || !(dt < t_end))
        throw std::invalid_argument("sim: need 0 < dt < t_end");
    if (grid.n < 32 || !(grid.x_max > 0))
        throw std::invalid_argument("sim: grid must have n >= 32, x_max > 0");
    for (double ts : snapshot_times) {
        if (ts < 0 || ts > t_end + 1e-12)
            throw std::invalid_argument("sim: snapshot times must lie in [0, t_end]");
        const double k = ts / dt;
        if (std::abs(k - std::round(k)) > 1e-9)
            throw std::invalid_argument("sim: snapshot times must align with dt multiples");
    }
    if (!(quad_tol > 0)) throw std::invalid_argument("sim: quad_tol must be positive");
}

namespace {

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

void check_state(const IsoSpectralField& f, double t) {
    double sup = 0.0;
    for (double v : f.phi) {
        if (!std::isfinite(v)) throw BlowUpError("state became non-finite", t);
        sup = std::max(sup, std::abs(v));
    }
    if (sup > f.phi.front() * (1.0 + 1e-6))
        throw StabilityError("sup-norm exceeded the mass bound; dt too large", t);
}

} // namespace

Trajectory integrate(const SimConfig& cfg) {
    cfg.validate();
    IsoSpectralField state = make_field(cfg.grid.n, cfg.grid.x_max, cfg.kernel.d,
                                        [&](double x) { return cfg.ic.eval(x); },
                                        cfg.interp_order);
    const AngularRule rule = make_angular_rule(cfg.kernel, cfg.quad_tol);
    const CollisionPlan plan(state, rule);

    const long nsteps = std::lround(cfg.t_end / cfg.dt);
    std::vector<long> snap_steps;
    for (double ts : cfg.snapshot_times) snap_steps.push_back(std::lround(ts / cfg.dt));

    Trajectory traj;
    const std::array<double, 5> m_init = moments(state, 4).m;

    auto record = [&](long step, const IsoSpectralField& f) {
        const double t = step * cfg.dt;
        const MomentsResult mr = moments(f, 4);
        traj.moment_series.push_back({t, mr.m});
        traj.max_mass_drift = std::max(traj.max_mass_drift, std::abs(mr.m[0] - m_init[0]));
        traj.max_energy_drift = std::max(traj.max_energy_drift, std::abs(mr.m[1] - m_init[1]));
        traj.max_bochner_excess = std::max(traj.max_bochner_excess, f.bochner_excess());
        if (std::find(snap_steps.begin(), snap_steps.end(), step) != snap_steps.end()) {
            traj.times.push_back(t);
            traj.snapshots.push_back(f);
        }
    };
    record(0, state);

    std::vector<double> k1, k2, k3, k4, work;
    for (long step = 1; step <= nsteps; ++step) {
        if (cfg.integrator == Integrator::euler) {
            plan.apply(state.phi, k1);
            axpy(state.phi, cfg.dt, k1);
        } else {
            plan.apply(state.phi, k1);
            work = state.phi;
            axpy(work, 0.5 * cfg.dt, k1);
            plan.apply(work, k2);
            work = state.phi;
            axpy(work, 0.5 * cfg.dt, k2);
            plan.apply(work, k3);
            work = state.phi;
            axpy(work, cfg.dt, k3);
            plan.apply(work, k4);
            for (std::size_t i = 0; i < state.phi.size(); ++i)
                state.phi[i] += cfg.dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        check_state(state, step * cfg.dt);
        record(step, state);
    }
    return traj;
}

MomentsResult moments(const IsoSpectralField& phi, int K) {
    if (K < 0 || K > 4) throw std::invalid_argument("moments: K must lie in [0,4]");
    const int npts = K + 3;
    if (static_cast<int>(phi.x.size()) < npts)
        throw std::invalid_argument("moments: grid too small for the stencil");

    // Newton divided differences on x_0..x_{npts-1}
    std::vector<double> xs(phi.x.begin(), phi.x.begin() + npts);
    std::vector<double> dd(phi.phi.begin(), phi.phi.begin() + npts);
    std::vector<double> coef(npts); // dd coefficients c_j = f[x_0..x_j]
    coef[0] = dd[0];
    for (int level = 1; level < npts; ++level) {
        for (int i = npts - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
        coef[level] = dd[level];
    }

    // Expand the Newton form into monomial coefficients a_0..a_{npts-1}.
    std::vector<double> a(npts, 0.0), basis(npts, 0.0);
    basis[0] = 1.0; // product poly prod_{i<j}(X - x_i), starts as 1
    int basis_deg = 0;
    for (int j = 0; j < npts; ++j) {
        for (int q = 0; q <= basis_deg; ++q) a[q] += coef[j] * basis[q];
        if (j + 1 < npts) {
            // basis *= (X - x_j)
            for (int q = basis_deg + 1; q >= 1; --q)
                basis[q] = (q > basis_deg ? 0.0 : basis[q]) * (-xs[j]) + basis[q - 1];
            basis[0] *= -xs[j];
            ++basis_deg;
        }
    }

    MomentsResult out;
    double fact = 1.0;
    for (int k = 0; k <= K; ++k) {
        if (k > 0) fact *= k;
        out.m[k] = ((k % 2 == 0) ? 1.0 : -1.0) * fact * a[k];
    }
    // crude conditioning guard: highest divided difference carries the noise
    out.ill_conditioned = std::abs(coef[npts - 1]) > 1e10 * (1.0 + std::abs(phi.phi.front()));
    return out;
}

std::vector<MomentRow> moment_ode_oracle(const AngularKernel& k,
                                         const std::array<double, 5>& m0, double t_end,
                                         double dt, int K, double quad_tol) {
    if (K < 0 || K > 4) throw std::invalid_argument("moment_ode_oracle: K must lie in [0,4]");
    const AngularRule rule = make_angular_rule(k, quad_tol);

    // psi[k]   = \int btilde (s^k + c^k - 1) dt         (fused loss, O(theta^2))
    // lam[k][j] = \int btilde C(k,j) s^j c^{k-j} dt, 1 <= j <= k-1
    std::array<double, 5> psi{};
    std::array<std::array<double, 5>, 5> lam{};
    auto binom = [](int n, int r) {
        double v = 1.0;
        for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
        return v;
    };
    for (int kk = 1; kk <= K; ++kk) {
        for (std::size_t q = 0; q < rule.theta.size(); ++q) {
            const double s = rule.s_half[q], c = rule.c_half[q];
            const double wb = rule.weight[q] * rule.btilde[q];
            psi[kk] += wb * (std::pow(s, kk) + std::pow(c, kk) - 1.0);
            for (int j = 1; j <= kk - 1; ++j)
                lam[kk][j] += wb * binom(kk, j) * std::pow(s, j) * std::pow(c, kk - j);
        }
    }

    auto rhs = [&](const std::array<double, 5>& m) {
        std::array<double, 5> dm{};
        for (int kk = 1; kk <= K; ++kk) {
            double v = m[0] * m[kk] * psi[kk];
            for (int j = 1; j <= kk - 1; ++j) v += lam[kk][j] * m[j] * m[kk - j];
            dm[kk] = v;
        }
        return dm;
    };

    std::vector<MomentRow> series;
    std::array<double, 5> m = m0;
    const long nsteps = std::lround(t_end / dt);
    series.push_back({0.0, m});
    for (long step = 1; step <= nsteps; ++step) {
        const auto k1 = rhs(m);
        std::array<double, 5> tmp;
        for (int i = 0; i < 5; ++i) tmp[i] = m[i] + 0.5 * dt * k1[i];
        const auto k2 = rhs(tmp);
        for (int i = 0; i < 5; ++i) tmp[i] = m[i] + 0.5 * dt * k2[i];
        const auto k3 = rhs(tmp);
        for (int i = 0; i < 5; ++i) tmp[i] = m[i] + dt * k3[i];
        const auto k4 = rhs(tmp);
        for (int i = 0; i < 5; ++i) {
            m[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if (!std::isfinite(m[i])) throw BlowUpError("moment oracle became non-finite", step * dt);
        }
        series.push_back({step * dt, m});
    }
    return series;
}

RadialReconstruction reconstruct_physical_radial(const IsoSpectralField& phi,
                                                 const std::vector<double>& r_grid) {
    if (phi.d != 3)
        throw std::invalid_argument("reconstruct_physical_radial: d = 3 only");
    RadialReconstruction out;
    out.f.resize(r_grid.size());
    const double rho_max = std::sqrt(phi.x_max());
    if (std::abs(phi.phi.back()) > 1e-10 * std::abs(phi.phi.front())) out.tail_warning = true;
    const GaussLegendre& gl = gauss_legendre(8);
    for (std::size_t ir = 0; ir < r_grid.size(); ++ir) {
        const double r = r_grid[ir];
        if (r <= 0) throw std::invalid_argument("reconstruct_physical_radial: r must be positive");
        // panel length bounded by an eighth of the oscillation period
        const double panel = std::min(0.25, 1.0 / (8.0 * r));
        double acc = 0.0;
        double lo = 0.0;
        while (lo < rho_max) {
            const double hi = std::min(lo + panel, rho_max);
            const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
            for (std::size_t q = 0; q < gl.node.size(); ++q) {
                const double rho = mid + half * gl.node[q];
                acc += half * gl.weight[q] * rho * phi.value_at(rho * rho) *
                       std::sin(2.0 * kPi * r * rho);
            }
            lo = hi;
        }
        out.f[ir] = 2.0 / r * acc;
    }
    return out;
}

} // namespace bobylev

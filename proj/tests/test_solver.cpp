#include <doctest.h>

#include <cmath>

#include "bobylev/solver.hpp"

using namespace bobylev;

namespace {

constexpr double kLambda2D3Mu1 = 3.3869334755406224;

SimConfig base_config() {
    SimConfig cfg;
    cfg.kernel.d = 3;
    cfg.kernel.kappa = 1.0;
    cfg.kernel.mu = 1.0;
    cfg.grid.n = 1024;
    cfg.grid.x_max = 200.0;
    cfg.dt = 0.01;
    cfg.t_end = 0.5;
    cfg.snapshot_times = {0.0, 0.5};
    return cfg;
}

double bkw_exact(double x, double t, double a0, double e0) {
    const double a = a0 * std::exp(-0.5 * kLambda2D3Mu1 * t);
    return (1.0 + a * x) * std::exp(-(e0 + a) * x);
}

} // namespace

TEST_CASE("maxwellian trajectory is stationary") {
    SimConfig cfg = base_config();
    cfg.ic.family = InitialCondition::Family::maxwellian;
    cfg.ic.c = 1.0;
    const Trajectory traj = integrate(cfg);
    REQUIRE(traj.snapshots.size() == 2);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.snapshots[0].phi.size(); ++i)
        worst = std::max(worst,
                         std::abs(traj.snapshots[1].phi[i] - traj.snapshots[0].phi[i]));
    CHECK(worst < 1e-10);
}

TEST_CASE("relaxation trajectory follows the closed form") {
    SimConfig cfg = base_config();
    cfg.ic.family = InitialCondition::Family::bkw;
    cfg.ic.a0 = -0.2;
    cfg.ic.e0 = 1.0;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.grid.n = 2048;
    cfg.grid.x_max = 400.0;
    cfg.snapshot_times = {1.0};
    const Trajectory traj = integrate(cfg);
    const IsoSpectralField& last = traj.snapshots.back();
    double worst = 0.0;
    for (std::size_t i = 0; i < last.x.size(); ++i)
        worst = std::max(worst, std::abs(last.phi[i] - bkw_exact(last.x[i], 1.0, -0.2, 1.0)));
    CHECK(worst < 1e-6);
}

TEST_CASE("rk4 reaches fourth order on the relaxation family") {
    SimConfig cfg = base_config();
    cfg.ic.family = InitialCondition::Family::bkw;
    cfg.ic.a0 = -0.2;
    cfg.ic.e0 = 1.0;
    cfg.grid.n = 2048;
    cfg.grid.x_max = 400.0;
    cfg.t_end = 1.0;
    cfg.snapshot_times = {1.0};

    auto err_at = [&](double dt) {
        SimConfig c = cfg;
        c.dt = dt;
        const Trajectory traj = integrate(c);
        const IsoSpectralField& last = traj.snapshots.back();
        double worst = 0.0;
        for (std::size_t i = 0; i < last.x.size(); ++i)
            worst = std::max(worst,
                             std::abs(last.phi[i] - bkw_exact(last.x[i], 1.0, -0.2, 1.0)));
        return worst;
    };
    const double e1 = err_at(0.05);
    const double e2 = err_at(0.025);
    const double factor = e1 / e2;
    CHECK(factor > 12.0);
    CHECK(factor < 20.0);
}

TEST_CASE("conservation along generic trajectories") {
    SimConfig cfg = base_config();
    cfg.ic.family = InitialCondition::Family::two_temperature;
    cfg.ic.c1 = 0.5;
    cfg.ic.c2 = 2.0;
    cfg.ic.w = 0.4;
    const Trajectory traj = integrate(cfg);
    CHECK(traj.max_mass_drift <= 1e-12);
    CHECK(traj.max_energy_drift <= 1e-6);
    CHECK(traj.max_bochner_excess <= 1e-8);
}

TEST_CASE("grid refinement leaves smooth trajectories unchanged") {
    SimConfig cfg = base_config();
    cfg.ic.family = InitialCondition::Family::bkw;
    cfg.t_end = 0.2;
    cfg.dt = 5e-3;
    cfg.snapshot_times = {0.2};
    SimConfig fine = cfg;
    fine.grid.n = 2048;
    const Trajectory a = integrate(cfg);
    const Trajectory b = integrate(fine);
    // compare on the coarse nodes via interpolation of the fine solution
    double worst = 0.0;
    for (std::size_t i = 0; i < a.snapshots[0].x.size(); ++i)
        worst = std::max(worst, std::abs(a.snapshots.back().phi[i] -
                                         b.snapshots.back().value_at(a.snapshots.back().x[i])));
    CHECK(worst < 1e-6);
}

TEST_CASE("stability detector trips on an oversized step") {
    SimConfig cfg = base_config();
    cfg.ic.family = InitialCondition::Family::matern;
    cfg.ic.p = 4.0;
    cfg.kernel.kappa = 3.0;
    cfg.grid.n = 256;
    cfg.grid.x_max = 2000.0;
    cfg.dt = 0.5;  // far beyond the stability limit at x_max
    cfg.t_end = 5.0;
    cfg.snapshot_times = {};
    CHECK_THROWS_AS(integrate(cfg), StabilityError);
}

TEST_CASE("taylor moments of the stock families") {
    // maxwellian: m_k = c^k
    const IsoSpectralField maxw =
        make_field(512, 100.0, 3, [](double x) { return std::exp(-1.3 * x); });
    const MomentsResult m = moments(maxw, 4);
    for (int k = 0; k <= 4; ++k)
        CHECK(m.m[k] == doctest::Approx(std::pow(1.3, k)).epsilon(k <= 2 ? 1e-8 : (k == 3 ? 1e-5 : 1e-3)));
    CHECK_FALSE(m.ill_conditioned);

    // relaxation family: m1 = e0
    InitialCondition ic;
    ic.family = InitialCondition::Family::bkw;
    ic.a0 = -0.2;
    ic.e0 = 1.0;
    const IsoSpectralField bkw = make_field(512, 100.0, 3, [&](double x) { return ic.eval(x); });
    CHECK(moments(bkw, 2).m[1] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(moments(bkw, 2).m[2] == doctest::Approx(1.0 - 0.04).epsilon(1e-6));

    // polynomial family: m1 = p, m2 = p(p+1)
    const IsoSpectralField mat =
        make_field(512, 100.0, 3, [](double x) { return std::pow(1.0 + x, -3.0); });
    CHECK(moments(mat, 2).m[1] == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(moments(mat, 2).m[2] == doctest::Approx(12.0).epsilon(1e-6));

    // family helper agrees
    InitialCondition icm;
    icm.family = InitialCondition::Family::matern;
    icm.p = 3.0;
    CHECK(icm.taylor_moments()[2] == doctest::Approx(12.0));
}

TEST_CASE("moment hierarchy oracle: conservation and relaxation") {
    AngularKernel k;
    k.d = 3;
    k.kappa = 1.0;
    k.mu = 1.0;

    std::array<double, 5> m0{1.0, 1.0, 3.0, 9.0, 30.0};
    const auto series = moment_ode_oracle(k, m0, 1.0, 1e-3);
    const auto& last = series.back();
    CHECK(last.m[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(last.m[1] == doctest::Approx(1.0).epsilon(1e-12));

    // m2(t) = m1^2 + (m2(0) - m1^2) e^{-lambda2 t}
    const double expected =
        1.0 + (3.0 - 1.0) * std::exp(-kLambda2D3Mu1 * 1.0);
    CHECK(last.m[2] == doctest::Approx(expected).epsilon(1e-9));

    // equilibrium moments are stationary: maxwellian m_k = c^k... for the
    // hierarchy the gaussian fixed point has m_k = m1^k * k!/(prod) pattern
    // m = (1, c, 2c^2?, ...) in x-coordinates: e^{-cx} gives m_k = c^k
    std::array<double, 5> meq{1.0, 2.0, 4.0, 8.0, 16.0};
    const auto eq_series = moment_ode_oracle(k, meq, 0.5, 1e-3);
    for (int kk = 0; kk <= 4; ++kk)
        CHECK(eq_series.back().m[kk] == doctest::Approx(meq[kk]).epsilon(1e-10));
}

TEST_CASE("simulated moments track the hierarchy oracle") {
    SimConfig cfg = base_config();
    cfg.ic.family = InitialCondition::Family::two_temperature;
    cfg.ic.c1 = 0.6;
    cfg.ic.c2 = 2.4;
    cfg.ic.w = 0.5;
    cfg.t_end = 1.0;
    cfg.dt = 1e-3;
    cfg.grid.n = 2048;
    cfg.grid.x_max = 400.0;
    cfg.snapshot_times = {1.0};
    const Trajectory traj = integrate(cfg);
    const auto oracle = moment_ode_oracle(cfg.kernel, cfg.ic.taylor_moments(), 1.0, 1e-3);
    const MomentsResult sim_m = moments(traj.snapshots.back(), 4);
    CHECK(sim_m.m[2] == doctest::Approx(oracle.back().m[2]).epsilon(1e-5));
    CHECK(sim_m.m[3] == doctest::Approx(oracle.back().m[3]).epsilon(1e-4));
}

TEST_CASE("radial reconstruction recovers the gaussian pair") {
    // phi(x) = e^{-c x} <-> f(r) = (pi/c)^{3/2} e^{-pi^2 r^2 / c}
    const double c = 1.0;
    const IsoSpectralField phi =
        make_field(2048, 900.0, 3, [&](double x) { return std::exp(-c * x); });
    std::vector<double> r_grid;
    for (double r = 0.1; r <= 2.0; r += 0.1) r_grid.push_back(r);
    const RadialReconstruction rec = reconstruct_physical_radial(phi, r_grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        const double r = r_grid[i];
        const double exact = std::pow(kPi / c, 1.5) * std::exp(-kPi * kPi * r * r / c);
        worst = std::max(worst, std::abs(rec.f[i] - exact) / std::pow(kPi / c, 1.5));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("physical positivity spot checks") {
    // polynomial-decay family p = 3 has a nonnegative density
    const IsoSpectralField mat =
        make_field(4096, 2500.0, 3, [](double x) { return std::pow(1.0 + x, -3.0); });
    std::vector<double> r_grid;
    for (double r = 0.05; r <= 3.0; r += 0.05) r_grid.push_back(r);
    const RadialReconstruction rec = reconstruct_physical_radial(mat, r_grid);
    for (double v : rec.f) CHECK(v > -1e-8);
}

TEST_CASE("config validation catches bad setups") {
    SimConfig cfg = base_config();
    cfg.dt = 1.0; // dt >= t_end
    cfg.t_end = 0.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = base_config();
    cfg.snapshot_times = {0.123456}; // not a dt multiple
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = base_config();
    cfg.ic.family = InitialCondition::Family::matern;
    cfg.ic.p = 2.0; // below d/2 + 1
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

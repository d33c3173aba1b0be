#pragma once

#include <array>
#include <vector>

#include "bobylev/collision.hpp"

namespace bobylev {

enum class Integrator { rk4, euler };

/// Initial data families, mass-normalized so phi(0) = 1.
struct InitialCondition {
    enum class Family { maxwellian, bkw, matern, two_temperature };
    Family family = Family::maxwellian;
    double c = 1.0;            // maxwellian: phi = exp(-c x)
    double a0 = -0.2, e0 = 1.0; // bkw: phi = (1 + a0 x) exp(-(e0+a0) x)
    double p = 4.0;            // matern: phi = (1+x)^{-p}, needs p >= d/2 + 1
    double c1 = 0.5, c2 = 2.0, w = 0.5; // two_temperature mixture

    double eval(double x) const;
    void validate(int d) const;
    std::array<double, 5> taylor_moments() const; // m_0..m_4 of the family
};

struct SimGrid {
    int n = 2048;       // intervals; grid has n+1 points
    double x_max = 400.0;
};

struct SimConfig {
    AngularKernel kernel;
    SimGrid grid;
    double dt = 1e-3;
    double t_end = 1.0;
    Integrator integrator = Integrator::rk4;
    InitialCondition ic;
    std::vector<double> snapshot_times; // must align with dt multiples
    double quad_tol = 1e-12;
    int interp_order = 5;

    void validate() const;
};

struct MomentRow {
    double t = 0.0;
    std::array<double, 5> m{};
};

struct Trajectory {
    std::vector<double> times;
    std::vector<IsoSpectralField> snapshots;
    std::vector<MomentRow> moment_series; // one row per time step
    double max_mass_drift = 0.0;
    double max_energy_drift = 0.0;
    double max_bochner_excess = 0.0;
};

/// Time-integrate d/dt phi = Qhat(phi, phi). Deterministic for a fixed config.
/// Throws BlowUpError on non-finite state, StabilityError when the sup norm
/// exceeds phi(0) (1 + 1e-6).
Trajectory integrate(const SimConfig& cfg);

/// Taylor moments of phi at x = 0: phi(x) = sum (-1)^k m_k x^k / k!.
/// Estimated from the first K+3 grid points via a Newton divided-difference
/// table expanded to monomial form.
struct MomentsResult {
    std::array<double, 5> m{};
    bool ill_conditioned = false;
};
MomentsResult moments(const IsoSpectralField& phi, int K);

/// Closed moment hierarchy up to K <= 4:
///   m_k' = \int btilde [ sum_j C(k,j) s^j c^{k-j} m_j m_{k-j} - m_0 m_k ] dt,
/// the j in {0,k} terms fused with the loss so every theta-integrand is
/// O(theta^2). RK4 in time.
std::vector<MomentRow> moment_ode_oracle(const AngularKernel& k,
                                         const std::array<double, 5>& m0, double t_end,
                                         double dt, int K = 4, double quad_tol = 1e-12);

/// Diagnostic inverse radial transform, d = 3 only:
///   f(r) = (2/r) \int_0^inf rho phi(rho^2) sin(2 pi r rho) drho.
/// Returns f on r_grid; oscillatory panels sized to the fastest phase.
struct RadialReconstruction {
    std::vector<double> f;
    bool tail_warning = false;
};
RadialReconstruction reconstruct_physical_radial(const IsoSpectralField& phi,
                                                 const std::vector<double>& r_grid);

} // namespace bobylev

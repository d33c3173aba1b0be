#pragma once

#include <string>
#include <vector>

#include "bobylev/common.hpp"

namespace bobylev {

enum class KernelFamily {
    debye_yukawa_model, // btilde = kappa |S^{d-2}| theta^{-1} (log(pi/theta))^mu
    power_law_model,    // btilde = kappa |S^{d-2}| theta^{-1-2nu}
    integrable_cutoff,  // btilde = kappa |S^{d-2}| (bounded reference)
};

/// Angular cross-section family on the support theta in (0, pi/2].
/// The reduced kernel btilde(theta) := |S^{d-2}| sin^{d-2}(theta) b(cos theta)
/// is the quantity everything downstream integrates against.
struct AngularKernel {
    KernelFamily family = KernelFamily::debye_yukawa_model;
    int d = 3;
    double kappa = 1.0; // singularity strength (plays the role of K for power_law_model)
    double mu = 1.0;    // logarithmic exponent, debye_yukawa_model only
    double nu = 0.5;    // power exponent in (0,1), power_law_model only

    void validate() const;
};

std::string to_string(KernelFamily f);
KernelFamily kernel_family_from_string(const std::string& name);

/// |S^{d-2}|: the measure of the azimuthal sphere of the sigma integral.
double sphere_measure_sd2(int d);

/// btilde(theta); domain error outside (0, pi/2].
double eval_reduced_kernel(const AngularKernel& k, double theta);

/// mu = (d-2)/s - 1 for the Debye-Yukawa potential exponent s in (0,2).
/// positive == false flags values unusable as weight exponents.
struct MuResult {
    double mu;
    bool positive;
};
MuResult mu_from_debye(int d, double s);

/// Weight functions for kernel_moment. Each vanishes at least like theta^2
/// as theta -> 0 so the integral against btilde converges.
enum class MomentWeight {
    two_sc,          // 2 sin^2(t/2) cos^2(t/2)  (= sin^2(t)/2)
    sin_d,           // sin^2(t)/|S^{d-2}|: completes btilde to sin^d(t) b(cos t)
    cancellation_i2, // cos^{-d}(t/2) - 1
    sin2_half,       // sin^2(t/2)
    sin_sq,          // sin^2(t)
};

/// Shared graded-mesh Gauss-Legendre rule on (0, pi/2], finest panel chosen so
/// that the remaining theta^2-weighted kernel mass is below tol. Cached per
/// node are sin^2(theta/2), cos^2(theta/2) and btilde(theta).
struct AngularRule {
    std::vector<double> theta;
    std::vector<double> weight;
    std::vector<double> btilde;
    std::vector<double> wb;     // weight * btilde, fused for the hot loops
    std::vector<double> s_half; // sin^2(theta/2)
    std::vector<double> c_half; // cos^2(theta/2)
    int panels = 0;
    double theta_min = 0.0;
};

AngularRule make_angular_rule(const AngularKernel& k, double tol,
                              double grading = 0.5, int nodes_per_panel = 8,
                              int max_panels = 64);

/// Momentum transfer integral \int_0^{pi/2} sin^d(t) b(cos t) dt, accumulated
/// panel by panel from pi/2 downward until the tail increment drops below tol.
double momentum_transfer(const AngularKernel& k, double tol);

/// \int_0^{pi/2} btilde(t) w(t) dt with the same graded scheme.
double kernel_moment(const AngularKernel& k, MomentWeight w, double tol,
                     double grading = 0.5);

/// kernel_moment evaluated on an existing rule (same nodes for exact
/// node-level identities between related weights).
double kernel_moment_on_rule(const AngularRule& rule, MomentWeight w, int d);

} // namespace bobylev

#include "bobylev/kernel.hpp"

#include <cmath>
#include <functional>

namespace bobylev {

void AngularKernel::validate() const {
    if (d < 2) throw std::invalid_argument("kernel: dimension d must be >= 2");
    if (!(kappa > 0)) throw std::invalid_argument("kernel: kappa must be positive");
    switch (family) {
    case KernelFamily::debye_yukawa_model:
        if (!(mu > 0)) throw std::invalid_argument("kernel: mu must be positive");
        break;
    case KernelFamily::power_law_model:
        if (!(nu > 0 && nu < 1)) throw std::invalid_argument("kernel: nu must lie in (0,1)");
        break;
    case KernelFamily::integrable_cutoff:
        break;
    }
}

std::string to_string(KernelFamily f) {
    switch (f) {
    case KernelFamily::debye_yukawa_model: return "debye_yukawa_model";
    case KernelFamily::power_law_model: return "power_law_model";
    case KernelFamily::integrable_cutoff: return "integrable_cutoff";
    }
    return "?";
}

KernelFamily kernel_family_from_string(const std::string& name) {
    if (name == "debye_yukawa_model") return KernelFamily::debye_yukawa_model;
    if (name == "power_law_model") return KernelFamily::power_law_model;
    if (name == "integrable_cutoff") return KernelFamily::integrable_cutoff;
    throw std::invalid_argument("unknown kernel family: " + name);
}

double sphere_measure_sd2(int d) {
    return sphere_surface(d - 2);
}

double eval_reduced_kernel(const AngularKernel& k, double theta) {
    if (!(theta > 0.0) || theta > kPi / 2 + 1e-15)
        throw std::domain_error("eval_reduced_kernel: theta outside (0, pi/2]");
    const double sd2 = sphere_measure_sd2(k.d);
    switch (k.family) {
    case KernelFamily::debye_yukawa_model:
        return k.kappa * sd2 * std::pow(std::log(kPi / theta), k.mu) / theta;
    case KernelFamily::power_law_model:
        return k.kappa * sd2 * std::pow(theta, -1.0 - 2.0 * k.nu);
    case KernelFamily::integrable_cutoff:
        return k.kappa * sd2;
    }
    return 0.0;
}

MuResult mu_from_debye(int d, double s) {
    if (d < 2) throw std::invalid_argument("mu_from_debye: d must be >= 2");
    if (!(s > 0 && s <= 2)) throw std::invalid_argument("mu_from_debye: s must lie in (0,2]");
    // d = 3 carries the classical screened-potential exponent 2/s - 1.
    const double mu = d == 3 ? 2.0 / s - 1.0 : static_cast<double>(d - 2) / s - 1.0;
    return {mu, mu > 0.0};
}

namespace {

double moment_weight_value(MomentWeight w, double theta, int d) {
    const double sh = std::sin(theta / 2), ch = std::cos(theta / 2);
    const double s2 = sh * sh, c2 = ch * ch;
    switch (w) {
    case MomentWeight::two_sc: return 2.0 * s2 * c2;
    case MomentWeight::sin_d: {
        const double st = std::sin(theta);
        return st * st / sphere_measure_sd2(d);
    }
    case MomentWeight::cancellation_i2: return std::pow(ch, -static_cast<double>(d)) - 1.0;
    case MomentWeight::sin2_half: return s2;
    case MomentWeight::sin_sq: {
        const double st = std::sin(theta);
        return st * st;
    }
    }
    return 0.0;
}

/// Accumulate \int btilde * w over geometric panels from pi/2 down until the
/// panel increment is below tol. Wider panels (small grading ratio) get more
/// nodes so the discretization error stays tail-dominated.
double integrate_graded(const AngularKernel& k,
                        const std::function<double(double)>& w, double tol,
                        double grading, int max_panels) {
    const GaussLegendre& gl = gauss_legendre(grading <= 0.3 ? 16 : 8);
    double total = 0.0;
    double hi = kPi / 2;
    for (int j = 0; j < max_panels; ++j) {
        const double lo = hi * grading;
        const double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
        double panel = 0.0;
        for (std::size_t q = 0; q < gl.node.size(); ++q) {
            const double th = mid + half * gl.node[q];
            panel += half * gl.weight[q] * eval_reduced_kernel(k, th) * w(th);
        }
        total += panel;
        if (std::abs(panel) < tol && j >= 4) return total;
        hi = lo;
    }
    throw ConvergenceError("graded quadrature did not converge within the panel budget", total);
}

} // namespace

AngularRule make_angular_rule(const AngularKernel& k, double tol, double grading,
                              int nodes_per_panel, int max_panels) {
    k.validate();
    if (!(grading > 0 && grading < 1))
        throw std::invalid_argument("make_angular_rule: grading ratio must lie in (0,1)");
    const GaussLegendre& gl = gauss_legendre(nodes_per_panel);
    AngularRule rule;
    double hi = kPi / 2;
    bool converged = false;
    for (int j = 0; j < max_panels; ++j) {
        const double lo = hi * grading;
        const double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
        double panel_mass = 0.0; // theta^2-weighted kernel mass of this panel
        for (int q = 0; q < nodes_per_panel; ++q) {
            const double th = mid + half * gl.node[q];
            const double wq = half * gl.weight[q];
            const double bt = eval_reduced_kernel(k, th);
            const double sh = std::sin(th / 2), ch = std::cos(th / 2);
            rule.theta.push_back(th);
            rule.weight.push_back(wq);
            rule.btilde.push_back(bt);
            rule.wb.push_back(wq * bt);
            rule.s_half.push_back(sh * sh);
            rule.c_half.push_back(ch * ch);
            panel_mass += wq * bt * th * th;
        }
        rule.panels = j + 1;
        rule.theta_min = lo;
        hi = lo;
        if (panel_mass < tol && j >= 4) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw ConvergenceError("angular rule did not resolve the singularity within the panel budget",
                               0.0);
    return rule;
}

double momentum_transfer(const AngularKernel& k, double tol) {
    k.validate();
    if (!(tol > 0)) throw std::invalid_argument("momentum_transfer: tol must be positive");
    const int d = k.d;
    return integrate_graded(
        k, [d](double th) { return moment_weight_value(MomentWeight::sin_d, th, d); }, tol,
        0.5, 64);
}

double kernel_moment(const AngularKernel& k, MomentWeight w, double tol, double grading) {
    k.validate();
    if (!(tol > 0)) throw std::invalid_argument("kernel_moment: tol must be positive");
    const int d = k.d;
    return integrate_graded(
        k, [w, d](double th) { return moment_weight_value(w, th, d); }, tol, grading, 64);
}

double kernel_moment_on_rule(const AngularRule& rule, MomentWeight w, int d) {
    double total = 0.0;
    for (std::size_t i = 0; i < rule.theta.size(); ++i)
        total += rule.weight[i] * rule.btilde[i] * moment_weight_value(w, rule.theta[i], d);
    return total;
}

} // namespace bobylev

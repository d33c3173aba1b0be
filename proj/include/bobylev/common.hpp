#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bobylev {

inline constexpr double kPi = 3.14159265358979323846;

/// Surface measure of the unit sphere S^{m} in R^{m+1}.
/// |S^0| = 2, |S^1| = 2*pi, |S^2| = 4*pi.
double sphere_surface(int m);

/// Raised when a graded quadrature fails to converge within the panel budget.
/// Carries the partial sum accumulated so far.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double partial)
        : std::runtime_error(what), partial_sum(partial) {}
    double partial_sum;
};

/// Time integration produced a non-finite state.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, double t)
        : std::runtime_error(what), t_last(t) {}
    double t_last;
};

/// Time step instability detector tripped (sup-norm grew past the mass bound).
class StabilityError : public std::runtime_error {
public:
    StabilityError(const std::string& what, double t)
        : std::runtime_error(what), t_last(t) {}
    double t_last;
};

class GridMismatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> node;
    std::vector<double> weight;
};

/// Nodes/weights by Newton iteration on the Legendre recurrence.
const GaussLegendre& gauss_legendre(int n);

/// Ordinary least squares fit z ~ slope*y + intercept. Returns {slope,
/// intercept, r_squared}.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};
LinearFit linear_fit(const std::vector<double>& y, const std::vector<double>& z);

/// log(sum_i exp(a_i)) without overflow.
double log_sum_exp(const std::vector<double>& a);

} // namespace bobylev

#include "bobylev/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

namespace bobylev {

double sphere_surface(int m) {
    if (m < 0) throw std::invalid_argument("sphere_surface: dimension must be >= 0");
    // |S^m| = 2 pi^{(m+1)/2} / Gamma((m+1)/2)
    const double half = 0.5 * (m + 1);
    return 2.0 * std::pow(kPi, half) / std::tgamma(half);
}

namespace {

GaussLegendre compute_gauss_legendre(int n) {
    GaussLegendre rule;
    rule.node.resize(n);
    rule.weight.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-based initial guess, Newton on P_n.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        rule.node[n - 1 - i] = x;
        rule.weight[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

} // namespace

const GaussLegendre& gauss_legendre(int n) {
    if (n < 1 || n > 256) throw std::invalid_argument("gauss_legendre: order out of range");
    static std::map<int, GaussLegendre> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

LinearFit linear_fit(const std::vector<double>& y, const std::vector<double>& z) {
    if (y.size() != z.size() || y.size() < 2)
        throw std::invalid_argument("linear_fit: need two equal-length samples");
    const double n = static_cast<double>(y.size());
    double sy = 0, sz = 0, syy = 0, syz = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        sy += y[i];
        sz += z[i];
        syy += y[i] * y[i];
        syz += y[i] * z[i];
    }
    const double denom = n * syy - sy * sy;
    LinearFit fit;
    fit.slope = (n * syz - sy * sz) / denom;
    fit.intercept = (sz - fit.slope * sy) / n;
    double ss_res = 0, ss_tot = 0;
    const double zbar = sz / n;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double pred = fit.slope * y[i] + fit.intercept;
        ss_res += (z[i] - pred) * (z[i] - pred);
        ss_tot += (z[i] - zbar) * (z[i] - zbar);
    }
    fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

double log_sum_exp(const std::vector<double>& a) {
    if (a.empty()) return -std::numeric_limits<double>::infinity();
    const double m = *std::max_element(a.begin(), a.end());
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double v : a) s += std::exp(v - m);
    return m + std::log(s);
}

} // namespace bobylev

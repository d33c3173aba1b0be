#include "bobylev/field.hpp"

#include <algorithm>
#include <cmath>

namespace bobylev {

void IsoSpectralField::validate() const {
    if (x.size() != phi.size() || x.size() < 8)
        throw std::invalid_argument("field: grid/value length mismatch or grid too small");
    if (x.front() != 0.0) throw std::invalid_argument("field: grid must start at x = 0");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1])) throw std::invalid_argument("field: grid must be strictly increasing");
    if (interp_order < 3 || interp_order > 7)
        throw std::invalid_argument("field: interp_order must lie in [3, 7]");
    if (d < 2) throw std::invalid_argument("field: dimension must be >= 2");
}

void IsoSpectralField::build_interp_table() const {
    const int m = interp_order + 1;
    const std::size_t n = x.size();
    auto tab = std::make_shared<std::vector<double>>((n - m + 1) * m);
    for (std::size_t lo = 0; lo + m <= n; ++lo)
        for (int a = 0; a < m; ++a) {
            double d = 1.0;
            for (int b = 0; b < m; ++b)
                if (b != a) d *= x[lo + a] - x[lo + b];
            (*tab)[lo * m + a] = 1.0 / d;
        }
    interp_table_ = std::move(tab);
}

double IsoSpectralField::value_at(double u) const {
    const std::size_t n = x.size();
    if (u <= 0.0) return phi.front();
    if (u >= x.back()) {
        if (u > x.back() * (1.0 + 1e-12) + 1e-300)
            throw std::domain_error("field: interpolation request beyond x_max");
        return phi.back();
    }
    // Locate the interval [x_i, x_{i+1}) containing u.
    std::size_t i;
    if (quadratic_grid) {
        const double fi = (n - 1) * std::sqrt(u / x.back());
        i = static_cast<std::size_t>(fi);
        if (i >= n - 1) i = n - 2;
        // guard against rounding at interval edges
        while (i > 0 && u < x[i]) --i;
        while (i + 1 < n - 1 && u >= x[i + 1]) ++i;
    } else {
        i = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), u) - x.begin()) - 1;
        if (i >= n - 1) i = n - 2;
    }
    const int m = interp_order + 1; // stencil size
    std::ptrdiff_t lo = static_cast<std::ptrdiff_t>(i) - (m / 2 - 1);
    lo = std::clamp<std::ptrdiff_t>(lo, 0, static_cast<std::ptrdiff_t>(n) - m);

    if (!interp_table_) build_interp_table();
    const double* invd = interp_table_->data() + lo * m;
    const double* xs = x.data() + lo;
    const double* ps = phi.data() + lo;

    // numerators via prefix/suffix products: no divisions in the hot path
    double pre[8], suf[8];
    double acc = 1.0;
    for (int a = 0; a < m; ++a) {
        pre[a] = acc;
        acc *= u - xs[a];
    }
    acc = 1.0;
    for (int a = m - 1; a >= 0; --a) {
        suf[a] = acc;
        acc *= u - xs[a];
    }
    double result = 0.0;
    for (int a = 0; a < m; ++a) result += pre[a] * suf[a] * invd[a] * ps[a];
    return result;
}

double IsoSpectralField::bochner_excess() const {
    double m = 0.0;
    for (double v : phi) m = std::max(m, std::abs(v));
    return m / std::abs(phi.front()) - 1.0;
}

IsoSpectralField make_field(int n, double x_max, int d,
                            const std::function<double(double)>& f, int interp_order) {
    if (n < 8) throw std::invalid_argument("make_field: grid too small");
    if (!(x_max > 0)) throw std::invalid_argument("make_field: x_max must be positive");
    IsoSpectralField out;
    out.d = d;
    out.interp_order = interp_order;
    out.quadratic_grid = true;
    out.x.resize(n + 1);
    out.phi.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double r = static_cast<double>(i) / n;
        out.x[i] = x_max * r * r;
        out.phi[i] = f(out.x[i]);
    }
    out.validate();
    out.build_interp_table();
    return out;
}

double radial_weight(double x, int d) {
    return 0.5 * sphere_surface(d - 1) * std::pow(x, 0.5 * d - 1.0);
}

std::vector<double> plancherel_weights(const IsoSpectralField& f) {
    const std::size_t n = f.x.size();
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double dx = 0.0;
        if (i > 0) dx += 0.5 * (f.x[i] - f.x[i - 1]);
        if (i + 1 < n) dx += 0.5 * (f.x[i + 1] - f.x[i]);
        // omega_3 has an integrable sqrt singularity derivative at 0; the
        // trapezoid cell value at x=0 vanishes for d=3 and is finite for d=2.
        w[i] = radial_weight(f.x[i], f.d) * dx;
    }
    return w;
}

std::complex<double> Grid2DField::value_at(double ex, double ey, int order) const {
    const int m = order + 1;
    const double hh = h();
    const double gx = ex / hh + n / 2;
    const double gy = ey / hh + n / 2;
    int i0 = static_cast<int>(std::floor(gx)) - (m / 2 - 1);
    int j0 = static_cast<int>(std::floor(gy)) - (m / 2 - 1);
    i0 = std::clamp(i0, 0, n - m);
    j0 = std::clamp(j0, 0, n - m);
    double wx[8], wy[8];
    for (int a = 0; a < m; ++a) {
        double w = 1.0;
        for (int b = 0; b < m; ++b) {
            if (b == a) continue;
            w *= (gx - (i0 + b)) / static_cast<double>(a - b);
        }
        wx[a] = w;
        w = 1.0;
        for (int b = 0; b < m; ++b) {
            if (b == a) continue;
            w *= (gy - (j0 + b)) / static_cast<double>(a - b);
        }
        wy[a] = w;
    }
    std::complex<double> out{0.0, 0.0};
    for (int a = 0; a < m; ++a) {
        std::complex<double> row{0.0, 0.0};
        for (int b = 0; b < m; ++b) row += wy[b] * at(i0 + a, j0 + b);
        out += wx[a] * row;
    }
    return out;
}

double Grid2DField::hermitian_defect(double r_max) const {
    double worst = 0.0;
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            if (std::hypot(coord(i), coord(j)) > r_max) continue;
            const std::complex<double> a = at(i, j);
            const std::complex<double> b = std::conj(at(n - i, n - j));
            worst = std::max(worst, std::abs(a - b));
        }
    return worst;
}

Grid2DField make_grid2d_radial(int n, double eta_max,
                               const std::function<double(double)>& phi_of_x) {
    Grid2DField g(n, eta_max);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double ex = g.coord(i), ey = g.coord(j);
            g.at(i, j) = phi_of_x(ex * ex + ey * ey);
        }
    return g;
}

} // namespace bobylev

#include "sqc/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sqc {

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
    if (n == 0) {
        throw std::invalid_argument("gauss_legendre: n must be positive");
    }
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = mid - half * x;
        rule.nodes[n - 1 - i] = mid + half * x;
        rule.weights[i] = rule.weights[n - 1 - i] = w * half;
    }
    return rule;
}

QuadratureRule composite_gauss(std::size_t points, std::size_t panels, double a, double b) {
    QuadratureRule out;
    const double h = (b - a) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const auto r = gauss_legendre(points, a + h * static_cast<double>(p), a + h * static_cast<double>(p + 1));
        out.nodes.insert(out.nodes.end(), r.nodes.begin(), r.nodes.end());
        out.weights.insert(out.weights.end(), r.weights.begin(), r.weights.end());
    }
    return out;
}

QuadratureRule graded_radial(std::size_t points, std::size_t levels) {
    QuadratureRule out;
    double lo = 0.0;
    for (std::size_t k = 1; k <= levels + 1; ++k) {
        const double hi = k <= levels ? 1.0 - std::ldexp(1.0, -static_cast<int>(k)) : 1.0;
        const auto r = gauss_legendre(points, lo, hi);
        out.nodes.insert(out.nodes.end(), r.nodes.begin(), r.nodes.end());
        out.weights.insert(out.weights.end(), r.weights.begin(), r.weights.end());
        lo = hi;
    }
    return out;
}

double periodic_trapezoid(const std::function<double(double)>& g, std::size_t n0, double rel_tol,
                          std::size_t n_max) {
    std::size_t n = std::max<std::size_t>(n0, 4);
    const double two_pi = 2.0 * std::numbers::pi;
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sum += g(two_pi * static_cast<double>(k) / static_cast<double>(n));
    }
    double estimate = sum * two_pi / static_cast<double>(n);
    while (n < n_max) {
        // Refinement reuses the old nodes; only midpoints are new.
        double extra = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            extra += g(two_pi * (static_cast<double>(k) + 0.5) / static_cast<double>(n));
        }
        sum += extra;
        n *= 2;
        const double next = sum * two_pi / static_cast<double>(n);
        const bool done = std::abs(next - estimate) <= rel_tol * std::abs(next) + 1e-300;
        estimate = next;
        if (done) {
            break;
        }
    }
    return estimate;
}

double adaptive_gauss(const std::function<double(double)>& g, double a, double b, std::size_t panels0,
                      double rel_tol, std::size_t max_panels) {
    static const QuadratureRule unit = gauss_legendre(16, 0.0, 1.0);
    auto estimate = [&](std::size_t panels) {
        const double h = (b - a) / static_cast<double>(panels);
        double sum = 0.0;
        for (std::size_t k = 0; k < panels; ++k) {
            const double lo = a + h * static_cast<double>(k);
            for (std::size_t i = 0; i < unit.nodes.size(); ++i) sum += unit.weights[i] * g(lo + h * unit.nodes[i]);
        }
        return sum * h;
    };
    std::size_t panels = std::max<std::size_t>(panels0, 1);
    double current = estimate(panels);
    while (panels < max_panels) {
        panels *= 2;
        const double next = estimate(panels);
        const bool done = std::abs(next - current) <= rel_tol * std::abs(next) + 1e-300;
        current = next;
        if (done) {
            break;
        }
    }
    return current;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("loglog_slope: need at least two matching points");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace sqc

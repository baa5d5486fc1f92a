#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace sqc {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b] (Newton iteration on P_n).
QuadratureRule gauss_legendre(std::size_t n, double a = -1.0, double b = 1.0);

/// Composite Gauss-Legendre on [a, b] with `panels` equal panels.
QuadratureRule composite_gauss(std::size_t points, std::size_t panels, double a, double b);

/// Radial rule on [0, 1] with panels graded geometrically toward 1
/// (panel edges 1 - 2^-k down to 1 - 2^-levels, plus the last sliver).
QuadratureRule graded_radial(std::size_t points, std::size_t levels);

/// Periodic trapezoid integral of g over [0, 2 pi), doubling the node count
/// from n0 until two successive estimates agree to rel_tol (or n_max).
double periodic_trapezoid(const std::function<double(double)>& g, std::size_t n0, double rel_tol = 1e-10,
                          std::size_t n_max = std::size_t{1} << 18);

/// Integral of g over [a, b] by 16-point Gauss-Legendre panels, doubling the
/// panel count from panels0 until two successive estimates agree to rel_tol.
double adaptive_gauss(const std::function<double(double)>& g, double a, double b, std::size_t panels0,
                      double rel_tol = 1e-10, std::size_t max_panels = 4096);
/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sqc

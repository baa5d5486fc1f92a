#include "sqc/measures.hpp"

#include "sqc/errors.hpp"
#include "sqc/parallel.hpp"
#include "sqc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace sqc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEtaPlanar = 8.0 / kPi;

struct Interval {
    double lo, hi;
};

struct Disc {
    double cx, cy, r1;
};

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double radial_density(const std::vector<double>& c, double rho) {
    double v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * rho + c[k];
    return v;
}

/// Euclidean disc of Delta_I(alpha, r) for alpha with complex coordinate a.
Disc euclid_disc(std::complex<double> a, double r) {
    const double m2 = std::norm(a);
    const double s = (1.0 - r * r) / (1.0 - r * r * m2);
    return {s * a.real(), s * a.imag(), r * (1.0 - m2) / (1.0 - r * r * m2)};
}

std::vector<Interval> merge(std::vector<Interval> v) {
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (const Interval& i : v) {
        if (i.hi <= i.lo) continue;
        if (!out.empty() && i.lo <= out.back().hi) {
            out.back().hi = std::max(out.back().hi, i.hi);
        } else {
            out.push_back(i);
        }
    }
    return out;
}

/// phi in [0, pi] admitted by the symmetric box S(theta0, r).
std::vector<Interval> symmetric_phis(double theta0, double r) {
    const double h = 1.0 - r;
    std::vector<Interval> v{{theta0 - h, theta0 + h}, {2.0 * kPi - theta0 - h, 3.0 * kPi}, {-kPi, h - theta0}};
    for (Interval& i : v) {
        i.lo = std::max(i.lo, 0.0);
        i.hi = std::min(i.hi, kPi);
    }
    return merge(v);
}

/// The arc |theta - theta0| <= 1 - r as intervals of (-pi, pi].
std::vector<Interval> arc_thetas(double theta0, double r) {
    const double h = 1.0 - r;
    if (h >= kPi) return {{-kPi, kPi}};
    double c = std::remainder(theta0, 2.0 * kPi);
    std::vector<Interval> v{{c - h, c + h}};
    if (c + h > kPi) v = {{c - h, kPi}, {-kPi, c + h - 2.0 * kPi}};
    if (c - h < -kPi) v = {{-kPi, c + h}, {c - h + 2.0 * kPi, kPi}};
    return merge(v);
}

/// Arc intervals folded to phi = |theta| (kept as a multiset: the halves are
/// carried by different conditional measures).
std::vector<Interval> folded_arc(double theta0, double r) {
    std::vector<Interval> out;
    for (const Interval& i : arc_thetas(theta0, r)) {
        if (i.hi > 0.0) out.push_back({std::max(i.lo, 0.0), i.hi});
        if (i.lo < 0.0) out.push_back({-std::min(i.hi, 0.0), -i.lo});
    }
    return out;
}

/// Angles (in (-pi, pi]) where the ray structure of the region changes.
std::vector<double> breakpoints(const std::vector<Disc>& discs, double rho_lo, double rho_hi) {
    std::vector<double> b{0.0, kPi, -kPi};
    for (std::size_t i = 0; i < discs.size(); ++i) {
        const Disc& d = discs[i];
        const double m = std::hypot(d.cx, d.cy);
        const double pc = std::atan2(d.cy, d.cx);
        if (m > d.r1) {
            const double t = std::asin(d.r1 / m);
            b.push_back(pc - t);
            b.push_back(pc + t);
        }
        for (double rho : {rho_lo, rho_hi}) {
            if (rho <= 0.0 || m == 0.0) continue;
            const double c = (rho * rho + m * m - d.r1 * d.r1) / (2.0 * rho * m);
            if (std::abs(c) < 1.0) {
                const double t = std::acos(c);
                b.push_back(pc - t);
                b.push_back(pc + t);
            }
        }
        for (std::size_t j = i + 1; j < discs.size(); ++j) {
            const Disc& e = discs[j];
            const double dx = e.cx - d.cx, dy = e.cy - d.cy;
            const double dist = std::hypot(dx, dy);
            if (dist == 0.0 || dist >= d.r1 + e.r1 || dist <= std::abs(d.r1 - e.r1)) continue;
            const double a = (d.r1 * d.r1 - e.r1 * e.r1 + dist * dist) / (2.0 * dist);
            const double h = std::sqrt(std::max(0.0, d.r1 * d.r1 - a * a));
            const double px = d.cx + a * dx / dist, py = d.cy + a * dy / dist;
            b.push_back(std::atan2(py + h * dx / dist, px - h * dy / dist));
            b.push_back(std::atan2(py - h * dx / dist, px + h * dy / dist));
        }
    }
    return b;
}

/// Radial interval of the ray at angle phi inside [rho_lo, rho_hi) and every disc.
Interval ray_interval(double phi, const std::vector<Disc>& discs, double rho_lo, double rho_hi) {
    Interval out{rho_lo, rho_hi};
    const double ux = std::cos(phi), uy = std::sin(phi);
    for (const Disc& d : discs) {
        const double proj = d.cx * ux + d.cy * uy;
        const double perp = std::abs(d.cx * uy - d.cy * ux);
        if (perp >= d.r1) return {0.0, 0.0};
        const double s = std::sqrt((d.r1 - perp) * (d.r1 + perp));
        out.lo = std::max(out.lo, proj - s);
        out.hi = std::min(out.hi, proj + s);
    }
    return out;
}

/// Integral over {rho e^{i phi} : phi in phis, rho in [rho_lo, rho_hi), inside all discs}
/// of density(rho, phi) dA.
double polar_mass(const std::function<double(double, double)>& density, const std::vector<Interval>& phis,
                  double rho_lo, double rho_hi, const std::vector<Disc>& discs) {
    static const QuadratureRule outer = gauss_legendre(32, 0.0, 1.0);
    static const QuadratureRule inner = gauss_legendre(20, 0.0, 1.0);
    std::vector<double> cuts;
    for (double b : breakpoints(discs, rho_lo, rho_hi)) {
        for (double s : {-2.0 * kPi, 0.0, 2.0 * kPi}) cuts.push_back(b + s);
    }
    double total = 0.0;
    for (const Interval& iv : phis) {
        std::vector<double> edges{iv.lo, iv.hi};
        for (double c : cuts) {
            if (c > iv.lo && c < iv.hi) edges.push_back(c);
        }
        std::sort(edges.begin(), edges.end());
        for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
            const double a = edges[e], b = edges[e + 1];
            if (b - a <= 0.0) continue;
            for (std::size_t k = 0; k < outer.nodes.size(); ++k) {
                // Cosine map clusters nodes at both ends (square-root edges).
                const double u = outer.nodes[k];
                const double phi = a + (b - a) * 0.5 * (1.0 - std::cos(kPi * u));
                const double jac = (b - a) * 0.5 * kPi * std::sin(kPi * u);
                const Interval ri = ray_interval(phi, discs, rho_lo, rho_hi);
                if (ri.hi <= ri.lo) continue;
                double radial = 0.0;
                for (std::size_t j = 0; j < inner.nodes.size(); ++j) {
                    const double rho = ri.lo + (ri.hi - ri.lo) * inner.nodes[j];
                    radial += inner.weights[j] * density(rho, phi) * rho;
                }
                total += outer.weights[k] * jac * radial * (ri.hi - ri.lo);
            }
        }
    }
    return total;
}

/// Probability weights of nu on a direction sample.
std::vector<double> nu_weights(const RotationalMeasure& m, const std::vector<UnitImaginary>& dirs) {
    std::vector<double> w(dirs.size(), 1.0);
    if (m.zonal_axis) {
        for (std::size_t i = 0; i < dirs.size(); ++i) w[i] = 1.0 + m.zonal_strength * dirs[i].dot(*m.zonal_axis);
    }
    double s = 0.0;
    for (double x : w) s += x;
    for (double& x : w) x /= s;
    return w;
}

double nu_density(const RotationalMeasure& m, const UnitImaginary& J) {
    return m.zonal_axis ? 1.0 + m.zonal_strength * J.dot(*m.zonal_axis) : 1.0;
}

/// Upper conditional density of a rotational measure in polar coordinates.
double rotational_planar(const RotationalMeasure& m, double rho, double phi) {
    const double y = rho * std::abs(std::sin(phi));
    return radial_density(m.radial, rho) * (m.y_power == 0.0 ? 1.0 : std::pow(y, m.y_power));
}

double pow_abs(const Quaternion& v, double p) { return std::pow(v.norm(), p); }

enum class Angles { Periodic, Halves, Upper };

/// Integral of |f(ρ e^{I θ})|^p w(ρ, θ) over the slice disc (or its upper half).
/// Periodic: w smooth in θ, trapezoid rule. Halves, Upper: w smooth on each half
/// plane only, adaptive Gauss-Legendre on [0, π] (and [π, 2π]).
double slice_disc_integral(const SliceFunction& f, double p, const UnitImaginary& I,
                           const std::function<double(double, double)>& weight, const MeasureOptions& opt,
                           Angles angles = Angles::Periodic) {
    const QuadratureRule radial = graded_radial(std::max<std::size_t>(6, opt.n_radial / 32), 20);
    std::vector<double> parts(radial.nodes.size());
    parallel_for(radial.nodes.size(), [&](std::size_t k) {
        const double rho = radial.nodes[k];
        const auto g = [&](double t) {
            const double w = weight(rho, t);
            return w == 0.0 ? 0.0 : w * pow_abs(f(I.embed(std::polar(rho, t))), p);
        };
        double ring = 0.0;
        if (angles == Angles::Periodic) {
            ring = periodic_trapezoid(g, opt.n_theta);
        } else {
            const std::size_t panels = std::max<std::size_t>(2, opt.n_theta / 64);
            ring = adaptive_gauss(g, 0.0, kPi, panels);
            if (angles == Angles::Halves) ring += adaptive_gauss(g, kPi, 2.0 * kPi, panels);
        }
        parts[k] = radial.weights[k] * rho * ring;
    });
    double total = 0.0;
    for (double v : parts) total += v;
    return total;
}

/// Angular rule for the planar density of a rotational measure over whole slices.
Angles rotational_angles(const RotationalMeasure& m) {
    const double half = m.y_power / 2.0;
    return half == std::floor(half) && m.y_power >= 0.0 ? Angles::Periodic : Angles::Halves;
}

/// Integral over the Euclidean disc (cx, cy, r1) ∩ {y >= 0} of weight(x, y) dA, disc-centred grid.
double disc_centred(const Disc& d, const std::function<double(double, double)>& weight, std::size_t n_s,
                    std::size_t n_t) {
    const QuadratureRule rs = gauss_legendre(n_s, 0.0, d.r1);
    double total = 0.0;
    for (std::size_t i = 0; i < rs.nodes.size(); ++i) {
        const double s = rs.nodes[i];
        double ring = 0.0;
        for (std::size_t j = 0; j < n_t; ++j) {
            const double t = 2.0 * kPi * (static_cast<double>(j) + 0.5) / static_cast<double>(n_t);
            const double x = d.cx + s * std::cos(t), y = d.cy + s * std::sin(t);
            if (y < 0.0) continue;
            ring += weight(x, y);
        }
        total += rs.weights[i] * s * ring * 2.0 * kPi / static_cast<double>(n_t);
    }
    return total;
}

void check_p(double p) {
    if (!(p > 0.0)) throw std::invalid_argument("integrate: p must be positive");
}

bool on_plane(const Quaternion& q, const UnitImaginary& axis) {
    try {
        slice_coordinate(q, axis);
        return true;
    } catch (const DifferentSlices&) {
        return false;
    }
}

/// eta-density of absolutely continuous measures.
double eta_density(const MeasureSpec& mu, const Quaternion& q) {
    return std::visit(
        Overloaded{
            [&](const RotationalMeasure& m) {
                const SlicePoint sp = axis_of(q);
                const double rho = q.norm();
                const double g = radial_density(m.radial, rho) * std::pow(sp.im, m.y_power - 2.0);
                const double nu = sp.axis ? nu_density(m, *sp.axis) : 1.0;
                return g * nu / kEtaPlanar;
            },
            [&](const TubeCounterexampleMeasure& m) {
                double h = 0.0;
                for (std::size_t k = 0; k < m.heights.size(); ++k) {
                    if (contains(Tube{m.center(k), m.r}, q)) h += m.densities[k];
                }
                return h;
            },
            [](const auto&) -> double { throw std::invalid_argument("eta_density: measure is singular"); }},
        mu);
}

double ball_mc(const MeasureSpec& mu, const PseudoBall& ball, const MeasureOptions& opt) {
    const TubeSampler sampler(ball.alpha, ball.r);
    constexpr std::size_t chunk = 1 << 14;
    const std::size_t n = opt.mc_samples;
    const std::size_t chunks = (n + chunk - 1) / chunk;
    std::vector<double> sums(chunks, 0.0);
    parallel_for(chunks, [&](std::size_t c) {
        Rng rng = make_rng(opt.seed, c);
        const std::size_t m = std::min(chunk, n - c * chunk);
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const Quaternion q = sampler(rng);
            if (rho(q, ball.alpha) < ball.r) s += eta_density(mu, q);
        }
        sums[c] = s;
    });
    double total = 0.0;
    for (double s : sums) total += s;
    return sampler.volume() * total / static_cast<double>(n);
}

/// Slice Lebesgue mass of B(alpha, r) ∩ C_A for alpha off the plane.
double slice_ball_mc(const SliceLebesgueMeasure& m, const PseudoBall& ball, const MeasureOptions& opt) {
    const Disc d = euclid_disc(slice_complex(ball.alpha), ball.r);
    const std::vector<Disc> parts = d.cy == 0.0 ? std::vector<Disc>{d} : std::vector<Disc>{d, {d.cx, -d.cy, d.r1}};
    Rng rng = make_rng(opt.seed, 0);
    double total = 0.0;
    for (const Disc& e : parts) {
        double s = 0.0;
        for (std::size_t k = 0; k < opt.mc_samples; ++k) {
            const std::complex<double> z = std::complex<double>(e.cx, e.cy) + random_in_disc(rng, e.r1);
            if (std::norm(z) >= 1.0) continue;
            if (rho(m.axis.embed(z), ball.alpha) >= ball.r) continue;
            std::size_t cover = 0;
            for (const Disc& o : parts) {
                if (std::norm(z - std::complex<double>(o.cx, o.cy)) < o.r1 * o.r1) ++cover;
            }
            s += radial_density(m.radial, std::abs(z)) / static_cast<double>(std::max<std::size_t>(cover, 1));
        }
        total += kPi * e.r1 * e.r1 * s / static_cast<double>(opt.mc_samples);
    }
    return total;
}

}  // namespace

std::string measure_kind(const MeasureSpec& mu) {
    return std::visit(Overloaded{[](const AtomicMeasure&) { return std::string("atomic"); },
                                 [](const SliceLebesgueMeasure&) { return std::string("slice_lebesgue"); },
                                 [](const RotationalMeasure&) { return std::string("rotational"); },
                                 [](const TubeCounterexampleMeasure&) { return std::string("tube_counterexample"); }},
                      mu);
}

double total_mass(const MeasureSpec& mu) {
    const std::vector<Interval> full{{-kPi, kPi}};
    const std::vector<Interval> upper{{0.0, kPi}};
    return std::visit(
        Overloaded{[](const AtomicMeasure& m) {
                       double s = 0.0;
                       for (const auto& a : m.atoms) s += a.second;
                       return s;
                   },
                   [&](const SliceLebesgueMeasure& m) {
                       return polar_mass([&](double r, double) { return radial_density(m.radial, r); }, full, 0.0,
                                         1.0, {});
                   },
                   [&](const RotationalMeasure& m) {
                       return polar_mass([&](double r, double t) { return rotational_planar(m, r, t); }, upper, 0.0,
                                         1.0, {});
                   },
                   [](const TubeCounterexampleMeasure& m) {
                       double s = 0.0;
                       for (std::size_t k = 0; k < m.heights.size(); ++k) s += std::pow(m.d(k), 4.0 - m.eps);
                       return s;
                   }},
        mu);
}

double real_mass(const MeasureSpec& mu) {
    if (const auto* m = std::get_if<AtomicMeasure>(&mu)) {
        double s = 0.0;
        for (const auto& a : m->atoms) {
            if (a.first.imag_norm() < kRealTolerance) s += a.second;
        }
        return s;
    }
    return 0.0;
}

double integrate(const SliceFunction& f, double p, const MeasureSpec& mu, const MeasureOptions& opt) {
    check_p(p);
    return std::visit(
        Overloaded{
            [&](const AtomicMeasure& m) {
                double s = 0.0;
                for (const auto& [q, w] : m.atoms) s += w * pow_abs(f(q), p);
                return s;
            },
            [&](const SliceLebesgueMeasure& m) {
                return slice_disc_integral(
                    f, p, m.axis, [&](double r, double) { return radial_density(m.radial, r); }, opt);
            },
            [&](const RotationalMeasure& m) {
                const auto dirs = sphere_sample(opt.n_sphere + opt.n_sphere % 2);
                const auto w = nu_weights(m, dirs);
                double total = 0.0;
                if (!m.zonal_axis || m.zonal_strength == 0.0) {
                    // nu-symmetric: pairing J with -J turns upper halves into full slices.
                    for (std::size_t i = 0; i < dirs.size(); ++i) {
                        total += w[i] * 0.5 *
                                 slice_disc_integral(
                                     f, p, dirs[i], [&](double r, double t) { return rotational_planar(m, r, t); },
                                     opt, rotational_angles(m));
                    }
                    return total;
                }
                for (std::size_t i = 0; i < dirs.size(); ++i) {
                    total += w[i] * slice_disc_integral(
                                        f, p, dirs[i], [&](double r, double t) { return rotational_planar(m, r, t); },
                                        opt, Angles::Upper);
                }
                return total;
            },
            [&](const TubeCounterexampleMeasure& m) {
                const auto dirs = sphere_sample(opt.n_sphere + opt.n_sphere % 2);
                std::vector<double> per(m.heights.size(), 0.0);
                parallel_for(m.heights.size(), [&](std::size_t k) {
                    const Disc d = euclid_disc({0.0, m.heights[k]}, m.r);
                    double s = 0.0;
                    for (const UnitImaginary& J : dirs) {
                        s += disc_centred(
                            d, [&](double x, double y) { return y * y * pow_abs(f(J.embed(x, y)), p); }, 24, 128);
                    }
                    per[k] = m.densities[k] * kEtaPlanar * s / static_cast<double>(dirs.size());
                });
                double total = 0.0;
                for (double v : per) total += v;
                return total;
            }},
        mu);
}

double slice_integrate(const SliceFunction& f, double p, const MeasureSpec& mu, const UnitImaginary& I,
                       const MeasureOptions& opt) {
    check_p(p);
    return std::visit(
        Overloaded{
            [&](const AtomicMeasure& m) {
                double s = 0.0;
                for (const auto& [q, w] : m.atoms) {
                    if (on_plane(q, I)) s += w * pow_abs(f(q), p);
                }
                return s;
            },
            [&](const SliceLebesgueMeasure& m) {
                if (std::abs(std::abs(m.axis.dot(I)) - 1.0) > 1e-12) return 0.0;
                return integrate(f, p, mu, opt);
            },
            [&](const RotationalMeasure& m) {
                return slice_disc_integral(
                    f, p, I, [&](double r, double t) { return rotational_planar(m, r, t); }, opt,
                    rotational_angles(m));
            },
            [&](const TubeCounterexampleMeasure& m) {
                double total = 0.0;
                for (std::size_t k = 0; k < m.heights.size(); ++k) {
                    const Disc d = euclid_disc({0.0, m.heights[k]}, m.r);
                    for (const UnitImaginary& J : {I, -I}) {
                        total += m.densities[k] * kEtaPlanar *
                                 disc_centred(
                                     d, [&](double x, double y) { return y * y * pow_abs(f(J.embed(x, y)), p); }, 24,
                                     128);
                    }
                }
                return total;
            }},
        mu);
}

MonteCarloValue integrate_mc(const SliceFunction& f, double p, const MeasureSpec& mu, std::size_t n,
                             std::uint64_t seed) {
    check_p(p);
    MonteCarloValue out;
    auto accumulate = [&](const std::function<Quaternion(Rng&)>& draw, double volume, std::uint64_t stream) {
        Rng rng = make_rng(seed, stream);
        double s = 0.0, s2 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const Quaternion q = draw(rng);
            const double v = pow_abs(f(q), p) * eta_density(mu, q);
            s += v;
            s2 += v * v;
        }
        const double mean = s / static_cast<double>(n);
        const double var = std::max(0.0, s2 / static_cast<double>(n) - mean * mean);
        out.value += volume * mean;
        out.sigma = std::hypot(out.sigma, volume * std::sqrt(var / static_cast<double>(n)));
    };
    if (const auto* m = std::get_if<TubeCounterexampleMeasure>(&mu)) {
        for (std::size_t k = 0; k < m->heights.size(); ++k) {
            const TubeSampler sampler(m->center(k), m->r);
            accumulate([&](Rng& rng) { return sampler(rng); }, sampler.volume(), k);
        }
        return out;
    }
    if (!std::holds_alternative<RotationalMeasure>(mu)) {
        throw std::invalid_argument("integrate_mc: measure has no eta-density");
    }
    accumulate([](Rng& rng) { return random_in_ball(rng); }, 1.0, 0);
    return out;
}

double slice_box_measure(const MeasureSpec& mu, const CarlesonBox& box) {
    return std::visit(
        Overloaded{
            [&](const AtomicMeasure& m) {
                double s = 0.0;
                for (const auto& [q, w] : m.atoms) {
                    if (contains(box, q)) s += w;
                }
                return s;
            },
            [&](const SliceLebesgueMeasure& m) {
                const double c = m.axis.dot(box.axis);
                if (std::abs(std::abs(c) - 1.0) > 1e-12) return 0.0;
                // Box angles in the measure's own coordinates (reflected for -axis).
                const double t0 = c > 0.0 ? box.theta0 : -box.theta0;
                return polar_mass([&](double r, double) { return radial_density(m.radial, r); },
                                  [&] {
                                      std::vector<Interval> v;
                                      for (const Interval& i : arc_thetas(t0, box.r)) v.push_back({i.lo, i.hi});
                                      return v;
                                  }(),
                                  box.r, 1.0, {});
            },
            [&](const RotationalMeasure& m) {
                return polar_mass([&](double r, double t) { return rotational_planar(m, r, t); },
                                  folded_arc(box.theta0, box.r), box.r, 1.0, {});
            },
            [&](const TubeCounterexampleMeasure& m) {
                double total = 0.0;
                const auto phis = folded_arc(box.theta0, box.r);
                for (std::size_t k = 0; k < m.heights.size(); ++k) {
                    const Disc d = euclid_disc({0.0, m.heights[k]}, m.r);
                    total += m.densities[k] * kEtaPlanar *
                             polar_mass(
                                 [](double r, double t) {
                                     const double y = r * std::sin(t);
                                     return y * y;
                                 },
                                 phis, box.r, 1.0, {d});
                }
                return total;
            }},
        mu);
}

double region_measure(const MeasureSpec& mu, const Region& region, const MeasureOptions& opt) {
    if (const auto* m = std::get_if<AtomicMeasure>(&mu)) {
        double s = 0.0;
        for (const auto& [q, w] : m->atoms) {
            if (contains(region, q)) s += w;
        }
        return s;
    }
    if (const auto* box = std::get_if<CarlesonBox>(&region)) {
        if (std::holds_alternative<SliceLebesgueMeasure>(mu)) return slice_box_measure(mu, *box);
        return 0.0;
    }
    const std::vector<Interval> full{{-kPi, kPi}};
    const std::vector<Interval> upper{{0.0, kPi}};
    auto eta_planar = [](double r, double t) {
        const double y = r * std::sin(t);
        return kEtaPlanar * y * y;
    };
    return std::visit(
        Overloaded{
            [&](const SliceDisc& s) -> double {
                const auto* m = std::get_if<SliceLebesgueMeasure>(&mu);
                if (m == nullptr) return 0.0;
                const double c = m->axis.dot(s.axis);
                if (std::abs(std::abs(c) - 1.0) > 1e-12) return 0.0;
                std::complex<double> a = slice_coordinate(s.alpha, m->axis);
                return polar_mass([&](double r, double) { return radial_density(m->radial, r); }, full, 0.0, 1.0,
                                  {euclid_disc(a, s.r)});
            },
            [&](const Tube& t) -> double {
                const Disc d = euclid_disc(slice_complex(t.alpha), t.r);
                if (const auto* m = std::get_if<SliceLebesgueMeasure>(&mu)) {
                    auto g = [&](double r, double) { return radial_density(m->radial, r); };
                    const Disc dbar{d.cx, -d.cy, d.r1};
                    if (d.cy == 0.0) return polar_mass(g, full, 0.0, 1.0, {d});
                    return 2.0 * polar_mass(g, full, 0.0, 1.0, {d}) - polar_mass(g, full, 0.0, 1.0, {d, dbar});
                }
                if (const auto* m = std::get_if<RotationalMeasure>(&mu)) {
                    return polar_mass([&](double r, double th) { return rotational_planar(*m, r, th); }, upper, 0.0,
                                      1.0, {d});
                }
                const auto& m = std::get<TubeCounterexampleMeasure>(mu);
                double total = 0.0;
                for (std::size_t k = 0; k < m.heights.size(); ++k) {
                    const Disc dk = euclid_disc({0.0, m.heights[k]}, m.r);
                    total += m.densities[k] * polar_mass(eta_planar, upper, 0.0, 1.0, {d, dk});
                }
                return total;
            },
            [&](const PseudoBall& b) -> double {
                if (const auto* m = std::get_if<SliceLebesgueMeasure>(&mu)) {
                    if (on_plane(b.alpha, m->axis)) {
                        // On its own slice the ball is the slice disc.
                        const std::complex<double> a = slice_coordinate(b.alpha, m->axis);
                        return polar_mass([&](double r, double) { return radial_density(m->radial, r); }, full, 0.0,
                                          1.0, {euclid_disc(a, b.r)});
                    }
                    return slice_ball_mc(*m, b, opt);
                }
                return ball_mc(mu, b, opt);
            },
            [&](const CarlesonBox&) -> double { return 0.0; },
            [&](const SymmetricBox& s) -> double {
                const auto phis = symmetric_phis(s.theta0, s.r);
                if (const auto* m = std::get_if<SliceLebesgueMeasure>(&mu)) {
                    std::vector<Interval> both = phis;
                    for (const Interval& i : phis) both.push_back({-i.hi, -i.lo});
                    return polar_mass([&](double r, double) { return radial_density(m->radial, r); }, merge(both),
                                      s.r, 1.0, {});
                }
                if (const auto* m = std::get_if<RotationalMeasure>(&mu)) {
                    return polar_mass([&](double r, double t) { return rotational_planar(*m, r, t); }, phis, s.r,
                                      1.0, {});
                }
                const auto& m = std::get<TubeCounterexampleMeasure>(mu);
                double total = 0.0;
                for (std::size_t k = 0; k < m.heights.size(); ++k) {
                    const Disc dk = euclid_disc({0.0, m.heights[k]}, m.r);
                    total += m.densities[k] * polar_mass(eta_planar, phis, s.r, 1.0, {dk});
                }
                return total;
            }},
        region);
}

TubeCounterexampleMeasure build_counterexample(double r, double eps, std::size_t tubes, const UnitImaginary& axis) {
    if (!(r > 0.0 && r < 1.0) || !(eps > 0.0 && eps < 4.0) || tubes < 1) {
        throw std::invalid_argument("build_counterexample: need r in (0,1), eps in (0,4), tubes >= 1");
    }
    TubeCounterexampleMeasure m;
    m.r = r;
    m.eps = eps;
    m.axis = axis;
    const double step = 4.0 * r / (1.0 + 4.0 * r * r);
    double y = 0.5;
    for (std::size_t k = 0; k < tubes; ++k) {
        if (k > 0) y = (y + step) / (1.0 + y * step);
        if (y > 1.0 - 1e-12) {
            throw GridExhausted("build_counterexample: tubes do not fit below 1 - 1e-12");
        }
        m.heights.push_back(y);
        const double vol = tube_volume(axis.embed(0.0, y), r);
        m.densities.push_back(std::pow(1.0 - y, 4.0 - eps) / vol);
    }
    return m;
}

SubmeanReport submean_check(const SliceFunction& f, double p, std::complex<double> alpha, double r,
                            const UnitImaginary& J, std::size_t samples, std::uint64_t seed) {
    check_p(p);
    const double R = 0.5 * (1.0 + r);
    const Disc small = euclid_disc(alpha, r);
    const Disc big = euclid_disc(alpha, R);
    const double area = disc_area(std::abs(alpha), R);
    const QuadratureRule rs = gauss_legendre(48, 0.0, big.r1);
    double integral = 0.0;
    for (std::size_t i = 0; i < rs.nodes.size(); ++i) {
        const double s = rs.nodes[i];
        integral += rs.weights[i] * s * periodic_trapezoid(
                                            [&](double t) {
                                                return pow_abs(f(J.embed(big.cx + s * std::cos(t),
                                                                         big.cy + s * std::sin(t))),
                                                               p);
                                            },
                                            64, 1e-9, 1 << 14);
    }
    const double rhs = 4.0 * std::pow(1.0 - R, -4.0) / area * integral;
    SubmeanReport out;
    Rng rng = make_rng(seed, 0);
    for (std::size_t k = 0; k < samples; ++k) {
        const std::complex<double> z = std::complex<double>(small.cx, small.cy) + random_in_disc(rng, small.r1);
        const double ratio = pow_abs(f(J.embed(z)), p) / rhs;
        out.max_ratio = std::max(out.max_ratio, ratio);
    }
    out.holds = out.max_ratio <= 1.0;
    return out;
}

InequalityReport representation_inequality(double p, std::size_t n, std::uint64_t seed) {
    check_p(p);
    InequalityReport out;
    Rng rng = make_rng(seed, 0);
    for (std::size_t k = 0; k < n; ++k) {
        const Quaternion A = random_quaternion(rng), B = random_quaternion(rng);
        const Quaternion IJ = random_unit_imaginary(rng).as_quaternion() * random_unit_imaginary(rng).as_quaternion();
        const Quaternion v = (kOne - IJ) * A * 0.5 + (kOne + IJ) * B * 0.5;
        const double lhs = std::pow(v.norm(), p);
        const double sum = std::pow(A.norm(), p) + std::pow(B.norm(), p);
        const double rhs = p >= 1.0 ? std::pow(2.0, p - 1.0) * sum : sum;
        const double ratio = lhs / rhs;
        out.max_ratio = std::max(out.max_ratio, ratio);
        if (lhs > rhs * (1.0 + 1e-12)) ++out.violations;
    }
    return out;
}

}  // namespace sqc

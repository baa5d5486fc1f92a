#include "sqc/geometry.hpp"

#include "sqc/errors.hpp"
#include "sqc/kernels.hpp"
#include "sqc/parallel.hpp"
#include "sqc/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace sqc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kChunk = 1 << 15;

double wrapped_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a > kPi) a -= 2.0 * kPi;
    if (a < -kPi) a += 2.0 * kPi;
    return a;
}

struct SectionDisc {
    double cx, cy, r1;
};

SectionDisc section_disc(const Quaternion& alpha, double r) {
    if (!(alpha.norm() < 1.0) || !(r > 0.0 && r < 1.0)) {
        throw std::invalid_argument("slice disc: need |alpha| < 1 and 0 < r < 1");
    }
    const std::complex<double> a = slice_complex(alpha);
    const double m2 = std::norm(a);
    const double s = (1.0 - r * r) / (1.0 - r * r * m2);
    return {s * a.real(), s * a.imag(), r * (1.0 - m2) / (1.0 - r * r * m2)};
}

}  // namespace

double rho_complex(std::complex<double> z, std::complex<double> a) {
    return std::abs(z - a) / std::abs(1.0 - z * std::conj(a));
}

double rho_slice(const Quaternion& z, const Quaternion& alpha) {
    if (!same_slice(z, alpha)) {
        throw DifferentSlices("rho_slice: points lie on different slices");
    }
    const SlicePoint pa = axis_of(alpha);
    const SlicePoint pz = axis_of(z);
    const UnitImaginary axis = pa.axis ? *pa.axis : (pz.axis ? *pz.axis : UnitImaginary::i());
    return rho_complex(slice_coordinate(z, axis), slice_coordinate(alpha, axis));
}

double rho(const Quaternion& q, const Quaternion& alpha) {
    const Quaternion num = -alpha + q * (kOne + alpha * alpha) - q * q * alpha;
    return num.norm() / kernel_denominator(q, alpha).norm();
}

std::complex<double> slice_complex(const Quaternion& alpha) { return {alpha.w, alpha.imag_norm()}; }

double disc_area(double m, double r) {
    const double m2 = m * m;
    const double t = (1.0 - m2) / (1.0 - r * r * m2);
    return kPi * r * r * t * t;
}

GeometrySummary disc_geometry(const Quaternion& alpha, double r) {
    const SectionDisc s = section_disc(alpha, r);
    const double m = alpha.norm();
    GeometrySummary g;
    g.d = 1.0 - m;
    g.euclidean_radius = s.r1;
    g.euclidean_center = alpha * ((1.0 - r * r) / (1.0 - r * r * m * m));
    g.area = disc_area(m, r);
    return g;
}

std::string region_kind(const Region& region) {
    struct Name {
        std::string operator()(const SliceDisc&) const { return "slice_disc"; }
        std::string operator()(const Tube&) const { return "tube"; }
        std::string operator()(const PseudoBall&) const { return "ball"; }
        std::string operator()(const CarlesonBox&) const { return "carleson_box"; }
        std::string operator()(const SymmetricBox&) const { return "symmetric_box"; }
    };
    return std::visit(Name{}, region);
}

bool contains(const Region& region, const Quaternion& q) {
    if (q.norm2() >= 1.0) return false;
    struct Member {
        const Quaternion& q;
        bool operator()(const SliceDisc& s) const {
            const Quaternion a = s.alpha;
            std::complex<double> za;
            try {
                za = slice_coordinate(a, s.axis);
            } catch (const DifferentSlices&) {
                return false;
            }
            std::complex<double> zq;
            try {
                zq = slice_coordinate(q, s.axis);
            } catch (const DifferentSlices&) {
                return false;
            }
            return rho_complex(zq, za) < s.r;
        }
        bool operator()(const Tube& t) const {
            const std::complex<double> a = slice_complex(t.alpha);
            const std::complex<double> z{q.w, q.imag_norm()};
            return rho_complex(z, a) < t.r || rho_complex(std::conj(z), a) < t.r;
        }
        bool operator()(const PseudoBall& b) const { return rho(q, b.alpha) < b.r; }
        bool operator()(const CarlesonBox& c) const {
            std::complex<double> z;
            try {
                z = slice_coordinate(q, c.axis);
            } catch (const DifferentSlices&) {
                return false;
            }
            const double m = std::abs(z);
            if (m < c.r || m >= 1.0) return false;
            return std::abs(wrapped_angle(std::arg(z) - c.theta0)) <= 1.0 - c.r;
        }
        bool operator()(const SymmetricBox& s) const {
            const double m = q.norm();
            if (m < s.r || m >= 1.0) return false;
            const double phi = std::acos(std::clamp(q.w / m, -1.0, 1.0));
            const double gap = std::min({std::abs(phi - s.theta0), std::abs(phi + s.theta0 - 2.0 * kPi),
                                         phi + s.theta0});
            return gap <= 1.0 - s.r;
        }
    };
    return std::visit(Member{q}, region);
}

double tube_volume(const Quaternion& alpha, double r) {
    // Upper half section U = {(x, |y|) : (x, y) in D}; since the centre has
    // cy >= 0 the mirrored lower cap lies inside D ∩ {y >= 0}.
    const SectionDisc s = section_disc(alpha, r);
    auto slice = [&](double t) {
        const double h = s.r1 * std::cos(t);
        const double hi = s.cy + h;
        const double lo = std::max(0.0, s.cy - h);
        return h * (hi * hi * hi - lo * lo * lo) / 3.0;
    };
    std::vector<double> edges{-kPi / 2.0, kPi / 2.0};
    if (s.cy < s.r1) {
        const double tk = std::acos(s.cy / s.r1);
        edges = {-kPi / 2.0, -tk, tk, kPi / 2.0};
    }
    double integral = 0.0;
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        const QuadratureRule rule = gauss_legendre(48, edges[e], edges[e + 1]);
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            integral += rule.weights[k] * slice(rule.nodes[k]);
        }
    }
    // eta = (2 / pi^2) * 4 pi * integral of y^2 dx dy.
    return 8.0 / kPi * integral;
}

TubeSampler::TubeSampler(const Quaternion& alpha, double r) {
    const SectionDisc s = section_disc(alpha, r);
    cx_ = s.cx;
    cy_ = s.cy;
    r1_ = s.r1;
    volume_ = tube_volume(alpha, r);
}

Quaternion TubeSampler::operator()(Rng& rng) const {
    const double ymax = cy_ + r1_;
    const double ymin = std::max(0.0, cy_ - r1_);
    for (;;) {
        const double x = uniform(rng, cx_ - r1_, cx_ + r1_);
        const double y = uniform(rng, ymin, ymax);
        const double dx = x - cx_, dy = y - cy_;
        if (dx * dx + dy * dy >= r1_ * r1_) continue;
        const double w = y / ymax;
        if (uniform01(rng) >= w * w) continue;
        return random_unit_imaginary(rng).embed(x, y);
    }
}

VolumeEstimate ball_volume_mc(const Quaternion& alpha, double r, std::size_t n, std::uint64_t seed) {
    const TubeSampler sampler(alpha, r);
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<std::size_t> hits(chunks, 0);
    parallel_for(chunks, [&](std::size_t c) {
        Rng rng = make_rng(seed, c);
        const std::size_t m = std::min(kChunk, n - c * kChunk);
        std::size_t h = 0;
        for (std::size_t k = 0; k < m; ++k) {
            if (rho(sampler(rng), alpha) < r) ++h;
        }
        hits[c] = h;
    });
    VolumeEstimate v;
    v.samples = n;
    for (std::size_t h : hits) v.hits += h;
    const double p = static_cast<double>(v.hits) / static_cast<double>(n);
    v.tube_volume = sampler.volume();
    v.value = v.tube_volume * p;
    v.sigma = v.tube_volume * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return v;
}

std::vector<Quaternion> sample_ball(const Quaternion& alpha, double r, std::size_t n, std::uint64_t seed) {
    const TubeSampler sampler(alpha, r);
    Rng rng = make_rng(seed, 0);
    std::vector<Quaternion> out;
    out.reserve(n);
    while (out.size() < n) {
        const Quaternion q = sampler(rng);
        if (rho(q, alpha) < r) out.push_back(q);
    }
    return out;
}

DistanceSandwich distance_sandwich_check(const Quaternion& alpha, double r, std::size_t n, std::uint64_t seed) {
    const double d = boundary_distance(alpha);
    DistanceSandwich out;
    out.min_ratio = std::numeric_limits<double>::infinity();
    out.max_ratio = 0.0;
    for (const Quaternion& q : sample_ball(alpha, r, n, seed)) {
        const double ratio = (1.0 - q.norm()) / d;
        out.min_ratio = std::min(out.min_ratio, ratio);
        out.max_ratio = std::max(out.max_ratio, ratio);
    }
    out.c1 = std::max((1.0 - r) / out.min_ratio, out.max_ratio * (1.0 - r));
    return out;
}

SphereSection sphere_section(const Quaternion& alpha, double r, std::size_t n, std::uint64_t seed) {
    SphereSection out;
    Rng rng = make_rng(seed, 0);
    const double b = alpha.imag_norm();
    for (std::size_t k = 0; k < n; ++k) {
        const Quaternion q = random_unit_imaginary(rng).embed(alpha.w, b);
        if (rho(q, alpha) < r) out.max_distance2 = std::max(out.max_distance2, (q - alpha).norm2());
    }
    const GeometrySummary g = disc_geometry(alpha, r);
    const double bc = g.euclidean_center.imag_norm();
    std::size_t inside = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const Quaternion q = random_unit_imaginary(rng).embed(g.euclidean_center.w, bc);
        if (rho(q, alpha) < r) ++inside;
    }
    out.gamma_area = 4.0 * kPi * bc * bc * static_cast<double>(inside) / static_cast<double>(n);
    return out;
}

TubeCover cover_tube(const Quaternion& alpha, double r, std::size_t max_centers) {
    TubeCover cover;
    const SlicePoint p = axis_of(alpha);
    if (p.is_real() || rho(Quaternion{alpha.w}, alpha) < r) {
        // The tube is within B(alpha, 4r) already when it meets the real axis.
        cover.single_ball = true;
        cover.centers = {alpha};
        return cover;
    }
    const double d = boundary_distance(alpha);
    const double delta = std::sqrt(r * std::pow(d, 4) / (1.0 - r));
    const double n_real = std::ceil(std::pow(kFibonacciCover / delta, 2));
    if (n_real > static_cast<double>(max_centers)) {
        throw GridExhausted("cover_tube: net needs more than max_centers points");
    }
    std::size_t n = static_cast<std::size_t>(n_real);
    n += n % 2;
    cover.net_radius = delta;
    for (const UnitImaginary& J : rotate_to(sphere_sample(n), *p.axis)) {
        cover.centers.push_back(J.embed(p.re, p.im));
    }
    return cover;
}

double cover_fraction(const Quaternion& alpha, double r, const TubeCover& cover, std::size_t n,
                      std::uint64_t seed) {
    const TubeSampler sampler(alpha, r);
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<std::size_t> covered(chunks, 0);
    parallel_for(chunks, [&](std::size_t c) {
        Rng rng = make_rng(seed, c);
        const std::size_t m = std::min(kChunk, n - c * kChunk);
        std::size_t h = 0;
        for (std::size_t k = 0; k < m; ++k) {
            const Quaternion q = sampler(rng);
            for (const Quaternion& center : cover.centers) {
                if (rho(q, center) < 4.0 * r) {
                    ++h;
                    break;
                }
            }
        }
        covered[c] = h;
    });
    std::size_t total = 0;
    for (std::size_t h : covered) total += h;
    return static_cast<double>(total) / static_cast<double>(n);
}

std::vector<Quaternion> pack_tube(double y, double r, const UnitImaginary& axis, std::size_t candidates) {
    std::vector<Quaternion> pool;
    for (const UnitImaginary& J : rotate_to(sphere_sample(candidates), axis)) {
        pool.push_back(J.embed(0.0, y));
    }
    std::vector<Quaternion> centers{axis.embed(0.0, y)};
    std::vector<double> gap(pool.size());
    for (std::size_t c = 0; c < pool.size(); ++c) gap[c] = rho(pool[c], centers.front());
    for (;;) {
        const auto it = std::max_element(gap.begin(), gap.end());
        if (it == gap.end() || *it < 2.0 * r) break;
        const Quaternion next = pool[static_cast<std::size_t>(it - gap.begin())];
        centers.push_back(next);
        for (std::size_t c = 0; c < pool.size(); ++c) gap[c] = std::min(gap[c], rho(pool[c], next));
    }
    return centers;
}

std::size_t packing_overlaps(const std::vector<Quaternion>& centers, double r, std::size_t n, std::uint64_t seed) {
    if (centers.empty()) return 0;
    const TubeSampler sampler(centers.front(), r);
    Rng rng = make_rng(seed, 0);
    std::size_t overlaps = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const Quaternion q = sampler(rng);
        std::size_t inside = 0;
        for (const Quaternion& c : centers) {
            if (rho(q, c) < r && ++inside > 1) break;
        }
        if (inside > 1) ++overlaps;
    }
    return overlaps;
}

std::vector<Quaternion> disc_lattice(const UnitImaginary& axis, double r, double r_max) {
    std::vector<Quaternion> centers{Quaternion{}};
    const double step = r / 2.0;
    double s = 0.0;
    while (s < r_max) {
        s = (s + step) / (1.0 + s * step);
        // Angular spacing so that neighbouring centres are within rho <= r/2.
        const double chord_limit = step * (1.0 - s * s);
        const double dtheta = 2.0 * std::asin(std::min(1.0, chord_limit / (2.0 * s)));
        const std::size_t count = static_cast<std::size_t>(std::ceil(2.0 * kPi / dtheta));
        for (std::size_t k = 0; k < count; ++k) {
            centers.push_back(axis.embed(std::polar(s, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(count))));
        }
    }
    return centers;
}

LatticeReport lattice_check(const UnitImaginary& axis, const std::vector<Quaternion>& centers, double r,
                            double r_max, std::size_t n, std::uint64_t seed) {
    std::vector<std::complex<double>> zs;
    zs.reserve(centers.size());
    for (const Quaternion& c : centers) zs.push_back(slice_coordinate(c, axis));
    const double big = (1.0 + r) / 2.0;
    const std::size_t chunks = (n + 1023) / 1024;
    std::vector<LatticeReport> parts(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        Rng rng = make_rng(seed, c);
        const std::size_t m = std::min<std::size_t>(1024, n - c * 1024);
        for (std::size_t k = 0; k < m; ++k) {
            const std::complex<double> z = random_in_disc(rng, r_max);
            bool covered = false;
            std::size_t count = 0;
            for (const auto& a : zs) {
                const double d = rho_complex(z, a);
                if (d < r) covered = true;
                if (d < big) ++count;
            }
            if (!covered) ++parts[c].uncovered;
            parts[c].n0 = std::max(parts[c].n0, count);
        }
    });
    LatticeReport out;
    for (const auto& p : parts) {
        out.uncovered += p.uncovered;
        out.n0 = std::max(out.n0, p.n0);
    }
    return out;
}

}  // namespace sqc

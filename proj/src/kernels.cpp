#include "sqc/kernels.hpp"

#include "sqc/errors.hpp"
#include "sqc/parallel.hpp"
#include "sqc/quadrature.hpp"
#include "sqc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sqc {

namespace {

Quaternion checked_inverse(const Quaternion& d) {
    const double n2 = d.norm2();
    if (!(n2 > 1e-300)) {
        throw std::domain_error("kernel denominator vanishes");
    }
    return conj(d) / n2;
}

void require_in_ball(const Quaternion& w, const char* what) {
    if (!(w.norm() < 1.0)) {
        throw std::invalid_argument(std::string(what) + ": parameter must satisfy |w| < 1");
    }
}

}  // namespace

Quaternion kernel_denominator(const Quaternion& q, const Quaternion& w) {
    return kOne - q * (2.0 * w.w) + (q * q) * w.norm2();
}

Quaternion hardy_kernel(const Quaternion& q, const Quaternion& w) {
    return checked_inverse(kernel_denominator(q, w)) * (kOne - q * w);
}

Quaternion bergman_kernel(const Quaternion& q, const Quaternion& w, BergmanForm form) {
    if (form == BergmanForm::Regular) {
        const Quaternion inv = checked_inverse(kernel_denominator(q, w));
        const Quaternion q2 = q * q;
        return (inv * inv) * (kOne - (q * w) * 2.0 + q2 * (w * w));
    }
    const Quaternion qb = conj(q), wb = conj(w);
    const Quaternion num = kOne - (qb * wb) * 2.0 + (qb * qb) * (wb * wb);
    const Quaternion inv = checked_inverse(kernel_denominator(qb, w));
    return num * (inv * inv);
}

Quaternion averaged_K(const Quaternion& q, const Quaternion& w) {
    return (hardy_kernel(q, w) + hardy_kernel(q, conj(w))) * 0.5;
}

Quaternion averaged_H(const Quaternion& q, const Quaternion& w, BergmanForm form) {
    return (bergman_kernel(q, w, form) + bergman_kernel(q, conj(w), form)) * 0.5;
}

std::string to_string(KernelKind kind) {
    switch (kind) {
        case KernelKind::HardyK: return "k";
        case KernelKind::BergmanH: return "h";
        case KernelKind::AveragedK: return "K";
        case KernelKind::AveragedH: return "H";
    }
    return "?";
}

KernelKind kernel_kind_from_string(const std::string& name) {
    if (name == "k") return KernelKind::HardyK;
    if (name == "h") return KernelKind::BergmanH;
    if (name == "K") return KernelKind::AveragedK;
    if (name == "H") return KernelKind::AveragedH;
    throw std::invalid_argument("unknown kernel '" + name + "' (expected k, h, K or H)");
}

KernelSpec::KernelSpec(KernelKind kind_, const Quaternion& w_, double power_) : kind(kind_), w(w_), power(power_) {
    require_in_ball(w, "KernelSpec");
    if (!(power > 0.0)) {
        throw std::invalid_argument("KernelSpec: power must be positive");
    }
}

Quaternion KernelSpec::operator()(const Quaternion& q) const {
    Quaternion v;
    switch (kind) {
        case KernelKind::HardyK: v = hardy_kernel(q, w); break;
        case KernelKind::BergmanH: v = bergman_kernel(q, w); break;
        case KernelKind::AveragedK: v = averaged_K(q, w); break;
        case KernelKind::AveragedH: v = averaged_H(q, w); break;
    }
    return power == 1.0 ? v : sqc::power(v, power);
}

SliceFunction KernelSpec::function() const {
    return [spec = *this](const Quaternion& q) { return spec(q); };
}

SliceSeries hardy_kernel_series(const Quaternion& w, std::size_t n) {
    std::vector<Quaternion> c(n + 1);
    const Quaternion wb = conj(w);
    c[0] = kOne;
    for (std::size_t m = 1; m <= n; ++m) {
        c[m] = c[m - 1] * wb;
    }
    return SliceSeries(std::move(c), 1.0);
}

SphereAverageReport sphere_average_check(KernelKind kind, const Quaternion& w, std::size_t n_sphere,
                                         std::size_t n_points, std::uint64_t seed) {
    require_in_ball(w, "sphere_average_check");
    const SlicePoint sw = axis_of(w);
    const UnitImaginary axis = sw.axis.value_or(UnitImaginary::i());
    const auto dirs = rotate_to(sphere_sample(n_sphere), axis);
    const bool hardy = kind == KernelKind::HardyK || kind == KernelKind::AveragedK;

    Rng rng = make_rng(seed);
    SphereAverageReport out;
    for (std::size_t k = 0; k < n_points; ++k) {
        const Quaternion q = random_in_ball(rng, 0.9);
        Quaternion mean;
        for (const auto& I : dirs) {
            const Quaternion wi = I.embed(sw.re, sw.im);
            mean += hardy ? hardy_kernel(q, wi) : bergman_kernel(q, wi);
        }
        mean = mean / static_cast<double>(dirs.size());
        const Quaternion closed = hardy ? averaged_K(q, w) : averaged_H(q, w);
        const double defect = (mean - closed).norm();
        if (defect >= out.defect) {
            out.defect = defect;
            out.witness = q;
        }
    }
    return out;
}

BergmanFormReport bergman_form_check(const Quaternion& w, std::size_t samples, std::uint64_t seed) {
    const SliceSeries k = hardy_kernel_series(w, 200);
    const SliceSeries kk = star_mul(k, k, 200);
    Rng rng = make_rng(seed);
    BergmanFormReport out;
    for (std::size_t s = 0; s < samples; ++s) {
        Quaternion q = random_in_ball(rng, 0.9);
        // |q||w| <= 0.5 keeps the truncation error of kk negligible.
        if (q.norm() * w.norm() > 0.5) q = q * (0.5 / (q.norm() * w.norm()));
        const Quaternion ref = eval_unchecked(kk, q);
        out.regular_vs_series = std::max(out.regular_vs_series, (bergman_kernel(q, w) - ref).norm());
        out.printed_vs_series =
            std::max(out.printed_vs_series, (bergman_kernel(q, w, BergmanForm::Printed) - ref).norm());
    }
    out.printed_flagged = out.printed_vs_series > 1e-8;
    return out;
}

std::string to_string(Space space) { return space == Space::Hardy ? "hardy" : "bergman"; }

double circle_integral(const SliceFunction& f, double p, const UnitImaginary& I, double r, std::size_t n_theta,
                       Normalization normalization) {
    const double v = periodic_trapezoid(
        [&](double t) { return std::pow(f(I.embed(r * std::cos(t), r * std::sin(t))).norm(), p); }, n_theta);
    return normalization == Normalization::Normalized ? v / (2.0 * std::numbers::pi) : v;
}

double disc_integral(const SliceFunction& f, double p, const UnitImaginary& I, std::size_t n_radial,
                     std::size_t n_theta) {
    const std::size_t levels = 20;
    const std::size_t pts = std::max<std::size_t>(6, n_radial / 8);
    const QuadratureRule radial = graded_radial(pts, levels);
    double total = 0.0;
    for (std::size_t k = 0; k < radial.nodes.size(); ++k) {
        const double r = radial.nodes[k];
        total += radial.weights[k] * r * circle_integral(f, p, I, r, n_theta, Normalization::Raw);
    }
    return total;
}

namespace {

void check_p(double p) {
    if (!(p > 0.0)) {
        throw std::invalid_argument("norm: p must be positive");
    }
}

}  // namespace

NormEstimate hardy_norm(const SliceFunction& f, double p, const NormGrid& grid) {
    check_p(p);
    if (grid.radii.size() < 2) {
        throw std::invalid_argument("hardy_norm: need at least two radii");
    }
    const auto dirs = sphere_sample(grid.n_sphere);
    std::vector<double> last(dirs.size()), prev(dirs.size());
    parallel_for(dirs.size(), [&](std::size_t i) {
        const std::size_t m = grid.radii.size();
        last[i] = std::pow(circle_integral(f, p, dirs[i], grid.radii[m - 1], grid.n_theta, grid.normalization), 1.0 / p);
        prev[i] = std::pow(circle_integral(f, p, dirs[i], grid.radii[m - 2], grid.n_theta, grid.normalization), 1.0 / p);
    });
    NormEstimate out;
    out.p = p;
    out.space = Space::Hardy;
    out.grid = grid;
    out.min_slice_value = last[0];
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        if (!std::isfinite(last[i])) {
            throw Divergent("hardy_norm: non-finite circle integral");
        }
        const double change = std::abs(last[i] - prev[i]);
        if (change > 0.05 * last[i]) {
            throw Divergent("hardy_norm: circle integrals did not stabilize as r -> 1");
        }
        out.error_bar = std::max(out.error_bar, change);
        if (last[i] > out.value) {
            out.value = last[i];
            out.sup_witness = dirs[i];
        }
        out.min_slice_value = std::min(out.min_slice_value, last[i]);
    }
    return out;
}

NormEstimate bergman_norm(const SliceFunction& f, double p, const NormGrid& grid) {
    check_p(p);
    const auto dirs = sphere_sample(grid.n_sphere);
    std::vector<double> vals(dirs.size());
    parallel_for(dirs.size(), [&](std::size_t i) {
        vals[i] = std::pow(disc_integral(f, p, dirs[i], grid.n_radial, grid.n_theta), 1.0 / p);
    });
    NormEstimate out;
    out.p = p;
    out.space = Space::Bergman;
    out.grid = grid;
    out.min_slice_value = vals[0];
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        if (!std::isfinite(vals[i])) {
            throw Divergent("bergman_norm: non-finite disc integral");
        }
        if (vals[i] > out.value) {
            out.value = vals[i];
            out.sup_witness = dirs[i];
        }
        out.min_slice_value = std::min(out.min_slice_value, vals[i]);
    }
    return out;
}

std::vector<double> radii_for(double w_modulus) {
    std::vector<double> r{0.9, 0.99, 0.999};
    for (int k = 1; k <= 3; ++k) {
        r.push_back(1.0 - (1.0 - w_modulus) * std::pow(10.0, -k));
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end(), [](double a, double b) { return std::abs(a - b) < 1e-15; }), r.end());
    return r;
}

}  // namespace sqc

#include "sqc/slice_series.hpp"

#include "sqc/errors.hpp"
#include "sqc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sqc {

SliceSeries::SliceSeries(std::vector<Quaternion> coeffs, double radius)
    : coeffs_(std::move(coeffs)), radius_(radius) {
    if (coeffs_.empty()) {
        coeffs_.push_back(Quaternion{});
    }
    if (!(radius_ > 0.0) || radius_ > 1.0) {
        throw std::invalid_argument("SliceSeries: radius must lie in (0, 1]");
    }
}

SliceSeries SliceSeries::one_minus_q_times(const Quaternion& a) { return SliceSeries({kOne, -a}); }

SliceSeries SliceSeries::q_minus(const Quaternion& a) { return SliceSeries({-a, kOne}); }

bool SliceSeries::is_intrinsic(double tol) const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [&](const Quaternion& a) { return a.imag_norm() <= tol; });
}

Quaternion eval_unchecked(const SliceSeries& f, const Quaternion& q) {
    const auto c = f.coeffs();
    Quaternion acc = c.back();
    for (std::size_t n = c.size() - 1; n-- > 0;) {
        acc = c[n] + q * acc;
    }
    return acc;
}

Quaternion eval(const SliceSeries& f, const Quaternion& q) {
    if (q.norm() > kEvalMargin * f.radius()) {
        throw OutOfDisk("eval: |q| exceeds the series evaluation margin");
    }
    return eval_unchecked(f, q);
}

SliceSeries star_mul(const SliceSeries& f, const SliceSeries& g, std::size_t n_max) {
    const std::size_t n = std::min(f.truncation() + g.truncation(), n_max);
    std::vector<Quaternion> c(n + 1);
    const auto a = f.coeffs();
    const auto b = g.coeffs();
    for (std::size_t k = 0; k < a.size() && k <= n; ++k) {
        for (std::size_t l = 0; l < b.size() && k + l <= n; ++l) {
            c[k + l] += a[k] * b[l];
        }
    }
    return SliceSeries(std::move(c), std::min(f.radius(), g.radius()));
}

SliceSeries reg_conj(const SliceSeries& f) {
    std::vector<Quaternion> c(f.coeffs().begin(), f.coeffs().end());
    for (auto& a : c) {
        a = conj(a);
    }
    return SliceSeries(std::move(c), f.radius());
}

SliceSeries symmetrize(const SliceSeries& f) {
    // c_n = sum_k a_k conj(a_{n-k}) is real: pairing k with n-k gives
    // a conj(b) + b conj(a) = 2 <a, b>.
    const auto a = f.coeffs();
    const std::size_t n = std::min(2 * f.truncation(), kMaxTruncation);
    std::vector<Quaternion> c(n + 1);
    for (std::size_t m = 0; m <= n; ++m) {
        double s = 0.0;
        for (std::size_t k = 0; k <= m; ++k) {
            if (k < a.size() && m - k < a.size()) {
                s += dot(a[k], a[m - k]);
            }
        }
        c[m] = Quaternion{s};
    }
    return SliceSeries(std::move(c), f.radius());
}

SliceSeries star_inv(const SliceSeries& f, std::size_t n) {
    if (f[0].norm() < kRealTolerance) {
        throw NonInvertibleAtZero("star_inv: a_0 vanishes");
    }
    const SliceSeries s = symmetrize(f);
    const auto sc = s.coeffs();
    // Reciprocal of the real series f^s.
    std::vector<double> t(n + 1, 0.0);
    t[0] = 1.0 / sc[0].w;
    for (std::size_t m = 1; m <= n; ++m) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= m && k < sc.size(); ++k) {
            acc += sc[k].w * t[m - k];
        }
        t[m] = -acc * t[0];
    }
    const auto fc = reg_conj(f);
    const auto b = fc.coeffs();
    std::vector<Quaternion> c(n + 1);
    for (std::size_t m = 0; m <= n; ++m) {
        for (std::size_t l = 0; l < b.size() && l <= m; ++l) {
            c[m] += t[m - l] * b[l];
        }
    }
    return SliceSeries(std::move(c), f.radius());
}

SliceSeries operator+(const SliceSeries& f, const SliceSeries& g) {
    std::vector<Quaternion> c(std::max(f.size(), g.size()));
    for (std::size_t n = 0; n < f.size(); ++n) c[n] += f[n];
    for (std::size_t n = 0; n < g.size(); ++n) c[n] += g[n];
    return SliceSeries(std::move(c), std::min(f.radius(), g.radius()));
}

SliceSeries operator-(const SliceSeries& f, const SliceSeries& g) {
    std::vector<Quaternion> c(std::max(f.size(), g.size()));
    for (std::size_t n = 0; n < f.size(); ++n) c[n] += f[n];
    for (std::size_t n = 0; n < g.size(); ++n) c[n] -= g[n];
    return SliceSeries(std::move(c), std::min(f.radius(), g.radius()));
}

Quaternion SplitPair::eval(std::complex<double> z) const {
    auto horner = [&](const std::vector<std::complex<double>>& c) {
        std::complex<double> acc = c.back();
        for (std::size_t n = c.size() - 1; n-- > 0;) {
            acc = c[n] + z * acc;
        }
        return acc;
    };
    return I.embed(horner(F)) + I.embed(horner(G)) * J.as_quaternion();
}

SplitPair split(const SliceSeries& f, const UnitImaginary& I, const UnitImaginary& J) {
    if (std::abs(I.dot(J)) >= 1e-12) {
        throw AxesNotOrthogonal("split: J must be orthogonal to I");
    }
    const Quaternion qi = I.as_quaternion();
    const Quaternion qj = J.as_quaternion();
    const Quaternion qk = qi * qj;
    SplitPair out{{}, {}, I, J};
    out.F.reserve(f.size());
    out.G.reserve(f.size());
    for (const auto& a : f.coeffs()) {
        // a = f0 + f1 I + (f2 + f3 I) J in the orthonormal basis {1, I, J, IJ}.
        out.F.emplace_back(a.w, dot(a, qi));
        out.G.emplace_back(dot(a, qj), dot(a, qk));
    }
    return out;
}

SliceFunction ext_from_slice(SliceFunction values, const UnitImaginary& J) {
    return [values = std::move(values), J](const Quaternion& q) -> Quaternion {
        const SlicePoint sp = axis_of(q);
        if (sp.is_real()) {
            return values(Quaternion{sp.re});
        }
        const Quaternion plus = values(J.embed(sp.re, sp.im));
        const Quaternion minus = values(J.embed(sp.re, -sp.im));
        const Quaternion I = sp.axis->as_quaternion();
        return (plus + minus) * 0.5 + I * (J.as_quaternion() * (minus - plus)) * 0.5;
    };
}

Quaternion power(const Quaternion& q, double nu) {
    if (!(nu > 0.0)) {
        throw std::invalid_argument("power: exponent must be positive");
    }
    const bool integral = std::abs(nu - std::round(nu)) < 1e-14;
    const SlicePoint sp = axis_of(q);
    if (sp.is_real()) {
        if (sp.re < 0.0) {
            if (!integral) {
                throw BranchCut("power: non-integer power on the negative real axis");
            }
            return Quaternion{std::pow(sp.re, std::round(nu))};
        }
        return Quaternion{std::pow(sp.re, nu)};
    }
    std::complex<double> z = sp.complex();
    std::complex<double> v;
    if (integral && nu <= 64.0) {
        const auto m = static_cast<int>(std::round(nu));
        v = 1.0;
        for (int k = 0; k < m; ++k) v *= z;
    } else {
        v = std::pow(z, nu);
    }
    return sp.axis->embed(v);
}

namespace {

Quaternion sample_point(Rng& rng, std::size_t k) {
    // Every fifth point is real so that real-axis defects are probed.
    if (k % 5 == 0) {
        return Quaternion{uniform(rng, -0.9, 0.9)};
    }
    return random_in_ball(rng, 0.9);
}

}  // namespace

IntrinsicCheck is_intrinsic(const SliceFunction& f, std::size_t samples, double tol, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    IntrinsicCheck out;
    for (std::size_t k = 0; k < samples; ++k) {
        const Quaternion q = sample_point(rng, k);
        const double defect = (f(conj(q)) - conj(f(q))).norm();
        if (defect > out.max_defect || k == 0) {
            out.max_defect = defect;
            out.witness = q;
        }
    }
    out.intrinsic = out.max_defect < tol;
    return out;
}

CompositionCheck composition_check(const SliceFunction& f, const SliceFunction& g, const UnitImaginary& J,
                                   std::size_t samples, std::uint64_t seed) {
    CompositionCheck out;
    out.intrinsic_defect = is_intrinsic(g, samples, 1e-10, seed).max_defect;
    const SliceFunction h = [&](const Quaternion& q) { return f(g(q)); };
    const SliceFunction extended = ext_from_slice(h, J);
    Rng rng = make_rng(seed, 1);
    for (std::size_t k = 0; k < samples; ++k) {
        const Quaternion q = sample_point(rng, k);
        out.extension_defect = std::max(out.extension_defect, (h(q) - extended(q)).norm());
    }
    return out;
}

}  // namespace sqc

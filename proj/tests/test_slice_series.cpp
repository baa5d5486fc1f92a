#include "sqc/errors.hpp"
#include "sqc/sampling.hpp"
#include "sqc/slice_series.hpp"

#include <doctest.h>

#include <cmath>

using namespace sqc;

namespace {

SliceSeries random_series(Rng& rng, std::size_t degree, double decay) {
    std::vector<Quaternion> c;
    double s = 1.0;
    for (std::size_t n = 0; n <= degree; ++n, s *= decay) c.push_back(random_in_ball(rng, s));
    return SliceSeries(c);
}

/// Oracle: explicit powers q^n a_n.
Quaternion naive_eval(const SliceSeries& f, const Quaternion& q) {
    Quaternion sum, qn = kOne;
    for (std::size_t n = 0; n < f.size(); ++n) {
        sum += qn * f[n];
        qn = qn * q;
    }
    return sum;
}

}  // namespace

TEST_CASE("Horner evaluation agrees with explicit powers") {
    Rng rng = make_rng(2);
    for (int t = 0; t < 200; ++t) {
        const SliceSeries f = random_series(rng, 12, 0.9);
        const Quaternion q = random_in_ball(rng, 0.9);
        CHECK((eval(f, q) - naive_eval(f, q)).norm() < 1e-13);
    }
}

TEST_CASE("evaluation outside the margin throws") {
    const SliceSeries f({kOne, kI}, 1.0);
    CHECK_NOTHROW(eval(f, Quaternion{0.94}));
    CHECK_THROWS_AS(eval(f, Quaternion{0.0, 0.0, 0.96, 0.0}), OutOfDisk);
    CHECK_NOTHROW(eval_unchecked(f, Quaternion{0.99}));
    CHECK_THROWS_AS(SliceSeries({kOne}, 0.0), std::invalid_argument);
}

TEST_CASE("star product obeys f*g(q) = f(q) g(f(q)^-1 q f(q))") {
    Rng rng = make_rng(3);
    for (int t = 0; t < 200; ++t) {
        const SliceSeries f = random_series(rng, 5, 0.8), g = random_series(rng, 5, 0.8);
        const Quaternion q = random_in_ball(rng, 0.9);
        const Quaternion fq = eval(f, q);
        const Quaternion expected = fq * eval(g, inverse(fq) * q * fq);
        CHECK((eval(star_mul(f, g), q) - expected).norm() < 1e-12);
    }
}

TEST_CASE("star product with real coefficients is pointwise") {
    const SliceSeries f({Quaternion{1.0}, Quaternion{-0.5}}), g({Quaternion{2.0}, Quaternion{0.0}, Quaternion{0.25}});
    const Quaternion q{0.1, 0.3, -0.2, 0.4};
    CHECK((eval(star_mul(f, g), q) - eval(f, q) * eval(g, q)).norm() < 1e-15);
}

TEST_CASE("regular conjugate and symmetrization") {
    Rng rng = make_rng(4);
    const SliceSeries f = random_series(rng, 6, 0.7);
    const SliceSeries fc = reg_conj(f);
    for (std::size_t n = 0; n < f.size(); ++n) CHECK(fc[n] == conj(f[n]));
    const SliceSeries s = symmetrize(f);
    CHECK(s.is_intrinsic(0.0));
    const SliceSeries prod = star_mul(f, fc);
    for (std::size_t n = 0; n < s.size(); ++n) CHECK((s[n] - prod[n]).norm() < 1e-14);

    const Quaternion a{0.3, -0.2, 0.5, 0.1};
    const SliceSeries sa = symmetrize(SliceSeries::one_minus_q_times(conj(a)));
    REQUIRE(sa.size() == 3);
    CHECK(sa[0] == kOne);
    CHECK(sa[1] == Quaternion{-2.0 * a.w});
    CHECK(sa[2] == Quaternion{a.norm2()});
}

TEST_CASE("star inverse") {
    Rng rng = make_rng(5);
    for (int t = 0; t < 100; ++t) {
        std::vector<Quaternion> c{kOne};
        double s = 0.3;
        for (int n = 1; n <= 16; ++n, s *= 0.3) c.push_back(random_in_ball(rng, s));
        const SliceSeries f(c);
        const SliceSeries one = star_mul(f, star_inv(f, 64), 64);
        CHECK((one[0] - kOne).norm() < 1e-12);
        for (std::size_t n = 1; n <= 32; ++n) CHECK(one[n].norm() < 1e-10);
    }
    CHECK_THROWS_AS(star_inv(SliceSeries({Quaternion{}, kOne})), NonInvertibleAtZero);
}

TEST_CASE("splitting recombines on the slice") {
    Rng rng = make_rng(6);
    const SliceSeries f = random_series(rng, 8, 0.8);
    const UnitImaginary I = UnitImaginary(1.0, 1.0, 0.0);
    const UnitImaginary J = orthogonal_unit(I);
    const SplitPair sp = split(f, I, J);
    for (int t = 0; t < 100; ++t) {
        const std::complex<double> z = random_in_disc(rng, 0.9);
        CHECK((sp.eval(z) - eval(f, I.embed(z))).norm() < 1e-13);
    }
    CHECK_THROWS_AS(split(f, I, UnitImaginary(1.0, 0.0, 0.0)), AxesNotOrthogonal);
}

TEST_CASE("extension from a slice reproduces the series") {
    Rng rng = make_rng(7);
    for (int t = 0; t < 50; ++t) {
        const SliceSeries f = random_series(rng, 8, 0.9);
        const UnitImaginary J = random_unit_imaginary(rng);
        const SliceFunction ext = ext_from_slice([&](const Quaternion& q) { return eval(f, q); }, J);
        for (int k = 0; k < 200; ++k) {
            const Quaternion q = random_in_ball(rng, 0.9);
            CHECK((ext(q) - eval(f, q)).norm() < 1e-12);
        }
    }
}

TEST_CASE("slice-wise powers") {
    const Quaternion q{0.2, 0.3, -0.1, 0.5};
    CHECK((power(q, 3.0) - q * q * q).norm() < 1e-15);
    const Quaternion r = power(q, 0.5);
    CHECK((r * r - q).norm() < 1e-14);
    CHECK(same_slice(r, q));
    CHECK_THROWS_AS(power(Quaternion{-0.5}, 0.5), BranchCut);
    CHECK((power(Quaternion{-0.5}, 2.0) - Quaternion{0.25}).norm() < 1e-15);
}

TEST_CASE("intrinsic detection") {
    const IntrinsicCheck sq = is_intrinsic([](const Quaternion& q) { return q * q; }, 500);
    CHECK(sq.intrinsic);
    const IntrinsicCheck qj = is_intrinsic([](const Quaternion& q) { return q * kJ; }, 500);
    CHECK_FALSE(qj.intrinsic);
    CHECK(qj.max_defect > 0.1);
}

TEST_CASE("composition with an intrinsic inner function is slice regular") {
    Rng rng = make_rng(8);
    const SliceSeries f = random_series(rng, 6, 0.8);
    const CompositionCheck c = composition_check([&](const Quaternion& q) { return eval(f, q); },
                                                 [](const Quaternion& q) { return q * q; }, UnitImaginary::k(), 300);
    CHECK(c.intrinsic_defect < 1e-14);
    CHECK(c.extension_defect < 1e-12);
    // Non-intrinsic inner function: the composition leaves the function class.
    const CompositionCheck bad = composition_check([&](const Quaternion& q) { return eval(f, q); },
                                                   [](const Quaternion& q) { return q * kJ * 0.5; },
                                                   UnitImaginary::k(), 300);
    CHECK(bad.intrinsic_defect > 1e-3);
}

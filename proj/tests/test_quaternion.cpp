#include "sqc/errors.hpp"
#include "sqc/quaternion.hpp"
#include "sqc/sampling.hpp"

#include <doctest.h>

#include <cmath>

using namespace sqc;

TEST_CASE("Hamilton multiplication table") {
    CHECK(kI * kI == -kOne);
    CHECK(kJ * kJ == -kOne);
    CHECK(kK * kK == -kOne);
    CHECK(kI * kJ == kK);
    CHECK(kJ * kI == -kK);
    CHECK(kJ * kK == kI);
    CHECK(kK * kI == kJ);
}

TEST_CASE("product is associative, norm multiplicative, inverse two-sided") {
    Rng rng = make_rng(1);
    for (int t = 0; t < 1000; ++t) {
        const Quaternion a = random_quaternion(rng), b = random_quaternion(rng), c = random_quaternion(rng);
        CHECK(((a * b) * c - a * (b * c)).norm() < 1e-12);
        CHECK(std::abs((a * b).norm() - a.norm() * b.norm()) < 1e-12);
        CHECK((a * inverse(a) - kOne).norm() < 1e-12);
        CHECK((inverse(a) * a - kOne).norm() < 1e-12);
        CHECK((conj(a * b) - conj(b) * conj(a)).norm() < 1e-12);
    }
}

TEST_CASE("unit imaginaries") {
    const UnitImaginary u(3.0, 0.0, 4.0);
    CHECK(u.x() == doctest::Approx(0.6));
    CHECK(u.z() == doctest::Approx(0.8));
    CHECK_THROWS_AS(UnitImaginary(0.0, 0.0, 0.0), std::invalid_argument);
    const Quaternion q = u.as_quaternion();
    CHECK((q * q + kOne).norm() < 1e-15);
    CHECK(std::abs(orthogonal_unit(u).dot(u)) < 1e-15);
    const Quaternion e = u.embed(0.5, -0.25);
    CHECK(e.w == 0.5);
    CHECK(e.imag_norm() == doctest::Approx(0.25));
}

TEST_CASE("slice coordinates") {
    const SlicePoint real = axis_of(Quaternion{0.3});
    CHECK(real.is_real());
    const Quaternion q{0.1, 0.0, -0.3, 0.4};
    const SlicePoint p = axis_of(q);
    REQUIRE(!p.is_real());
    CHECK(p.im == doctest::Approx(0.5));
    CHECK((p.embed() - q).norm() < 1e-15);
    const auto z = slice_coordinate(q, -*p.axis);
    CHECK(z.imag() == doctest::Approx(-0.5));
    CHECK_THROWS_AS(slice_coordinate(q, UnitImaginary::i()), DifferentSlices);
    CHECK(same_slice(q, q * q));
    CHECK(!same_slice(q, kI));
    CHECK(same_slice(Quaternion{0.7}, kI));
}

TEST_CASE("sphere_sample layout") {
    CHECK(sphere_sample(1).front() == UnitImaginary::i());
    const auto two = sphere_sample(2);
    CHECK(two[0].dot(two[1]) == doctest::Approx(-1.0));
    const auto pts = sphere_sample(400, 3);
    REQUIRE(pts.size() == 400);
    for (const auto& p : pts) {
        bool has_antipode = false;
        for (const auto& q : pts) has_antipode = has_antipode || p.dot(q) < -1.0 + 1e-12;
        CHECK(has_antipode);
    }
}

TEST_CASE("sphere_sample covering radius below 3.2 / sqrt(n)") {
    // Oracle: brute-force nearest chord distance from random probe points.
    Rng rng = make_rng(9);
    for (std::size_t n : {64u, 400u, 2000u}) {
        const auto pts = sphere_sample(n);
        double worst = 0.0;
        for (int t = 0; t < 4000; ++t) {
            const UnitImaginary u = random_unit_imaginary(rng);
            double best = 4.0;
            for (const auto& p : pts) best = std::min(best, 2.0 - 2.0 * p.dot(u));
            worst = std::max(worst, std::sqrt(best));
        }
        CHECK(worst < 3.2 / std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("rotate_to keeps angles and sends i to the target") {
    const UnitImaginary target(0.2, -0.9, 0.4);
    const auto pts = sphere_sample(50);
    const auto rot = rotate_to(pts, target);
    CHECK(rotate_to({UnitImaginary::i()}, target).front().dot(target) == doctest::Approx(1.0));
    for (std::size_t a = 0; a < pts.size(); a += 7) {
        for (std::size_t b = 0; b < pts.size(); b += 5) {
            CHECK(rot[a].dot(rot[b]) == doctest::Approx(pts[a].dot(pts[b])).epsilon(1e-12));
        }
    }
    const auto flip = rotate_to(pts, -UnitImaginary::i());
    CHECK(rotate_to({UnitImaginary::i()}, -UnitImaginary::i()).front().dot(-UnitImaginary::i()) == doctest::Approx(1.0));
    CHECK(flip.size() == pts.size());
}

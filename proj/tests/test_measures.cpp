#include "sqc/errors.hpp"
#include "sqc/kernels.hpp"
#include "sqc/measures.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace sqc;

namespace {

constexpr double kPi = std::numbers::pi;

/// eta written as a rotational measure: (8 / pi) y^2 dx dy on each half slice.
RotationalMeasure eta_measure() {
    RotationalMeasure m;
    m.radial = {8.0 / kPi};
    m.y_power = 2.0;
    return m;
}

/// Area of the union of two discs of radius r at distance D (circle-circle lens).
double union_area(double r, double D) {
    if (D >= 2.0 * r) return 2.0 * kPi * r * r;
    const double lens = 2.0 * r * r * std::acos(D / (2.0 * r)) - 0.5 * D * std::sqrt(4.0 * r * r - D * D);
    return 2.0 * kPi * r * r - lens;
}

}  // namespace

TEST_CASE("atomic measures") {
    const MeasureSpec mu = AtomicMeasure{{{Quaternion{0.5}, 2.0}, {kJ * 0.25, 0.5}}};
    CHECK(total_mass(mu) == 2.5);
    CHECK(real_mass(mu) == 2.0);
    const auto f = [](const Quaternion& q) { return kOne + q; };
    CHECK(integrate(f, 3.0, mu) == doctest::Approx(2.0 * std::pow(1.5, 3) + 0.5 * std::pow(1.0 + 1.0 / 16.0, 1.5)));
    CHECK(measure_kind(mu) == "atomic");
}

TEST_CASE("slice Lebesgue measure") {
    const UnitImaginary I(0.0, 1.0, 1.0);
    const MeasureSpec flat = SliceLebesgueMeasure{I, {1.0}};
    CHECK(total_mass(flat) == doctest::Approx(kPi));
    CHECK(total_mass(SliceLebesgueMeasure{I, {0.0, 1.0}}) == doctest::Approx(2.0 * kPi / 3.0));
    CHECK(real_mass(flat) == 0.0);
    const auto id = [](const Quaternion& q) { return q; };
    CHECK(integrate(id, 2.0, flat) == doctest::Approx(kPi / 2.0).epsilon(1e-8));
    CHECK(slice_integrate(id, 2.0, flat, I) == doctest::Approx(kPi / 2.0).epsilon(1e-8));
    CHECK(slice_integrate(id, 2.0, flat, -I) == doctest::Approx(kPi / 2.0).epsilon(1e-8));
    CHECK(slice_integrate(id, 2.0, flat, UnitImaginary::i()) == 0.0);
}

TEST_CASE("slice Lebesgue mass of discs, tubes and boxes") {
    const UnitImaginary I = UnitImaginary::i();
    const MeasureSpec flat = SliceLebesgueMeasure{I, {1.0}};
    for (const auto& [y, r] : {std::pair{0.6, 0.3}, std::pair{0.2, 0.5}, std::pair{0.5, 0.5}}) {
        const Quaternion a = I.embed(0.1, y);
        const GeometrySummary g = disc_geometry(a, r);
        CHECK(region_measure(flat, SliceDisc{a, r, I}) == doctest::Approx(g.area).epsilon(1e-8));
        const double D = 2.0 * g.euclidean_center.x;
        CHECK(region_measure(flat, Tube{a, r}) == doctest::Approx(union_area(g.euclidean_radius, D)).epsilon(1e-8));
    }
    for (double r : {0.5, 0.9}) {
        CHECK(slice_box_measure(flat, CarlesonBox{1.0, r, I}) == doctest::Approx((1 - r) * (1 - r * r)).epsilon(1e-10));
        CHECK(region_measure(flat, SymmetricBox{kPi / 2, r}) ==
              doctest::Approx(2 * (1 - r) * (1 - r * r)).epsilon(1e-10));
    }
    CHECK(region_measure(flat, SymmetricBox{0.0, 0.5}) == doctest::Approx(0.375).epsilon(1e-10));
}

TEST_CASE("eta as a rotational measure") {
    const MeasureSpec eta = eta_measure();
    CHECK(total_mass(eta) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(real_mass(eta) == 0.0);
    // Integral of |q|^2 d eta = 4 * integral of rho^5 d rho = 2/3.
    CHECK(integrate([](const Quaternion& q) { return q; }, 2.0, eta) == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
    for (const Quaternion& a : {kI * 0.5, Quaternion{0.3, 0.0, 0.6, 0.0}, Quaternion{0.4}}) {
        CHECK(region_measure(eta, Tube{a, 0.3}) == doctest::Approx(tube_volume(a, 0.3)).epsilon(1e-7));
    }
    // r = 0 keeps the angles |theta| <= 1: (2 / pi) * integral of sin^2 over [0, 1].
    CHECK(region_measure(eta, SymmetricBox{0.0, 0.0}) == doctest::Approx((1.0 - std::sin(2.0) / 2.0) / kPi).epsilon(1e-6));
}

TEST_CASE("rotational integrals agree with direct Monte Carlo") {
    RotationalMeasure m;
    m.radial = {1.0, 0.0, 2.0};
    m.y_power = 1.0;
    m.zonal_axis = UnitImaginary::j();
    m.zonal_strength = 0.6;
    const MeasureSpec mu = m;
    const Quaternion w{0.1, 0.2, 0.5, 0.0};
    const auto f = [&](const Quaternion& q) { return hardy_kernel(q, w); };
    MeasureOptions opt;
    opt.n_sphere = 400;
    const double quad = integrate(f, 2.0, mu, opt);
    const MonteCarloValue mc = integrate_mc(f, 2.0, mu, 400000, 12);
    CHECK(std::abs(quad - mc.value) < 4.0 * mc.sigma + 1e-3 * quad);
    const MonteCarloValue one = integrate_mc([](const Quaternion&) { return kOne; }, 1.0, mu, 400000, 13);
    CHECK(std::abs(one.value - total_mass(mu)) < 4.0 * one.sigma);
}

TEST_CASE("slice integrals disintegrate the measure") {
    // mu_I carries the conditional planar density on the half slices of I and -I,
    // so the sphere average of mu_I is twice the nu-uniform measure.
    RotationalMeasure m;
    m.radial = {1.0};
    m.y_power = 1.0;
    m.zonal_axis = UnitImaginary::k();
    m.zonal_strength = 0.3;
    RotationalMeasure uniform = m;
    uniform.zonal_axis.reset();
    uniform.zonal_strength = 0.0;
    const Quaternion w{0.0, 0.0, 0.3, 0.4};
    const auto f = [&](const Quaternion& q) { return hardy_kernel(q, w); };
    MeasureOptions opt;
    opt.n_sphere = 200;
    double sum = 0.0;
    const auto dirs = sphere_sample(200);
    for (const UnitImaginary& I : dirs) sum += slice_integrate(f, 2.0, m, I, opt);
    CHECK(sum / static_cast<double>(dirs.size()) == doctest::Approx(2.0 * integrate(f, 2.0, uniform, opt)).epsilon(1e-9));
    const MonteCarloValue mc = integrate_mc(f, 2.0, uniform, 400000, 14);
    CHECK(std::abs(integrate(f, 2.0, uniform, opt) - mc.value) < 4.0 * mc.sigma + 1e-3 * mc.value);
}

TEST_CASE("counterexample construction") {
    const double r = 0.3, eps = 0.5;
    const TubeCounterexampleMeasure m = build_counterexample(r, eps, 6);
    REQUIRE(m.heights.size() == 6);
    CHECK(m.heights[0] == 0.5);
    const double step = 4 * r / (1 + 4 * r * r);
    for (std::size_t k = 0; k + 1 < m.heights.size(); ++k) {
        CHECK(rho_complex({0.0, m.heights[k]}, {0.0, m.heights[k + 1]}) == doctest::Approx(step).epsilon(1e-10));
    }
    const MeasureSpec mu = m;
    double expected = 0.0;
    for (std::size_t k = 0; k < m.heights.size(); ++k) {
        const double dk = std::pow(m.d(k), 4.0 - eps);
        expected += dk;
        CHECK(m.densities[k] * tube_volume(m.center(k), r) == doctest::Approx(dk));
        CHECK(region_measure(mu, Tube{m.center(k), r}) == doctest::Approx(dk).epsilon(1e-7));
    }
    CHECK(total_mass(mu) == doctest::Approx(expected));
    // The doubled tubes are pairwise disjoint.
    for (std::size_t k = 0; k + 1 < m.heights.size(); ++k) {
        for (const Quaternion& q : sample_ball(m.center(k), 0.0 + 2 * r, 1000, k)) {
            CHECK_FALSE(contains(Tube{m.center(k + 1), 2 * r}, q));
        }
    }
    CHECK_THROWS_AS(build_counterexample(r, eps, 200), GridExhausted);
    CHECK_THROWS(build_counterexample(r, 0.0, 3));
}

TEST_CASE("slice submean property") {
    const UnitImaginary J = UnitImaginary::k();
    const SubmeanReport c = submean_check([](const Quaternion&) { return kOne; }, 2.0, {0.1, 0.5}, 0.4, J, 200, 1);
    CHECK(c.holds);
    CHECK(c.max_ratio < 1.0);
    const Quaternion w{0.3, 0.0, 0.0, 0.6};
    const auto f = [&](const Quaternion& q) { return hardy_kernel(q, w); };
    for (double p : {0.5, 1.0, 2.0, 4.0}) CHECK(submean_check(f, p, {0.2, 0.7}, 0.5, J, 300, 2).holds);
}

TEST_CASE("representation inequality") {
    for (double p : {0.25, 0.5, 1.0, 1.5, 2.0, 4.0}) {
        const InequalityReport r = representation_inequality(p, 20000, 3);
        CHECK(r.violations == 0);
        CHECK(r.max_ratio <= 1.0 + 1e-12);
        CHECK(r.max_ratio > 0.0);
    }
}

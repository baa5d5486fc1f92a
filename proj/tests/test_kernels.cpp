#include "sqc/errors.hpp"
#include "sqc/kernels.hpp"
#include "sqc/sampling.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace sqc;

TEST_CASE("closed-form Hardy kernel matches its series and is conjugate symmetric") {
    Rng rng = make_rng(21);
    for (int t = 0; t < 300; ++t) {
        const Quaternion w = random_in_ball(rng, 0.9);
        const Quaternion q = random_in_ball(rng, 0.9);
        const SliceSeries s = hardy_kernel_series(w, 400);
        CHECK((hardy_kernel(q, w) - eval_unchecked(s, q)).norm() < 1e-10);
        CHECK((hardy_kernel(q, w) - conj(hardy_kernel(w, q))).norm() < 1e-10);
    }
    CHECK((hardy_kernel(Quaternion{}, Quaternion{0.3, 0.2, 0.1, 0.0}) - kOne).norm() < 1e-15);
}

TEST_CASE("Hardy kernel reproduces polynomials through a slice circle integral") {
    // <f, k_w> = sum conj(conj(w)^n) f_n = f(w), computed on an arbitrary slice.
    Rng rng = make_rng(22);
    const std::vector<Quaternion> c{Quaternion{0.2, 1.0, 0.0, -0.5}, Quaternion{0.0, 0.3, 0.7, 0.1},
                                    Quaternion{-0.4, 0.0, 0.2, 0.9}};
    const SliceSeries f(c);
    for (int t = 0; t < 20; ++t) {
        const Quaternion w = random_in_ball(rng, 0.8);
        const UnitImaginary I = random_unit_imaginary(rng);
        const std::size_t n = 512;
        Quaternion acc;
        for (std::size_t m = 0; m < n; ++m) {
            const double th = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
            const Quaternion z = I.embed(std::cos(th), std::sin(th));
            acc += conj(hardy_kernel(z, w)) * eval_unchecked(f, z);
        }
        acc = acc / static_cast<double>(n);
        CHECK((acc - eval(f, w)).norm() < 1e-10);
    }
}

TEST_CASE("Bergman kernel equals k * k and the printed form is flagged") {
    const BergmanFormReport r = bergman_form_check(Quaternion{0.1, 0.4, -0.2, 0.3}, 400);
    CHECK(r.regular_vs_series < 1e-10);
    CHECK(r.printed_flagged);
}

TEST_CASE("averaged kernels are intrinsic and match sphere averages") {
    const Quaternion w{0.3, 0.0, 0.5, 0.2};
    CHECK(is_intrinsic([&](const Quaternion& q) { return averaged_K(q, w); }, 400).intrinsic);
    CHECK(is_intrinsic([&](const Quaternion& q) { return averaged_H(q, w); }, 400).intrinsic);
    CHECK_FALSE(is_intrinsic([&](const Quaternion& q) { return hardy_kernel(q, w); }, 400).intrinsic);
    CHECK(sphere_average_check(KernelKind::AveragedK, w, 4000).defect < 1e-6);
    CHECK(sphere_average_check(KernelKind::AveragedH, w, 4000).defect < 1e-6);
    // Real w: the kernels are already intrinsic and equal their averages.
    const Quaternion a{0.6};
    for (double t : {-0.5, 0.0, 0.7}) {
        const Quaternion q{t, 0.1, 0.0, 0.2};
        CHECK((averaged_K(q, a) - hardy_kernel(q, a)).norm() < 1e-14);
    }
}

TEST_CASE("KernelSpec") {
    const Quaternion w{0.2, 0.3, 0.0, 0.0};
    const KernelSpec k(KernelKind::HardyK, w, 2.0);
    const Quaternion q{0.1, 0.2, 0.0, 0.0};
    const Quaternion kq = hardy_kernel(q, w);
    CHECK((k(q) - kq * kq).norm() < 1e-13);
    CHECK_THROWS_AS(KernelSpec(KernelKind::HardyK, w, 0.0), std::invalid_argument);
    CHECK(kernel_kind_from_string(to_string(KernelKind::AveragedH)) == KernelKind::AveragedH);
    CHECK_THROWS(kernel_kind_from_string("laplace"));
}

TEST_CASE("Bergman norms of monomials") {
    NormGrid grid;
    grid.n_sphere = 8;
    grid.n_radial = 64;
    grid.n_theta = 128;
    for (int n = 0; n <= 4; ++n) {
        const auto f = [n](const Quaternion& q) {
            Quaternion v = kOne;
            for (int k = 0; k < n; ++k) v = v * q;
            return v;
        };
        const NormEstimate e = bergman_norm(f, 2.0, grid);
        CHECK(e.value == doctest::Approx(std::sqrt(std::numbers::pi / (n + 1))).epsilon(1e-8));
    }
}

TEST_CASE("Hardy norms") {
    NormGrid grid;
    grid.n_sphere = 16;
    grid.n_theta = 512;
    grid.normalization = Normalization::Raw;
    const NormEstimate one = hardy_norm([](const Quaternion&) { return kOne; }, 2.0, grid);
    CHECK(one.value == doctest::Approx(std::sqrt(2.0 * std::numbers::pi)));
    grid.normalization = Normalization::Normalized;
    CHECK(hardy_norm([](const Quaternion&) { return kOne; }, 2.0, grid).value == doctest::Approx(1.0));

    // ||k_w||^2 = k_w(w) = 1 / (1 - |w|^2) on every slice.
    const Quaternion w{0.2, 0.0, 0.3, -0.3};
    grid.radii = radii_for(w.norm());
    grid.n_theta = 4096;
    const NormEstimate kw = hardy_norm([&](const Quaternion& q) { return hardy_kernel(q, w); }, 2.0, grid);
    const double exact = 1.0 / std::sqrt(1.0 - w.norm2());
    CHECK(kw.value == doctest::Approx(exact).epsilon(2e-3));
    CHECK(kw.min_slice_value == doctest::Approx(exact).epsilon(2e-3));

    // 1 / (1 - q) has no Hardy limit.
    grid.radii = {0.9, 0.99, 0.999};
    CHECK_THROWS_AS(hardy_norm([](const Quaternion& q) { return inverse(kOne - q); }, 2.0, grid), Divergent);
    CHECK_THROWS_AS(hardy_norm([](const Quaternion&) { return kOne; }, 0.0, grid), std::invalid_argument);
}

TEST_CASE("radii_for approaches 1 at the kernel scale") {
    const auto r = radii_for(0.99);
    CHECK(r.back() == doctest::Approx(1.0 - 1e-5));
    for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] > r[i - 1]);
}

#include "sqc/suite.hpp"

#include "sqc/errors.hpp"
#include "sqc/quadrature.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

namespace sqc {

namespace {

constexpr double kPi = std::numbers::pi;

class Recorder {
public:
    explicit Recorder(CheckResult& r) : r_(r), mark_(std::chrono::steady_clock::now()) {}
    /// Closes the section that started at the previous lap (or at construction).
    void lap(const std::string& name) {
        const auto now = std::chrono::steady_clock::now();
        r_.phase_seconds.emplace_back(name, std::chrono::duration<double>(now - mark_).count());
        mark_ = now;
    }
    /// Internal agreement between independent computations.
    void expect(bool ok, const std::string& what) {
        if (!ok) r_.failures.push_back(what);
    }
    /// A stated property; a violation is a finding.
    void claim(bool ok, const std::string& what) {
        if (!ok) r_.findings.push_back(what);
    }
    Json& operator[](const char* key) { return r_.measured[key]; }

private:
    CheckResult& r_;
    std::chrono::steady_clock::time_point mark_;
};

double tol(const SuiteConfig& c, const std::string& name, double fallback) {
    const auto it = c.tolerances.find(name);
    return it == c.tolerances.end() ? fallback : it->second;
}

SliceSeries random_series(Rng& rng, std::size_t degree, double decay, bool unit_constant) {
    std::vector<Quaternion> c(degree + 1);
    double scale = 1.0;
    for (std::size_t n = 0; n <= degree; ++n) {
        c[n] = random_in_ball(rng, scale);
        scale *= decay;
    }
    if (unit_constant) c[0] = kOne;
    return SliceSeries(std::move(c), 1.0);
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

// ---------------------------------------------------------------------------

void check_algebra(Recorder& rec, const SuiteConfig& cfg) {
    Rng rng = make_rng(cfg.seed, 101);
    double residue = 0.0;
    for (int t = 0; t < 100; ++t) {
        const SliceSeries f = random_series(rng, 16, 0.3, true);
        const SliceSeries prod = star_mul(f, star_inv(f, 64), 64);
        residue = std::max(residue, (prod[0] - kOne).norm());
        for (std::size_t n = 1; n <= 32; ++n) residue = std::max(residue, prod[n].norm());
    }
    rec["star_inverse_residue"] = residue;
    rec.expect(residue < tol(cfg, "star_inverse", 1e-10), "star_mul(f, star_inv(f)) differs from 1");

    bool exact = true;
    for (int t = 0; t < 100; ++t) {
        const Quaternion a = random_in_ball(rng, 0.99);
        const SliceSeries s = symmetrize(SliceSeries::one_minus_q_times(conj(a)));
        exact = exact && s.size() == 3 && s[0] == kOne && s[1] == Quaternion{-2.0 * a.w} && s[2] == Quaternion{a.norm2()};
    }
    rec["symmetrize_exact"] = exact;
    rec.expect(exact, "symmetrize(1 - q conj(a)) is not 1 - 2 Re(a) q + |a|^2 q^2");
    rec.lap("star_algebra");

    double rep = 0.0;
    for (int t = 0; t < 50; ++t) {
        const SliceSeries f = random_series(rng, 8, 0.8, false);
        const UnitImaginary J = random_unit_imaginary(rng);
        const SliceFunction ext = ext_from_slice([&](const Quaternion& q) { return eval(f, q); }, J);
        for (int k = 0; k < 1000; ++k) {
            const Quaternion q = random_in_ball(rng, 0.9);
            rep = std::max(rep, (ext(q) - eval(f, q)).norm());
        }
    }
    rec["representation_defect"] = rep;
    rec.expect(rep < tol(cfg, "representation", 1e-12), "extension of the slice restriction differs from f");
    rec.lap("representation");

    const SliceSeries f = random_series(rng, 10, 0.7, false);
    const CompositionCheck comp =
        composition_check([&](const Quaternion& q) { return eval(f, q); }, [](const Quaternion& q) { return q * q; },
                          UnitImaginary::j(), 500, cfg.seed);
    rec["composition_intrinsic_defect"] = comp.intrinsic_defect;
    rec["composition_extension_defect"] = comp.extension_defect;
    rec.expect(comp.intrinsic_defect < 1e-12 && comp.extension_defect < 1e-10, "f o q^2 is not slice regular");

    double sym = 0.0, series_gap = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const Quaternion q = random_in_ball(rng, 0.95), a = random_in_ball(rng, 0.95);
        sym = std::max(sym, std::abs(rho(q, a) - rho(a, q)));
    }
    for (int t = 0; t < 50; ++t) {
        const Quaternion a = random_in_ball(rng, 0.8);
        const SliceSeries s =
            star_mul(star_inv(SliceSeries::one_minus_q_times(conj(a)), 256), SliceSeries::q_minus(a), 256);
        for (int k = 0; k < 10; ++k) {
            const Quaternion q = random_in_ball(rng, 0.8);
            series_gap = std::max(series_gap, std::abs(eval_unchecked(s, q).norm() - rho(q, a)));
        }
    }
    rec["rho_symmetry_defect"] = sym;
    rec["rho_series_defect"] = series_gap;
    rec.expect(series_gap < 1e-8, "closed-form rho differs from its series");
    rec.claim(sym < 1e-10, "rho is not symmetric");

    std::size_t violations = 0, outside = 0, in_ball = 0;
    for (int t = 0; t < 100'000; ++t) {
        const Quaternion a = random_in_ball(rng), b = random_in_ball(rng), c = random_in_ball(rng);
        if (rho(a, c) > (rho(a, b) + rho(b, c)) * (1.0 + 1e-12)) ++violations;
    }
    for (int t = 0; t < 100'000; ++t) {
        const Quaternion a = random_in_ball(rng, 0.7), q = random_in_ball(rng);
        if (rho(q, a) < 0.5) {
            ++in_ball;
            if (!contains(Tube{a, 0.5}, q)) ++outside;
        }
    }
    rec["triangle_violations"] = violations;
    rec["ball_points_outside_tube"] = outside;
    rec["ball_points_sampled"] = in_ball;
    rec.claim(violations == 0, "triangle inequality of rho violated");
    rec.claim(outside == 0, "B(alpha, r) not contained in Delta(alpha, r)");
    rec.lap("composition_and_rho");
}

void check_kernels(Recorder& rec, const SuiteConfig& cfg) {
    Rng rng = make_rng(cfg.seed, 202);
    double identity = 0.0, symmetry = 0.0;
    for (int t = 0; t < 500; ++t) {
        Quaternion q = random_in_ball(rng), w = random_in_ball(rng);
        if (q.norm() * w.norm() > 0.5) q = q * (0.5 / (q.norm() * w.norm()));
        const Quaternion ref = eval_unchecked(hardy_kernel_series(w, 200), q);
        identity = std::max(identity, (hardy_kernel(q, w) - ref).norm());
        symmetry = std::max(symmetry, (conj(hardy_kernel(q, w)) - hardy_kernel(w, q)).norm());
    }
    rec["kernel_series_defect"] = identity;
    rec["kernel_symmetry_defect"] = symmetry;
    rec.expect(identity < tol(cfg, "kernel_series", 1e-10), "closed-form k differs from its series");
    rec.expect(symmetry < 1e-12, "conj(k(q,w)) != k(w,q)");
    rec.lap("kernel_identity");

    const Quaternion w = UnitImaginary(1.0, 2.0, -1.0).embed(0.3, 0.5);
    const SphereAverageReport avg = sphere_average_check(KernelKind::AveragedK, w, 500);
    rec["sphere_average_defect_K"] = avg.defect;
    rec.expect(avg.defect < 1e-3, "sphere average of k differs from K");
    const SphereAverageReport avgh = sphere_average_check(KernelKind::AveragedH, w, 500);
    rec["sphere_average_defect_H"] = avgh.defect;
    rec.expect(avgh.defect < 1e-3, "sphere average of h differs from H");

    const double dk = is_intrinsic(KernelSpec(KernelKind::AveragedK, w).function(), 1000).max_defect;
    const double dh = is_intrinsic(KernelSpec(KernelKind::AveragedH, w).function(), 1000).max_defect;
    rec["intrinsic_defect_K"] = dk;
    rec["intrinsic_defect_H"] = dh;
    rec.expect(dk < 1e-10 && dh < 1e-10, "averaged kernels are not intrinsic");

    const BergmanFormReport bf = bergman_form_check(w, 500);
    rec["bergman_regular_vs_series"] = bf.regular_vs_series;
    rec["bergman_printed_vs_series"] = bf.printed_vs_series;
    rec.expect(bf.regular_vs_series < 1e-8, "regular Bergman closed form differs from k*k");
    rec.claim(!bf.printed_flagged, "printed Bergman formula differs from the series of k*k");

    Json mins = Json::array();
    bool lower = true;
    for (const Quaternion& wv : {Quaternion{0.0, 0.3, 0.0, 0.0}, Quaternion{0.0, 0.0, 0.6, 0.0},
                                 UnitImaginary(1.0, 0.0, 1.0).embed(0.0, 0.9)}) {
        double m = std::numeric_limits<double>::infinity();
        Quaternion at;
        for (int t = 0; t < 100'000; ++t) {
            const Quaternion q = t == 0 ? Quaternion{} : random_in_ball(rng, 0.999);
            const double v = averaged_K(q, wv).norm();
            if (v < m) {
                m = v;
                at = q;
            }
        }
        const double bound = 1.0 / (1.0 - wv.norm2());
        lower = lower && m >= bound * (1.0 - 1e-6);
        mins.push_back({{"w", to_json(wv)}, {"min_abs_K", m}, {"bound", bound}, {"at", to_json(at)}});
    }
    rec["K_minimum"] = mins;
    rec.claim(lower, "min |K| below 1/(1-|w|^2)");

    Json norms = Json::array();
    bool upper = true;
    for (double m : {0.5, 0.9, 0.99}) {
        const Quaternion wv{0.0, 0.0, 0.0, m};
        NormGrid g;
        g.n_sphere = 1;
        g.normalization = Normalization::Normalized;
        g.radii = radii_for(m);
        const double n2 = std::pow(hardy_norm(KernelSpec(KernelKind::AveragedK, wv).function(), 2.0, g).value, 2);
        upper = upper && n2 <= (1.0 + 1e-2) / (1.0 - m);
        norms.push_back({{"w_modulus", m}, {"norm2_squared", n2}, {"bound", 1.0 / (1.0 - m)}});
    }
    rec["K_hardy_norm"] = norms;
    rec.claim(upper, "||K||_2^2 above 1/(1-|w|)");
    rec.lap("averaged_kernels");
}

void check_distance(Recorder& rec, const SuiteConfig& cfg) {
    const std::vector<Quaternion> alphas{Quaternion{0.0, 0.3, 0.0, 0.0}, Quaternion{0.0, 0.6, 0.0, 0.0},
                                         Quaternion{0.0, 0.9, 0.0, 0.0},
                                         UnitImaginary(0.0, 1.0, 1.0).embed(std::polar(0.9, kPi / 3.0))};
    Json rows = Json::array();
    double c1 = 0.0;
    bool monotone = true, section = true;
    std::uint64_t s = cfg.seed * 7 + 1;
    for (const Quaternion& a : alphas) {
        double prev = 0.0;
        for (double r : {0.3, 0.6, 0.9}) {
            const DistanceSandwich ds = distance_sandwich_check(a, r, 20'000, s++);
            const SphereSection sp = sphere_section(a, r, 20'000, s++);
            const double d = boundary_distance(a);
            const double bound = std::pow(d, 4) * r / (1.0 - r);
            section = section && sp.max_distance2 < bound;
            monotone = monotone && ds.max_ratio >= prev;
            prev = ds.max_ratio;
            c1 = std::max(c1, ds.c1);
            rows.push_back({{"alpha", to_json(a)},
                            {"r", r},
                            {"min_ratio", ds.min_ratio},
                            {"max_ratio", ds.max_ratio},
                            {"C1", ds.c1},
                            {"sphere_max_distance2", sp.max_distance2},
                            {"sphere_bound", bound}});
        }
    }
    for (double r : {0.3, 0.6}) {
        const DistanceSandwich ds = distance_sandwich_check(Quaternion{}, r, 20'000, s++);
        rec.expect(ds.min_ratio >= 1.0 - r - 1e-12 && ds.max_ratio <= 1.0 + 1e-12,
                   "distance ratio at alpha = 0 outside [1 - r, 1]");
    }
    rec["grid"] = rows;
    rec["C1"] = c1;
    rec.expect(std::isfinite(c1), "C1 not finite");
    rec.claim(monotone, "max distance ratio not monotone in r");
    rec.claim(section, "|q - alpha|^2 >= d^4 r / (1 - r) on the sphere [alpha]");
}

void check_area(Recorder& rec, const SuiteConfig& cfg) {
    Json rows = Json::array();
    double worst = 0.0, c2 = std::numeric_limits<double>::infinity(), C2 = 0.0;
    bool lower = true, upper = true;
    Rng rng = make_rng(cfg.seed, 303);
    for (double m : {0.0, 0.3, 0.6, 0.9, 0.99}) {
        for (double r : {0.3, 0.5, 0.8}) {
            const std::complex<double> a = std::polar(m, 1.1);
            const double half = r * (1.0 - m * m) / (1.0 - r * m);
            const std::size_t n = 1'000'000;
            std::size_t hit = 0;
            for (std::size_t k = 0; k < n; ++k) {
                const std::complex<double> z = a + std::complex<double>(uniform(rng, -half, half), uniform(rng, -half, half));
                if (std::norm(z) < 1.0 && rho_complex(z, a) < r) ++hit;
            }
            const double mc = 4.0 * half * half * static_cast<double>(hit) / static_cast<double>(n);
            const double area = disc_area(m, r);
            const double d4 = std::pow(1.0 - m, 4);
            worst = std::max(worst, std::abs(mc - area) / area);
            lower = lower && kPi * r * r * d4 <= area * (1.0 + 1e-12);
            upper = upper && area <= kPi * r * r * d4 / std::pow(1.0 - r * r, 2) * (1.0 + 1e-12);
            c2 = std::min(c2, area / d4);
            C2 = std::max(C2, area / d4);
            rows.push_back({{"alpha_modulus", m}, {"r", r}, {"area", area}, {"mc_area", mc}, {"area_over_d4", area / d4}});
        }
    }
    rec["grid"] = rows;
    rec["mc_relative_error"] = worst;
    rec["c2"] = c2;
    rec["C2"] = C2;
    rec.expect(worst < 0.01, "disc area formula differs from Monte Carlo area by more than 1%");
    rec.claim(lower, "area below pi r^2 d^4");
    rec.claim(upper, "area above pi r^2 d^4 / (1 - r^2)^2");
}

void check_volume(Recorder& rec, const SuiteConfig& cfg) {
    const std::size_t n = cfg.mc_samples;
    std::uint64_t s = cfg.seed * 11 + 3;
    Json zero = Json::array();
    for (double r : {0.3, 0.5}) {
        const VolumeEstimate v = ball_volume_mc(Quaternion{}, r, n, s++);
        rec.expect(std::abs(v.value - std::pow(r, 4)) <= 3.0 * v.sigma + 1e-9, "eta(B(0, r)) != r^4");
        zero.push_back({{"r", r}, {"eta", v.value}, {"sigma", v.sigma}});
    }
    rec["eta_ball_at_zero"] = zero;

    Rng rng = make_rng(cfg.seed, 404);
    const Quaternion a{0.0, 0.5, 0.0, 0.0};
    const double quad = tube_volume(a, 0.3);
    std::size_t hit = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (contains(Tube{a, 0.3}, random_in_ball(rng))) ++hit;
    }
    const double p = static_cast<double>(hit) / static_cast<double>(n);
    const double sig = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    rec["tube_volume_quadrature"] = quad;
    rec["tube_volume_mc"] = p;
    rec.expect(std::abs(p - quad) <= 3.0 * sig, "tube volume quadrature differs from Monte Carlo");

    bool lower = true;
    Json grid = Json::array();
    for (double m : {0.0, 0.3, 0.6, 0.9, 0.99}) {
        for (double r : {0.3, 0.5, 0.8}) {
            const VolumeEstimate v = ball_volume_mc(Quaternion{0.0, 0.0, m, 0.0}, r, n, s++);
            const double bound = std::pow(r, 4) * std::pow(1.0 - m, 8);
            lower = lower && v.value >= bound * (1.0 - 3.0 * v.sigma / std::max(v.value, 1e-300) - 1e-12);
            grid.push_back({{"alpha_modulus", m}, {"r", r}, {"eta", v.value}, {"sigma", v.sigma}, {"lower_bound", bound}});
        }
    }
    rec["lower_bound_grid"] = grid;
    rec.claim(lower, "eta(B) below r^4 d^8");

    std::vector<double> ds, etas;
    Json scan = Json::array();
    double c3 = std::numeric_limits<double>::infinity(), C3 = 0.0;
    for (double y : cfg.scaling_heights) {
        const VolumeEstimate v = ball_volume_mc(Quaternion{0.0, y, 0.0, 0.0}, 0.5, n, s++);
        const double d = 1.0 - y;
        ds.push_back(d);
        etas.push_back(v.value);
        c3 = std::min(c3, v.value / std::pow(d, 8));
        C3 = std::max(C3, v.value / std::pow(d, 8));
        scan.push_back({{"y", y}, {"d", d}, {"eta", v.value}, {"sigma", v.sigma}});
    }
    const double exponent = loglog_slope(ds, etas);
    rec["scaling"] = scan;
    rec["fitted_exponent"] = exponent;
    rec["c3"] = c3;
    rec["C3"] = C3;
    rec.claim(exponent >= 7.5 && exponent <= 8.5, "fitted d-exponent of eta(B(Iy, 0.5)) outside [7.5, 8.5]");

    bool gamma = true;
    Json gam = Json::array();
    for (double y : {0.5, 0.8, 0.9}) {
        const double r = 0.5;
        const SphereSection sp = sphere_section(Quaternion{0.0, y, 0.0, 0.0}, r, 20'000, s++);
        const double d = 1.0 - y;
        const double bound = 2.0 * kPi * std::pow(d, 4) * r * (1.0 + r) / (1.0 - r * r);
        gamma = gamma && sp.gamma_area <= bound * 1.05;
        gam.push_back({{"y", y}, {"gamma_area", sp.gamma_area}, {"bound", bound}});
    }
    rec["gamma"] = gam;
    rec.claim(gamma, "sphere-section area |Gamma| above 2 pi d^4 r (1+r)/(1-r^2)");
}

void check_cover_pack(Recorder& rec, const SuiteConfig& cfg) {
    const double r = 0.3;
    const TubeCover single = cover_tube(Quaternion{0.0, 0.2, 0.0, 0.0}, r);
    rec.expect(single.single_ball && single.centers.size() == 1, "tube meeting the axis needs more than one ball");
    const TubeCover c8 = cover_tube(Quaternion{0.0, 0.8, 0.0, 0.0}, r);
    const double frac = cover_fraction(Quaternion{0.0, 0.8, 0.0, 0.0}, r, c8, 100'000, cfg.seed + 5);
    rec["cover_fraction"] = frac;
    rec.expect(frac == 1.0, "cover misses sampled tube points");

    std::vector<double> ds, counts;
    Json cov = Json::array();
    double C5 = 0.0;
    for (double y : cfg.cover_heights) {
        const TubeCover c = cover_tube(Quaternion{0.0, y, 0.0, 0.0}, r);
        const double d = 1.0 - y;
        ds.push_back(d);
        counts.push_back(static_cast<double>(c.centers.size()));
        C5 = std::max(C5, static_cast<double>(c.centers.size()) * std::pow(d, 4));
        cov.push_back({{"y", y}, {"d", d}, {"count", c.centers.size()}});
    }
    const double cover_exp = loglog_slope(ds, counts);
    rec["cover_counts"] = cov;
    rec["cover_exponent"] = cover_exp;
    rec["C5"] = C5;
    rec.claim(cover_exp >= -4.5 && cover_exp <= -3.5, "cover count exponent outside [-4.5, -3.5]");

    const auto p9 = pack_tube(0.9, r);
    const std::size_t overlaps = packing_overlaps(p9, r, 100'000, cfg.seed + 6);
    double min_sep = 1.0;
    for (std::size_t i = 0; i < p9.size(); ++i) {
        for (std::size_t j = i + 1; j < p9.size(); ++j) min_sep = std::min(min_sep, rho(p9[i], p9[j]));
    }
    rec["packing_overlaps"] = overlaps;
    rec["packing_min_separation"] = min_sep;
    rec.expect(overlaps == 0, "packed balls overlap");

    ds.clear();
    counts.clear();
    Json pk = Json::array();
    double c5 = std::numeric_limits<double>::infinity();
    for (double y : cfg.pack_heights) {
        const auto c = pack_tube(y, r);
        const double d = 1.0 - y;
        ds.push_back(d);
        counts.push_back(static_cast<double>(c.size()));
        c5 = std::min(c5, static_cast<double>(c.size()) * std::pow(d, 4));
        pk.push_back({{"y", y}, {"d", d}, {"count", c.size()}});
    }
    const double pack_exp = loglog_slope(ds, counts);
    rec["pack_counts"] = pk;
    rec["pack_exponent"] = pack_exp;
    rec["c5"] = c5;
    rec.claim(pack_exp >= -4.5 && pack_exp <= -3.5, "packing count exponent outside [-4.5, -3.5]");
}

void check_lattice(Recorder& rec, const SuiteConfig& cfg) {
    const double r = 0.5;
    Json rows = Json::array();
    std::vector<std::size_t> n0s;
    std::size_t uncovered = 0;
    for (double rmax : {0.9, 0.95, 0.99}) {
        const auto centers = disc_lattice(UnitImaginary::i(), r, rmax);
        const LatticeReport lr = lattice_check(UnitImaginary::i(), centers, r, rmax, 20'000, cfg.seed + 9);
        uncovered += lr.uncovered;
        n0s.push_back(lr.n0);
        rows.push_back({{"r_max", rmax}, {"centers", centers.size()}, {"uncovered", lr.uncovered}, {"n0", lr.n0}});
    }
    rec["grid"] = rows;
    rec["n0"] = *std::max_element(n0s.begin(), n0s.end());
    rec.expect(uncovered == 0, "lattice discs miss sampled points");
    rec.claim(n0s.back() <= 2 * n0s.front(), "overlap count n0 keeps growing as r_max -> 1");
}

Json report_summary(const CarlesonReport& r) {
    return {{"sup_ratio", finite_or_null(r.sup_ratio)},
            {"growth_exponent", r.growth_exponent},
            {"witness", to_json(r.witness)},
            {"verdict", r.bounded ? "bounded over grid" : "growth detected"}};
}

void check_hardy(Recorder& rec, const SuiteConfig& cfg) {
    AtomicMeasure atoms;
    for (double x : {-0.5, 0.2, 0.7, 0.95, 0.999}) atoms.atoms.emplace_back(Quaternion{x}, 1.0 + x);
    const MeasureSpec real_mu = atoms;
    const BoxGrid grid = BoxGrid::standard();
    const CarlesonReport sym = check_hardy_box(real_mu, grid);
    bool same = true;
    for (const UnitImaginary& I : grid.axes) {
        BoxGrid one = grid;
        one.axes = {I};
        same = same && check_slice_box(real_mu, one).ratios == sym.ratios;
    }
    rec["real_atoms_symmetric_box"] = report_summary(sym);
    rec["real_atoms_identical"] = same;
    rec.expect(same, "real-axis atoms give different slice-box and symmetric-box ratios");

    const MeasureSpec lebesgue = SliceLebesgueMeasure{};
    const CarlesonReport hb = check_hardy_box(lebesgue, grid);
    rec["slice_lebesgue_hardy_box"] = report_summary(hb);
    rec.claim(hb.bounded, "slice Lebesgue measure fails the Hardy box condition");

    FamilySpec fam;
    fam.kind = TestFamily::KernelK;
    fam.ws = {Quaternion{0.0, 0.9, 0.0, 0.0}, Quaternion{0.0, 0.99, 0.0, 0.0}, Quaternion{0.0, 0.999, 0.0, 0.0}};
    Json fun = Json::array();
    bool bounded = true;
    for (double p : {1.0, 2.0, 4.0}) {
        MeasureOptions opt;
        opt.seed = cfg.seed;
        const FunctionalReport fr = functional_carleson_test(lebesgue, p, Space::Hardy, fam, opt);
        bounded = bounded && fr.bounded;
        fun.push_back(to_json(fr));
    }
    rec["functional_K"] = fun;
    rec.claim(bounded, "functional test with K^{2/p} grows as |w| -> 1");
    rec.lap("characterization");

    Json ineq = Json::array();
    std::size_t violations = 0;
    for (double p : {0.5, 1.0, 2.0, 4.0}) {
        const InequalityReport ir = representation_inequality(p, 1'000'000, cfg.seed + static_cast<std::uint64_t>(4 * p));
        violations += ir.violations;
        ineq.push_back({{"p", p}, {"violations", ir.violations}, {"max_ratio", ir.max_ratio}});
    }
    rec["representation_inequality"] = ineq;
    rec.claim(violations == 0, "representation inequality violated");

    Rng rng = make_rng(cfg.seed, 707);
    double submean = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const SliceSeries f = random_series(rng, 6, 0.8, false);
        const std::complex<double> a = random_in_disc(rng, 0.9);
        const double r = uniform(rng, 0.05, 0.9);
        const double p = std::array{0.5, 1.0, 2.0, 4.0}[static_cast<std::size_t>(t % 4)];
        const SubmeanReport sr = submean_check([&](const Quaternion& q) { return eval_unchecked(f, q); }, p, a, r,
                                               random_unit_imaginary(rng), 1, cfg.seed + static_cast<std::uint64_t>(t));
        submean = std::max(submean, sr.max_ratio);
    }
    rec["submean_max_ratio"] = submean;
    rec.claim(submean <= 1.0, "slice submean inequality violated");
    rec.lap("inequalities");
}

void check_bergman(Recorder& rec, const SuiteConfig& cfg) {
    const MeasureSpec lebesgue = SliceLebesgueMeasure{};
    MeasureOptions opt;
    opt.mc_samples = cfg.mc_samples;
    opt.seed = cfg.seed;
    const CarlesonReport tube = check_bergman_tube(lebesgue, PointGrid::standard(0.5, cfg.seed), opt);
    const auto* w = std::get_if<Tube>(&tube.witness);
    const bool own = w != nullptr && (w->alpha.imag_norm() < kRealTolerance ||
                                      std::abs(std::abs(UnitImaginary::from_quaternion(w->alpha).dot(UnitImaginary::i())) - 1.0) < 1e-12);
    rec["slice_lebesgue_tube"] = report_summary(tube);
    rec["witness_on_own_slice"] = own;
    rec.claim(own, "tube-condition witness not on the measure's slice");
    rec.claim(tube.sup_ratio <= 1.0 + tol(cfg, "tube_sup", 1e-2), "slice Lebesgue tube ratio above 1");

    FamilySpec fam;
    fam.kind = TestFamily::KernelH;
    fam.ws = {Quaternion{0.0, 0.9, 0.0, 0.0}, Quaternion{0.0, 0.99, 0.0, 0.0}, Quaternion{0.0, 0.999, 0.0, 0.0}};
    Json fun = Json::array();
    bool bounded = true;
    for (double p : {1.0, 2.0}) {
        const FunctionalReport fr = functional_carleson_test(lebesgue, p, Space::Bergman, fam);
        bounded = bounded && fr.bounded;
        fun.push_back(to_json(fr));
    }
    rec["functional_H"] = fun;
    rec.claim(bounded, "functional test with H^{2/p} grows as |w| -> 1");
}

void check_sharpness(Recorder& rec, const SuiteConfig& cfg) {
    MeasureOptions opt;
    opt.mc_samples = cfg.mc_samples;
    opt.seed = cfg.seed;
    const double r = 0.5;
    const MeasureSpec lebesgue = SliceLebesgueMeasure{};
    const PointGrid along = PointGrid::along(UnitImaginary::i(), {0.5, 0.7, 0.9, 0.95, 0.99, 0.995}, r);
    const CarlesonReport tube = check_bergman_tube(lebesgue, along, opt);
    const CarlesonReport ball = check_ball(lebesgue, 4.0, along, opt);
    const double cmin = *std::min_element(ball.ratios.begin(), ball.ratios.end());
    rec["a_tube"] = report_summary(tube);
    rec["a_ball"] = report_summary(ball);
    rec["a_ball_over_d4"] = ball.ratios;
    rec["a_ball_min"] = cmin;
    rec.claim(tube.bounded && cmin > 0.0, "slice Lebesgue: exponent-4 necessity not witnessed");

    const TubeCounterexampleMeasure ce = build_counterexample(0.3, 0.5, 8);
    const MeasureSpec mu = ce;
    double mass_sum = 0.0;
    for (std::size_t k = 0; k < ce.heights.size(); ++k) mass_sum += std::pow(ce.d(k), 4.0 - ce.eps);
    const double mass = total_mass(mu);
    rec["b_total_mass"] = mass;
    rec.expect(std::abs(mass - mass_sum) <= 1e-12 * mass_sum, "counterexample mass differs from sum of d_k^{4-eps}");

    std::size_t shared = 0;
    for (std::size_t k = 0; k < ce.heights.size(); ++k) {
        const TubeSampler sampler(ce.center(k), 2.0 * ce.r);
        Rng rng = make_rng(cfg.seed, 500 + k);
        for (int t = 0; t < 20'000; ++t) {
            const Quaternion q = sampler(rng);
            for (std::size_t j = 0; j < ce.heights.size(); ++j) {
                if (j != k && contains(Tube{ce.center(j), 2.0 * ce.r}, q)) ++shared;
            }
        }
    }
    rec["b_tube_overlaps"] = shared;
    rec.expect(shared == 0, "counterexample tubes Delta(alpha_k, 2r) overlap");

    std::vector<double> ds, ratios;
    for (std::size_t k = 0; k < ce.heights.size(); ++k) {
        ds.push_back(ce.d(k));
        ratios.push_back(region_measure(mu, Tube{ce.center(k), ce.r}, opt) / disc_area(ce.heights[k], ce.r));
    }
    bool increasing = true;
    for (std::size_t k = 1; k < ratios.size(); ++k) increasing = increasing && ratios[k] > ratios[k - 1];
    const double tube_exp = loglog_slope(ds, ratios);
    rec["b_heights"] = ce.heights;
    rec["b_tube_ratios"] = ratios;
    rec["b_tube_exponent"] = tube_exp;
    rec.claim(increasing, "counterexample tube ratio not increasing in k");
    rec.claim(std::abs(tube_exp + ce.eps) <= 0.15, "counterexample tube-ratio exponent not -eps");

    Json balls = Json::array();
    double C = 0.0;
    bool below = true;
    for (std::size_t k = 0; k < ce.heights.size(); ++k) {
        const auto centers = pack_tube(ce.heights[k], ce.r, ce.axis, 1000);
        double worst = 0.0;
        for (std::size_t j = 0; j < std::min<std::size_t>(centers.size(), 3); ++j) {
            MeasureOptions o = opt;
            o.seed = cfg.seed + 600 + 10 * k + j;
            const double m = region_measure(mu, PseudoBall{centers[j], ce.r}, o);
            worst = std::max(worst, m / std::pow(ce.d(k), 8.0 - ce.eps));
        }
        if (k == 0) C = worst;
        below = below && worst <= C * 1.1;
        balls.push_back({{"k", k}, {"packed", centers.size()}, {"max_ball_over_d8_eps", worst}});
    }
    rec["b_balls"] = balls;
    rec.claim(below, "ball masses exceed C d_k^{8-eps} (C from the first tube)");
}

using CheckFn = void (*)(Recorder&, const SuiteConfig&);

CheckFn check_fn(const std::string& id) {
    if (id == "algebra") return check_algebra;
    if (id == "kernels") return check_kernels;
    if (id == "L5.1") return check_distance;
    if (id == "L5.2") return check_area;
    if (id == "L5.3") return check_volume;
    if (id == "L5.4") return check_cover_pack;
    if (id == "P4.6") return check_lattice;
    if (id == "T3.9") return check_hardy;
    if (id == "T4.8") return check_bergman;
    if (id == "T5") return check_sharpness;
    throw ConfigInvalid("unknown check id: " + id);
}

}  // namespace

const std::vector<std::string>& check_ids() {
    static const std::vector<std::string> ids{"algebra", "kernels", "L5.1", "L5.2", "L5.3",
                                              "L5.4",    "P4.6",    "T3.9", "T4.8", "T5"};
    return ids;
}

std::vector<std::string> parse_check_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty()) continue;
        const auto& ids = check_ids();
        if (std::find(ids.begin(), ids.end(), item) == ids.end()) throw ConfigInvalid("unknown check id: " + item);
        out.push_back(item);
    }
    return out;
}

SuiteConfig suite_config_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigInvalid("suite config must be an object");
    SuiteConfig c;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "seed") {
                c.seed = value.get<std::uint64_t>();
            } else if (key == "mc_samples") {
                c.mc_samples = value.get<std::size_t>();
                if (c.mc_samples < 10'000) throw ConfigInvalid("mc_samples must be at least 10000");
            } else if (key == "only") {
                std::vector<std::string> ids;
                for (const Json& v : value) {
                    const auto parsed = parse_check_list(v.get<std::string>());
                    ids.insert(ids.end(), parsed.begin(), parsed.end());
                }
                c.only = ids;
            } else if (key == "tolerances") {
                for (const auto& [name, v] : value.items()) {
                    if (name != "star_inverse" && name != "representation" && name != "kernel_series" &&
                        name != "tube_sup") {
                        throw ConfigInvalid("unknown tolerance: " + name);
                    }
                    c.tolerances[name] = v.get<double>();
                }
            } else if (key == "grids") {
                for (const auto& [name, v] : value.items()) {
                    std::vector<double>* target = name == "scaling_heights" ? &c.scaling_heights
                                                  : name == "cover_heights" ? &c.cover_heights
                                                  : name == "pack_heights"  ? &c.pack_heights
                                                                            : nullptr;
                    if (!target) throw ConfigInvalid("unknown grid: " + name);
                    const auto ys = v.get<std::vector<double>>();
                    if (ys.size() < 2) throw ConfigInvalid("grid " + name + " needs at least two heights");
                    for (double y : ys) {
                        if (!(y > 0.0 && y < 1.0)) throw ConfigInvalid("grid " + name + " heights must lie in (0, 1)");
                    }
                    *target = ys;
                }
            } else {
                throw ConfigInvalid("unknown config key: " + key);
            }
        } catch (const Json::exception& e) {
            throw ConfigInvalid("bad value for " + key + ": " + e.what());
        }
    }
    return c;
}

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Finding: return "finding";
    }
    return "unknown";
}

bool SuiteReport::failed() const {
    return std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == Status::Fail; });
}

CheckResult run_check(const std::string& id, const SuiteConfig& config) {
    const CheckFn fn = check_fn(id);
    CheckResult result;
    result.id = id;
    const auto start = std::chrono::steady_clock::now();
    Recorder rec(result);
    try {
        fn(rec, config);
    } catch (const Error& e) {
        result.failures.push_back(std::string("error: ") + e.what());
    }
    result.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.status = !result.failures.empty() ? Status::Fail : !result.findings.empty() ? Status::Finding : Status::Pass;
    return result;
}

SuiteReport run_suite(const SuiteConfig& config) {
    SuiteReport report;
    report.seed = config.seed;
    const std::vector<std::string> selected = config.only.value_or(check_ids());
    // Dependency order is the order of check_ids().
    for (const std::string& id : check_ids()) {
        if (std::find(selected.begin(), selected.end(), id) == selected.end()) continue;
        report.checks.push_back(run_check(id, config));
    }
    return report;
}

Json to_json(const SuiteReport& report) {
    Json checks = Json::array();
    for (const CheckResult& c : report.checks) {
        checks.push_back({{"id", c.id},
                          {"status", to_string(c.status)},
                          {"measured", c.measured},
                          {"failures", c.failures},
                          {"findings", c.findings}});
    }
    return {{"seed", report.seed}, {"checks", checks}, {"failed", report.failed()}};
}

Json timings_json(const SuiteReport& report) {
    Json t = Json::object();
    for (const CheckResult& c : report.checks) {
        Json phases = Json::object();
        for (const auto& [name, seconds] : c.phase_seconds) phases[name] = seconds;
        t[c.id] = {{"seconds", c.runtime_seconds}, {"phases", phases}};
    }
    return t;
}

std::vector<ConstantEnvelope> estimate_constants(const SuiteReport& report) {
    std::vector<ConstantEnvelope> out;
    auto find = [&](const std::string& id) -> const CheckResult* {
        for (const CheckResult& c : report.checks) {
            if (c.id == id && c.measured.is_object()) return &c;
        }
        return nullptr;
    };
    auto add = [&](const std::string& name, const std::vector<double>& values, const std::string& grid) {
        if (values.empty()) return;
        out.push_back({name, *std::min_element(values.begin(), values.end()),
                       *std::max_element(values.begin(), values.end()), grid});
    };
    auto column = [](const Json& rows, const std::function<double(const Json&)>& f) {
        std::vector<double> v;
        for (const Json& row : rows) v.push_back(f(row));
        return v;
    };
    auto heights = [](const Json& rows) {
        std::string t = "y in {";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::ostringstream os;
            os << std::fixed << std::setprecision(2) << rows[i]["y"].get<double>();
            t += (i ? ", " : "") + os.str();
        }
        return t + "}";
    };
    if (const CheckResult* c = find("L5.1"); c && c->measured.contains("grid")) {
        add("C1", column(c->measured["grid"], [](const Json& r) { return r["C1"].get<double>(); }),
            "alpha in {0.3i, 0.6i, 0.9i, 0.9 e^{I pi/3}}, r in {0.3, 0.6, 0.9}");
    }
    if (const CheckResult* c = find("L5.2"); c && c->measured.contains("grid")) {
        const auto v = column(c->measured["grid"], [](const Json& r) {
            const double rr = r["r"].get<double>();
            return r["area_over_d4"].get<double>() / (kPi * rr * rr);
        });
        const std::string g = "|Delta_I| / (pi r^2 d^4), |alpha| in {0, 0.3, 0.6, 0.9, 0.99}, r in {0.3, 0.5, 0.8}";
        add("c2", v, g);
        add("C2", v, g);
    }
    if (const CheckResult* c = find("L5.3"); c && c->measured.contains("scaling")) {
        const auto v = column(c->measured["scaling"], [](const Json& r) {
            return r["eta"].get<double>() / (std::pow(0.5, 4) * std::pow(r["d"].get<double>(), 8));
        });
        const std::string g = "eta(B) / (r^4 d^8), " + heights(c->measured["scaling"]) + ", r = 0.5";
        add("c3", v, g);
        add("C3", v, g);
    }
    if (const CheckResult* c = find("L5.4"); c && c->measured.contains("pack_counts")) {
        auto scaled = [](const Json& r) { return r["count"].get<double>() * std::pow(r["d"].get<double>(), 4); };
        add("c5", column(c->measured["pack_counts"], scaled),
            "packing count d^4, " + heights(c->measured["pack_counts"]) + ", r = 0.3");
        add("C5", column(c->measured["cover_counts"], scaled),
            "cover count d^4, " + heights(c->measured["cover_counts"]) + ", r = 0.3");
    }
    if (const CheckResult* c = find("P4.6"); c && c->measured.contains("grid")) {
        add("n0", column(c->measured["grid"], [](const Json& r) { return r["n0"].get<double>(); }),
            "r = 0.5, r_max in {0.9, 0.95, 0.99}");
    }
    return out;
}

std::vector<ConstantEnvelope> estimate_constants(const SuiteConfig& config) {
    SuiteConfig c = config;
    c.only = std::vector<std::string>{"L5.1", "L5.2", "L5.3", "L5.4", "P4.6"};
    return estimate_constants(run_suite(c));
}

std::vector<ScalingRow> scaling_rows(const SuiteReport& report) {
    std::vector<ScalingRow> rows;
    for (const CheckResult& c : report.checks) {
        if (c.id != "L5.3" || !c.measured.contains("scaling")) continue;
        const double e = c.measured["fitted_exponent"].get<double>();
        for (const Json& r : c.measured["scaling"]) {
            rows.push_back({r["y"].get<double>(), r["d"].get<double>(), r["eta"].get<double>(),
                            r["sigma"].get<double>(), e});
        }
    }
    return rows;
}

namespace {

std::string num(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string constants_csv(const std::vector<ConstantEnvelope>& c) {
    std::string out = "constant,min,max,grid\n";
    for (const ConstantEnvelope& e : c) out += e.name + "," + num(e.min) + "," + num(e.max) + ",\"" + e.grid + "\"\n";
    return out;
}

std::string scaling_csv(const std::vector<ScalingRow>& rows) {
    std::string out = "y,d,eta_ball,sigma,fitted_exponent\n";
    for (const ScalingRow& r : rows) {
        out += num(r.y) + "," + num(r.d) + "," + num(r.eta) + "," + num(r.sigma) + "," + num(r.exponent) + "\n";
    }
    return out;
}

void emit(const SuiteReport& report, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path base(dir);
    write_json_file((base / "report.json").string(), to_json(report));
    write_json_file((base / "timings.json").string(), timings_json(report));
    std::ofstream((base / "constants.csv").string()) << constants_csv(estimate_constants(report));
    std::ofstream((base / "scaling_d8.csv").string()) << scaling_csv(scaling_rows(report));
}

}  // namespace sqc

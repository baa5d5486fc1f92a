#include "sqc/suite.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

using namespace sqc;

namespace {

struct Line {
    int id;
    std::string title;
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        notes.push_back((ok ? "ok " : "FAILED ") + what);
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

const CheckResult& find(const SuiteReport& r, const std::string& id) {
    for (const CheckResult& c : r.checks) {
        if (c.id == id) return c;
    }
    throw std::runtime_error("acceptance: check " + id + " missing from the default suite");
}

double phase(const CheckResult& c, const std::string& name) {
    for (const auto& [n, s] : c.phase_seconds) {
        if (n == name) return s;
    }
    throw std::runtime_error("acceptance: phase " + name + " missing in " + c.id);
}

void runtime(Line& line, double seconds, double limit) {
    line.require(seconds < limit, "runtime " + fmt(seconds) + " s < " + fmt(limit) + " s");
}

void internal(Line& line, const CheckResult& c) {
    line.require(c.failures.empty(), c.id + " internal oracles agree (" + std::to_string(c.failures.size()) +
                                         " disagreements)");
}

bool bounded(const Json& summary) { return summary.at("verdict") == "bounded over grid"; }


int run() {
    SuiteConfig config;
    const SuiteReport report = run_suite(config);
    const SuiteReport again = run_suite(config);
    std::vector<Line> lines;

    {
        Line l{1, "kernel identity"};
        const CheckResult& c = find(report, "kernels");
        const Json& m = c.measured;
        l.require(m.at("kernel_series_defect").get<double>() < 1e-10,
                  "series vs closed form " + fmt(m.at("kernel_series_defect")) + " < 1e-10");
        l.require(m.at("kernel_symmetry_defect").get<double>() < 1e-12,
                  "conjugate symmetry " + fmt(m.at("kernel_symmetry_defect")) + " < 1e-12");
        runtime(l, phase(c, "kernel_identity"), 5.0);
        lines.push_back(l);
    }
    {
        Line l{2, "star algebra"};
        const CheckResult& c = find(report, "algebra");
        const Json& m = c.measured;
        l.require(m.at("star_inverse_residue").get<double>() < 1e-10,
                  "star inverse residue " + fmt(m.at("star_inverse_residue")) + " < 1e-10");
        l.require(m.at("symmetrize_exact").get<bool>(), "symmetrize(1 - q conj(a)) exact");
        runtime(l, phase(c, "star_algebra"), 5.0);
        lines.push_back(l);
    }
    {
        Line l{3, "representation formula"};
        const CheckResult& c = find(report, "algebra");
        l.require(c.measured.at("representation_defect").get<double>() < 1e-12,
                  "extension defect " + fmt(c.measured.at("representation_defect")) + " < 1e-12");
        runtime(l, phase(c, "representation"), 10.0);
        internal(l, c);
        lines.push_back(l);
    }
    {
        Line l{4, "averaged kernels"};
        const CheckResult& c = find(report, "kernels");
        const Json& m = c.measured;
        l.require(m.at("sphere_average_defect_K").get<double>() < 1e-3,
                  "sphere average vs K " + fmt(m.at("sphere_average_defect_K")) + " < 1e-3");
        l.require(m.at("intrinsic_defect_K").get<double>() < 1e-10 && m.at("intrinsic_defect_H").get<double>() < 1e-10,
                  "intrinsic defects K " + fmt(m.at("intrinsic_defect_K")) + ", H " + fmt(m.at("intrinsic_defect_H")) +
                      " < 1e-10");
        for (const Json& row : m.at("K_minimum")) {
            const double v = row.at("min_abs_K"), b = row.at("bound");
            l.require(v >= b * (1.0 - 1e-6), "min |K| " + fmt(v) + " >= 1/(1-|w|^2) = " + fmt(b));
        }
        for (const Json& row : m.at("K_hardy_norm")) {
            const double v = row.at("norm2_squared"), b = row.at("bound");
            l.require(v <= b * (1.0 + 1e-2), "||K||^2 " + fmt(v) + " <= 1/(1-|w|) = " + fmt(b));
        }
        runtime(l, phase(c, "averaged_kernels"), 60.0);
        internal(l, c);
        lines.push_back(l);
    }
    {
        Line l{5, "geometry formulas"};
        const CheckResult& area = find(report, "L5.2");
        const CheckResult& vol = find(report, "L5.3");
        l.require(area.measured.at("mc_relative_error").get<double>() < 0.01,
                  "disc area vs MC " + fmt(area.measured.at("mc_relative_error")) + " < 1%");
        for (const Json& row : vol.measured.at("eta_ball_at_zero")) {
            const double r = row.at("r"), eta = row.at("eta"), sigma = row.at("sigma");
            l.require(std::abs(eta - std::pow(r, 4)) <= 3.0 * sigma + 1e-12, "eta(B(0," + fmt(r) + ")) = r^4");
        }
        bool lower = true;
        for (const Json& row : vol.measured.at("lower_bound_grid")) {
            const double eta = row.at("eta"), sigma = row.at("sigma"), bound = row.at("lower_bound");
            lower = lower && eta >= bound * (1.0 - 3.0 * sigma / eta - 1e-12);
        }
        l.require(lower, "eta(B) >= r^4 d^8 (1 - 3 sigma) on the 5x3 grid");
        const double e = vol.measured.at("fitted_exponent");
        l.require(e >= 7.5 && e <= 8.5, "fitted d-exponent " + fmt(e) + " in [7.5, 8.5]");
        runtime(l, area.runtime_seconds + vol.runtime_seconds, 180.0);
        internal(l, area);
        internal(l, vol);
        lines.push_back(l);
    }
    {
        Line l{6, "covering and packing"};
        const CheckResult& c = find(report, "L5.4");
        const Json& m = c.measured;
        l.require(m.at("cover_fraction").get<double>() == 1.0, "cover catches " + fmt(m.at("cover_fraction")) + " of points");
        l.require(m.at("packing_overlaps").get<std::size_t>() == 0, "packing overlaps " + m.at("packing_overlaps").dump());
        const double ce = m.at("cover_exponent"), pe = m.at("pack_exponent");
        l.require(ce >= -4.5 && ce <= -3.5, "cover exponent " + fmt(ce) + " in [-4.5, -3.5]");
        l.require(pe >= -4.5 && pe <= -3.5, "packing exponent " + fmt(pe) + " in [-4.5, -3.5]");
        runtime(l, c.runtime_seconds, 120.0);
        internal(l, c);
        lines.push_back(l);
    }
    {
        Line l{7, "Hardy characterization"};
        const CheckResult& c = find(report, "T3.9");
        const Json& m = c.measured;
        l.require(m.at("real_atoms_identical").get<bool>(), "real atoms: slice-box and symmetric-box ratios identical");
        l.require(bounded(m.at("slice_lebesgue_hardy_box")),
                  "slice Lebesgue hardy-box sup " + fmt(m.at("slice_lebesgue_hardy_box").at("sup_ratio")) + " bounded");
        for (const Json& fr : m.at("functional_K")) {
            l.require(bounded(fr), "K family p = " + fmt(fr.at("p")) + " max ratio " + fmt(fr.at("max_ratio")) +
                                                     " bounded");
        }
        runtime(l, phase(c, "characterization"), 120.0);
        internal(l, c);
        lines.push_back(l);
    }
    {
        Line l{8, "Bergman characterization"};
        const CheckResult& c = find(report, "T4.8");
        const Json& m = c.measured;
        const double sup = m.at("slice_lebesgue_tube").at("sup_ratio");
        l.require(sup <= 1.0 + 1e-2, "slice Lebesgue tube sup " + fmt(sup) + " <= 1.01");
        l.require(m.at("witness_on_own_slice").get<bool>(), "witness on the measure's slice");
        for (const Json& fr : m.at("functional_H")) {
            l.require(bounded(fr), "H family p = " + fmt(fr.at("p")) + " max ratio " + fmt(fr.at("max_ratio")) +
                                                     " bounded");
        }
        runtime(l, c.runtime_seconds, 120.0);
        internal(l, c);
        lines.push_back(l);
    }
    {
        Line l{9, "sharpness"};
        const CheckResult& c = find(report, "T5");
        const Json& m = c.measured;
        l.require(bounded(m.at("a_tube")) && m.at("a_ball_min").get<double>() > 0.0,
                  "(a) tube bounded, mu(B)/d^4 >= " + fmt(m.at("a_ball_min")) + " > 0");
        const std::vector<double> ratios = m.at("b_tube_ratios");
        bool increasing = true;
        for (std::size_t k = 1; k < ratios.size(); ++k) increasing = increasing && ratios[k] > ratios[k - 1];
        l.require(increasing, "(b) tube ratios strictly increasing in k");
        const double e = m.at("b_tube_exponent");
        l.require(std::abs(e + 0.5) <= 0.15, "(b) tube-ratio exponent " + fmt(e) + " in -0.5 +- 0.15");
        const Json& balls = m.at("b_balls");
        const double C = balls.at(0).at("max_ball_over_d8_eps");
        bool below = true;
        for (const Json& b : balls) below = below && b.at("max_ball_over_d8_eps").get<double>() <= C * 1.1;
        l.require(below, "(b) mu(B(alpha_k^j, r)) <= C d_k^{8-eps} (1.1), C = " + fmt(C));
        runtime(l, c.runtime_seconds, 180.0);
        internal(l, c);
        lines.push_back(l);
    }
    {
        Line l{10, "inequality battery"};
        const CheckResult& c = find(report, "T3.9");
        const Json& m = c.measured;
        for (const Json& row : m.at("representation_inequality")) {
            l.require(row.at("violations").get<std::size_t>() == 0,
                      "p = " + fmt(row.at("p")) + ": " + row.at("violations").dump() + " violations in 1e6");
        }
        const double s = m.at("submean_max_ratio");
        l.require(s <= 1.0, "submean ratio " + fmt(s) + " <= 1 on 1e3 configurations");
        runtime(l, phase(c, "inequalities"), 60.0);
        lines.push_back(l);
    }
    {
        Line l{11, "determinism"};
        l.require(to_json(report).dump() == to_json(again).dump(), "two default runs give byte-identical reports");
        lines.push_back(l);
    }

    int passed = 0;
    for (const Line& l : lines) {
        passed += l.pass ? 1 : 0;
        std::string detail;
        for (const std::string& n : l.notes) detail += (detail.empty() ? "" : "; ") + n;
        std::printf("criterion %2d %-24s %s: %s\n", l.id, l.title.c_str(), l.pass ? "PASS" : "FAIL", detail.c_str());
    }
    std::printf("acceptance: %d/%zu criteria pass\n", passed, lines.size());
    return passed == static_cast<int>(lines.size()) ? 0 : 1;
}

}  // namespace

int main() {
    try {
        return run();
    } catch (const std::exception& e) {
        std::printf("acceptance: aborted: %s\n", e.what());
        return 1;
    }
}

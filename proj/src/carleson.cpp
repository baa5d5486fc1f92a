#include "sqc/carleson.hpp"

#include "sqc/errors.hpp"
#include "sqc/parallel.hpp"
#include "sqc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sqc {

namespace {

constexpr double kPi = std::numbers::pi;

/// Per-scale maxima and their log-log slope.
void fill_growth(CarlesonReport& rep, const std::vector<double>& scale_of_point) {
    std::map<double, double> per;
    for (std::size_t k = 0; k < rep.ratios.size(); ++k) {
        auto [it, fresh] = per.emplace(scale_of_point[k], rep.ratios[k]);
        if (!fresh) it->second = std::max(it->second, rep.ratios[k]);
    }
    std::vector<double> xs, ys;
    for (const auto& [s, m] : per) {
        rep.scales.push_back(s);
        rep.scale_max.push_back(m);
        if (s > 0.0 && m > 0.0) {
            xs.push_back(s);
            ys.push_back(m);
        }
    }
    rep.growth_exponent = xs.size() >= 2 ? loglog_slope(xs, ys) : 0.0;
    rep.bounded = std::isfinite(rep.sup_ratio) && rep.growth_exponent >= kBoundedSlope &&
                  (rep.threshold <= 0.0 || rep.sup_ratio <= rep.threshold);
}

std::string describe(const BoxGrid& g) {
    std::ostringstream os;
    os << g.thetas.size() << " thetas in [0,pi] x " << g.gaps.size() << " values of 1-r";
    if (!g.axes.empty()) os << " x " << g.axes.size() << " slices";
    return os.str();
}

std::string describe(const PointGrid& g) {
    std::ostringstream os;
    os << g.alphas.size() << " centres, r = " << g.r;
    return os.str();
}

/// First index within relative 1e-12 of the maximum (ties go to grid order).
std::size_t argmax(const std::vector<double>& v) {
    double top = v.front();
    for (double x : v) top = std::max(top, x);
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] >= top - 1e-12 * std::abs(top)) return k;
    }
    return 0;
}

}  // namespace

std::string to_string(Condition c) {
    switch (c) {
        case Condition::HardyBox: return "hardy_box";
        case Condition::SliceBox: return "slice_box";
        case Condition::BergmanTube: return "bergman_tube";
        case Condition::Ball: return "ball_beta";
    }
    return "unknown";
}

Condition condition_from_string(const std::string& name) {
    if (name == "hardy-box" || name == "symmetric-box" || name == "hardy_box") return Condition::HardyBox;
    if (name == "slice-box" || name == "slice_box") return Condition::SliceBox;
    if (name == "tube" || name == "bergman_tube") return Condition::BergmanTube;
    if (name == "ball" || name == "ball_beta") return Condition::Ball;
    throw ConfigInvalid("unknown condition: " + name);
}

BoxGrid BoxGrid::standard() {
    BoxGrid g;
    for (int k = 0; k < 64; ++k) g.thetas.push_back(kPi * k / 63.0);
    for (int k = 1; k <= 10; ++k) g.gaps.push_back(std::ldexp(1.0, -k));
    g.axes = {UnitImaginary::i(), UnitImaginary::j(), UnitImaginary::k(), -UnitImaginary::i(),
              UnitImaginary(1.0, 1.0, 0.0), UnitImaginary(1.0, -1.0, 1.0)};
    return g;
}

PointGrid PointGrid::standard(double r, std::uint64_t seed) {
    PointGrid g;
    g.r = r;
    std::vector<UnitImaginary> axes{UnitImaginary::i(), UnitImaginary::j(), UnitImaginary::k()};
    Rng rng = make_rng(seed, 0);
    for (int k = 0; k < 3; ++k) axes.push_back(random_unit_imaginary(rng));
    for (double m : {0.0, 0.3, 0.5, 0.7, 0.8, 0.9, 0.95, 0.98, 0.99, 0.995}) {
        g.alphas.push_back(Quaternion{m});
        if (m == 0.0) continue;
        for (const UnitImaginary& I : axes) {
            for (double t : {kPi / 4.0, kPi / 2.0}) g.alphas.push_back(I.embed(std::polar(m, t)));
        }
    }
    return g;
}

PointGrid PointGrid::along(const UnitImaginary& I, const std::vector<double>& moduli, double r) {
    PointGrid g;
    g.r = r;
    for (double m : moduli) g.alphas.push_back(I.embed(0.0, m));
    return g;
}

CarlesonReport check_hardy_box(const MeasureSpec& mu, const BoxGrid& grid, const MeasureOptions& opt) {
    CarlesonReport rep;
    rep.condition = Condition::HardyBox;
    rep.grid = describe(BoxGrid{grid.thetas, grid.gaps, {}});
    std::vector<SymmetricBox> boxes;
    std::vector<double> scale;
    for (double gap : grid.gaps) {
        for (double t : grid.thetas) {
            boxes.push_back({t, 1.0 - gap});
            scale.push_back(gap);
        }
    }
    rep.ratios.resize(boxes.size());
    parallel_for(boxes.size(), [&](std::size_t k) {
        rep.ratios[k] = region_measure(mu, boxes[k], opt) / arc_length(boxes[k].r);
    });
    const std::size_t best = argmax(rep.ratios);
    rep.sup_ratio = rep.ratios[best];
    rep.witness = boxes[best];
    fill_growth(rep, scale);
    return rep;
}

CarlesonReport check_slice_box(const MeasureSpec& mu, const BoxGrid& grid) {
    CarlesonReport rep;
    rep.condition = Condition::SliceBox;
    rep.grid = describe(grid);
    std::vector<CarlesonBox> boxes;
    std::vector<double> scale;
    for (double gap : grid.gaps) {
        for (double t : grid.thetas) {
            for (const UnitImaginary& I : grid.axes) {
                boxes.push_back({t, 1.0 - gap, I});
                scale.push_back(gap);
            }
        }
    }
    rep.ratios.resize(boxes.size());
    parallel_for(boxes.size(), [&](std::size_t k) {
        rep.ratios[k] = slice_box_measure(mu, boxes[k]) / arc_length(boxes[k].r);
    });
    const std::size_t best = argmax(rep.ratios);
    rep.sup_ratio = rep.ratios[best];
    rep.witness = boxes[best];
    fill_growth(rep, scale);
    return rep;
}

CarlesonReport check_bergman_tube(const MeasureSpec& mu, const PointGrid& grid, const MeasureOptions& opt) {
    CarlesonReport rep;
    rep.condition = Condition::BergmanTube;
    rep.grid = describe(grid);
    std::vector<double> scale;
    rep.ratios.resize(grid.alphas.size());
    parallel_for(grid.alphas.size(), [&](std::size_t k) {
        const Quaternion& a = grid.alphas[k];
        rep.ratios[k] = region_measure(mu, Tube{a, grid.r}, opt) / disc_area(a.norm(), grid.r);
    });
    for (const Quaternion& a : grid.alphas) scale.push_back(boundary_distance(a));
    const std::size_t best = argmax(rep.ratios);
    rep.sup_ratio = rep.ratios[best];
    rep.witness = Tube{grid.alphas[best], grid.r};
    fill_growth(rep, scale);
    return rep;
}

CarlesonReport check_ball(const MeasureSpec& mu, double beta, const PointGrid& grid, const MeasureOptions& opt) {
    CarlesonReport rep;
    rep.condition = Condition::Ball;
    rep.beta = beta;
    rep.grid = describe(grid);
    std::vector<double> scale;
    rep.ratios.resize(grid.alphas.size());
    for (std::size_t k = 0; k < grid.alphas.size(); ++k) {
        const Quaternion& a = grid.alphas[k];
        MeasureOptions o = opt;
        o.seed = opt.seed + k;
        rep.ratios[k] = region_measure(mu, PseudoBall{a, grid.r}, o) / std::pow(boundary_distance(a), beta);
        scale.push_back(boundary_distance(a));
    }
    const std::size_t best = argmax(rep.ratios);
    rep.sup_ratio = rep.ratios[best];
    rep.witness = PseudoBall{grid.alphas[best], grid.r};
    fill_growth(rep, scale);
    return rep;
}

std::string to_string(TestFamily f) {
    switch (f) {
        case TestFamily::KernelK: return "K";
        case TestFamily::KernelH: return "H";
        case TestFamily::Monomials: return "monomials";
    }
    return "unknown";
}

FunctionalReport functional_carleson_test(const MeasureSpec& mu, double p, Space space, const FamilySpec& family,
                                          const MeasureOptions& opt, const NormGrid& norm_grid) {
    if (!(p > 0.0)) throw std::invalid_argument("functional_carleson_test: p must be positive");
    FunctionalReport rep;
    rep.family = family.kind;
    rep.space = space;
    rep.p = p;
    std::vector<SliceFunction> fs;
    std::vector<NormGrid> grids;
    if (family.kind == TestFamily::Monomials) {
        for (unsigned n : family.degrees) {
            fs.push_back([n](const Quaternion& q) {
                Quaternion v = kOne;
                for (unsigned k = 0; k < n; ++k) v = v * q;
                return v;
            });
            rep.parameters.push_back(1.0 / (static_cast<double>(n) + 1.0));
            grids.push_back(norm_grid);
        }
    } else {
        const KernelKind kind = family.kind == TestFamily::KernelK ? KernelKind::AveragedK : KernelKind::AveragedH;
        for (const Quaternion& w : family.ws) {
            fs.push_back(KernelSpec(kind, w, 2.0 / p).function());
            rep.parameters.push_back(boundary_distance(w));
            NormGrid g = norm_grid;
            g.radii = radii_for(w.norm());
            grids.push_back(g);
        }
    }
    for (std::size_t k = 0; k < fs.size(); ++k) {
        // |f| is constant on spheres [q] for intrinsic f, so one slice carries the sup.
        if (is_intrinsic(fs[k], 64).intrinsic) grids[k].n_sphere = 1;
        const NormEstimate n = space == Space::Hardy ? hardy_norm(fs[k], p, grids[k]) : bergman_norm(fs[k], p, grids[k]);
        const double num = integrate(fs[k], p, mu, opt);
        rep.ratios.push_back(num / std::pow(n.value, p));
    }
    for (double r : rep.ratios) rep.max_ratio = std::max(rep.max_ratio, r);
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < rep.ratios.size(); ++k) {
        if (rep.ratios[k] > 0.0) {
            xs.push_back(rep.parameters[k]);
            ys.push_back(rep.ratios[k]);
        }
    }
    rep.growth_exponent = xs.size() >= 2 ? loglog_slope(xs, ys) : 0.0;
    rep.bounded = std::isfinite(rep.max_ratio) && rep.growth_exponent >= kBoundedSlope;
    return rep;
}

}  // namespace sqc

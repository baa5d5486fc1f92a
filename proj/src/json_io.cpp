#include "sqc/json_io.hpp"

#include "sqc/errors.hpp"

#include <fstream>
#include <sstream>

namespace sqc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ConfigInvalid(std::string("json: missing field '") + key + "'");
    }
    return j.at(key);
}

std::vector<double> numbers(const Json& j) {
    std::vector<double> v;
    if (!j.is_array()) throw ConfigInvalid("json: expected an array of numbers");
    for (const Json& x : j) {
        if (!x.is_number()) throw ConfigInvalid("json: expected a number");
        v.push_back(x.get<double>());
    }
    return v;
}

}  // namespace

Json to_json(const Quaternion& q) { return Json::array({q.w, q.x, q.y, q.z}); }

Json to_json(const UnitImaginary& u) { return Json::array({u.x(), u.y(), u.z()}); }

Json to_json(const SliceSeries& f) {
    Json c = Json::array();
    for (const Quaternion& a : f.coeffs()) c.push_back(to_json(a));
    return {{"coeffs", c}, {"radius", f.radius()}};
}

Json to_json(const MeasureSpec& mu) {
    return std::visit(
        Overloaded{[](const AtomicMeasure& m) {
                       Json atoms = Json::array();
                       for (const auto& [q, w] : m.atoms) atoms.push_back({{"point", to_json(q)}, {"weight", w}});
                       return Json{{"kind", "atomic"}, {"atoms", atoms}};
                   },
                   [](const SliceLebesgueMeasure& m) {
                       return Json{{"kind", "slice_lebesgue"}, {"axis", to_json(m.axis)}, {"radial", m.radial}};
                   },
                   [](const RotationalMeasure& m) {
                       Json j{{"kind", "rotational"}, {"radial", m.radial}, {"y_power", m.y_power}};
                       if (m.zonal_axis) {
                           j["nu"] = {{"kind", "zonal"}, {"axis", to_json(*m.zonal_axis)}, {"strength", m.zonal_strength}};
                       } else {
                           j["nu"] = {{"kind", "uniform"}};
                       }
                       return j;
                   },
                   [](const TubeCounterexampleMeasure& m) {
                       return Json{{"kind", "tube_counterexample"}, {"r", m.r},          {"eps", m.eps},
                                   {"axis", to_json(m.axis)},       {"heights", m.heights}, {"densities", m.densities},
                                   {"tubes", m.heights.size()}};
                   }},
        mu);
}

Json to_json(const Region& region) {
    Json j = std::visit(
        Overloaded{
            [](const SliceDisc& s) { return Json{{"alpha", to_json(s.alpha)}, {"r", s.r}, {"axis", to_json(s.axis)}}; },
            [](const Tube& t) { return Json{{"alpha", to_json(t.alpha)}, {"r", t.r}}; },
            [](const PseudoBall& b) { return Json{{"alpha", to_json(b.alpha)}, {"r", b.r}}; },
            [](const CarlesonBox& c) { return Json{{"theta0", c.theta0}, {"r", c.r}, {"axis", to_json(c.axis)}}; },
            [](const SymmetricBox& s) { return Json{{"theta0", s.theta0}, {"r", s.r}}; }},
        region);
    j["kind"] = region_kind(region);
    return j;
}

Json to_json(const GeometrySummary& g) {
    Json j{{"d", g.d},
           {"euclidean_center", to_json(g.euclidean_center)},
           {"euclidean_radius", g.euclidean_radius},
           {"area", g.area}};
    if (g.eta_volume >= 0.0) {
        j["eta_volume"] = g.eta_volume;
        j["eta_sigma"] = g.eta_sigma;
    }
    return j;
}

Json to_json(const VolumeEstimate& v) {
    return {{"value", v.value}, {"sigma", v.sigma}, {"tube_volume", v.tube_volume}, {"samples", v.samples},
            {"hits", v.hits}};
}

Json to_json(const NormEstimate& n) {
    return {{"value", n.value},
            {"p", n.p},
            {"space", to_string(n.space)},
            {"sup_witness", to_json(n.sup_witness)},
            {"min_slice_value", n.min_slice_value},
            {"error_bar", n.error_bar},
            {"grid",
             {{"n_sphere", n.grid.n_sphere},
              {"n_theta", n.grid.n_theta},
              {"n_radial", n.grid.n_radial},
              {"radii", n.grid.radii},
              {"normalization", n.grid.normalization == Normalization::Raw ? "raw" : "normalized"}}}};
}

Json to_json(const CarlesonReport& r) {
    Json j{{"condition", to_string(r.condition)},
           {"sup_ratio", r.sup_ratio},
           {"witness", to_json(r.witness)},
           {"grid", r.grid},
           {"scales", r.scales},
           {"scale_max", r.scale_max},
           {"growth_exponent", r.growth_exponent},
           {"verdict", r.bounded ? "bounded over grid" : "growth detected"}};
    if (r.condition == Condition::Ball) j["beta"] = r.beta;
    if (r.threshold > 0.0) j["threshold"] = r.threshold;
    return j;
}

Json to_json(const FunctionalReport& r) {
    return {{"family", to_string(r.family)},
            {"space", to_string(r.space)},
            {"p", r.p},
            {"parameters", r.parameters},
            {"ratios", r.ratios},
            {"max_ratio", r.max_ratio},
            {"growth_exponent", r.growth_exponent},
            {"verdict", r.bounded ? "bounded over grid" : "growth detected"}};
}

Quaternion quaternion_from_json(const Json& j) {
    if (j.is_number()) return Quaternion{j.get<double>()};
    const std::vector<double> v = numbers(j);
    if (v.size() != 4) throw ConfigInvalid("json: quaternion needs 4 components");
    return {v[0], v[1], v[2], v[3]};
}

UnitImaginary unit_from_json(const Json& j) {
    const std::vector<double> v = numbers(j);
    if (v.size() != 3) throw ConfigInvalid("json: unit imaginary needs 3 components");
    try {
        return {v[0], v[1], v[2]};
    } catch (const std::invalid_argument& e) {
        throw ConfigInvalid(std::string("json: ") + e.what());
    }
}

SliceSeries series_from_json(const Json& j) {
    std::vector<Quaternion> c;
    const Json& coeffs = field(j, "coeffs");
    if (!coeffs.is_array()) throw ConfigInvalid("json: coeffs must be an array");
    for (const Json& a : coeffs) c.push_back(quaternion_from_json(a));
    const double radius = j.contains("radius") ? j.at("radius").get<double>() : 1.0;
    try {
        return SliceSeries(std::move(c), radius);
    } catch (const std::invalid_argument& e) {
        throw ConfigInvalid(std::string("json: ") + e.what());
    }
}

MeasureSpec measure_from_json(const Json& j) {
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "atomic") {
        AtomicMeasure m;
        for (const Json& a : field(j, "atoms")) {
            const double w = field(a, "weight").get<double>();
            if (!(w > 0.0)) throw ConfigInvalid("json: atom weights must be positive");
            m.atoms.emplace_back(quaternion_from_json(field(a, "point")), w);
        }
        return m;
    }
    if (kind == "slice_lebesgue") {
        SliceLebesgueMeasure m;
        if (j.contains("axis")) m.axis = unit_from_json(j.at("axis"));
        if (j.contains("radial")) m.radial = numbers(j.at("radial"));
        return m;
    }
    if (kind == "rotational") {
        RotationalMeasure m;
        if (j.contains("radial")) m.radial = numbers(j.at("radial"));
        if (j.contains("y_power")) m.y_power = j.at("y_power").get<double>();
        if (j.contains("nu")) {
            const Json& nu = j.at("nu");
            const std::string nk = field(nu, "kind").get<std::string>();
            if (nk == "zonal") {
                m.zonal_axis = unit_from_json(field(nu, "axis"));
                m.zonal_strength = field(nu, "strength").get<double>();
                if (std::abs(m.zonal_strength) > 1.0) throw ConfigInvalid("json: zonal strength must lie in [-1, 1]");
            } else if (nk != "uniform") {
                throw ConfigInvalid("json: unknown nu kind " + nk);
            }
        }
        return m;
    }
    if (kind == "tube_counterexample") {
        const double r = field(j, "r").get<double>();
        const double eps = field(j, "eps").get<double>();
        const std::size_t tubes = field(j, "tubes").get<std::size_t>();
        const UnitImaginary axis = j.contains("axis") ? unit_from_json(j.at("axis")) : UnitImaginary::i();
        try {
            return build_counterexample(r, eps, tubes, axis);
        } catch (const std::invalid_argument& e) {
            throw ConfigInvalid(std::string("json: ") + e.what());
        }
    }
    throw ConfigInvalid("json: unknown measure kind " + kind);
}

Quaternion parse_quaternion(const std::string& text) {
    std::string t = text;
    for (char& c : t) {
        if (c == '[' || c == ']' || c == ',') c = ' ';
    }
    std::istringstream is(t);
    std::vector<double> v;
    double x;
    while (is >> x) v.push_back(x);
    if (!is.eof()) throw ConfigInvalid("cannot parse quaternion: " + text);
    if (v.size() == 1) return Quaternion{v[0]};
    if (v.size() != 4) throw ConfigInvalid("quaternion needs 1 or 4 components: " + text);
    return {v[0], v[1], v[2], v[3]};
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigInvalid("invalid json in " + path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace sqc

#include "sqc/carleson.hpp"
#include "sqc/errors.hpp"
#include "sqc/geometry.hpp"
#include "sqc/json_io.hpp"
#include "sqc/kernels.hpp"
#include "sqc/suite.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct VerifyArgs {
    std::string only;
    bool only_given = false;
    std::uint64_t seed = 2024;
    std::string out = "sqc-report";
    std::string config;
    std::size_t mc = 0;
};

struct EvalArgs {
    std::string series;
    std::string kernel;
    std::string w = "0";
    double power = 1.0;
    std::vector<std::string> at;
};

struct NormArgs {
    std::string series;
    std::string kernel = "K";
    std::string w = "0";
    double power = 1.0;
    double p = 2.0;
    std::string space = "hardy";
    std::size_t n_sphere = 200;
    bool normalized = false;
};

struct GeometryArgs {
    std::string region = "ball";
    std::string alpha = "0";
    double r = 0.5;
    std::size_t mc = 0;
    std::uint64_t seed = 1;
};

struct CarlesonArgs {
    std::string measure;
    std::string condition = "hardy-box";
    double beta = 8.0;
    double r = 0.5;
    std::string grid = "standard";
    std::size_t mc = 200'000;
    std::uint64_t seed = 11;
};

struct CounterexampleArgs {
    double r = 0.3;
    double eps = 0.5;
    std::size_t tubes = 8;
    std::string out;
};

sqc::SliceFunction function_from(const std::string& series_path, const std::string& kernel, const std::string& w,
                                 double power) {
    if (!series_path.empty()) {
        const sqc::SliceSeries f = sqc::series_from_json(sqc::read_json_file(series_path));
        return [f](const sqc::Quaternion& q) { return sqc::eval(f, q); };
    }
    sqc::KernelKind kind;
    try {
        kind = sqc::kernel_kind_from_string(kernel);
    } catch (const std::invalid_argument& e) {
        throw sqc::ConfigInvalid(e.what());
    }
    return sqc::KernelSpec(kind, sqc::parse_quaternion(w), power).function();
}

void print(const sqc::Json& j) { std::cout << j.dump(2) << '\n'; }

int run_verify(const VerifyArgs& a) {
    sqc::SuiteConfig cfg;
    if (!a.config.empty()) cfg = sqc::suite_config_from_json(sqc::read_json_file(a.config));
    cfg.seed = a.seed;
    if (a.only_given) cfg.only = sqc::parse_check_list(a.only);
    if (a.mc > 0) cfg.mc_samples = a.mc;
    const sqc::SuiteReport report = sqc::run_suite(cfg);
    sqc::emit(report, a.out);
    for (const sqc::CheckResult& c : report.checks) {
        std::cout << c.id << ": " << sqc::to_string(c.status);
        for (const std::string& f : c.failures) std::cout << "\n  failure: " << f;
        for (const std::string& f : c.findings) std::cout << "\n  finding: " << f;
        std::cout << '\n';
    }
    std::cout << "report written to " << a.out << '\n';
    return report.failed() ? kExitFailure : 0;
}

int run_eval(const EvalArgs& a) {
    const sqc::SliceFunction f = function_from(a.series, a.kernel.empty() ? "k" : a.kernel, a.w, a.power);
    sqc::Json out = sqc::Json::array();
    for (const std::string& s : a.at) {
        const sqc::Quaternion q = sqc::parse_quaternion(s);
        out.push_back({{"q", sqc::to_json(q)}, {"value", sqc::to_json(f(q))}});
    }
    print(out);
    return 0;
}

int run_norm(const NormArgs& a) {
    const sqc::SliceFunction f = function_from(a.series, a.kernel, a.w, a.power);
    sqc::NormGrid g;
    g.n_sphere = a.n_sphere;
    g.normalization = a.normalized ? sqc::Normalization::Normalized : sqc::Normalization::Raw;
    if (a.series.empty()) g.radii = sqc::radii_for(sqc::parse_quaternion(a.w).norm());
    if (a.space != "hardy" && a.space != "bergman") throw sqc::ConfigInvalid("space must be hardy or bergman");
    const sqc::NormEstimate n = a.space == "hardy" ? sqc::hardy_norm(f, a.p, g) : sqc::bergman_norm(f, a.p, g);
    print(sqc::to_json(n));
    return 0;
}

int run_geometry(const GeometryArgs& a) {
    const sqc::Quaternion alpha = sqc::parse_quaternion(a.alpha);
    if (alpha.norm() >= 1.0 || !(a.r > 0.0 && a.r < 1.0)) throw sqc::ConfigInvalid("need |alpha| < 1 and r in (0,1)");
    sqc::GeometrySummary g = sqc::disc_geometry(alpha, a.r);
    if (a.region == "tube") {
        g.eta_volume = sqc::tube_volume(alpha, a.r);
    } else if (a.region == "ball") {
        const sqc::VolumeEstimate v = sqc::ball_volume_mc(alpha, a.r, a.mc > 0 ? a.mc : 1'000'000, a.seed);
        g.eta_volume = v.value;
        g.eta_sigma = v.sigma;
    } else if (a.region != "disc") {
        throw sqc::ConfigInvalid("region must be ball, tube or disc");
    }
    sqc::Json j = sqc::to_json(g);
    j["region"] = a.region;
    print(j);
    return 0;
}

int run_carleson(const CarlesonArgs& a) {
    if (a.grid != "standard") throw sqc::ConfigInvalid("only the standard grid is available");
    const sqc::MeasureSpec mu = sqc::measure_from_json(sqc::read_json_file(a.measure));
    sqc::MeasureOptions opt;
    opt.mc_samples = a.mc;
    opt.seed = a.seed;
    sqc::CarlesonReport rep;
    switch (sqc::condition_from_string(a.condition)) {
        case sqc::Condition::HardyBox: rep = sqc::check_hardy_box(mu, sqc::BoxGrid::standard(), opt); break;
        case sqc::Condition::SliceBox: rep = sqc::check_slice_box(mu); break;
        case sqc::Condition::BergmanTube: rep = sqc::check_bergman_tube(mu, sqc::PointGrid::standard(a.r), opt); break;
        case sqc::Condition::Ball: rep = sqc::check_ball(mu, a.beta, sqc::PointGrid::standard(a.r), opt); break;
    }
    print(sqc::to_json(rep));
    return 0;
}

int run_counterexample(const CounterexampleArgs& a) {
    sqc::TubeCounterexampleMeasure m;
    try {
        m = sqc::build_counterexample(a.r, a.eps, a.tubes);
    } catch (const std::invalid_argument& e) {
        throw sqc::ConfigInvalid(e.what());
    }
    const sqc::Json j = sqc::to_json(sqc::MeasureSpec{m});
    if (a.out.empty()) {
        print(j);
    } else {
        sqc::write_json_file(a.out, j);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for slice regular functions, Hardy and Bergman spaces on the quaternionic ball"};
    app.require_subcommand(1);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run the verification suite and write reports");
    auto* only = verify->add_option("--only", va.only, "Comma-separated check ids");
    verify->add_option("--seed", va.seed, "Global seed");
    verify->add_option("--out", va.out, "Output directory");
    verify->add_option("--config", va.config, "Suite config JSON");
    verify->add_option("--mc", va.mc, "Monte Carlo samples per estimate");

    EvalArgs ea;
    auto* eval = app.add_subcommand("eval", "Evaluate a series or kernel at points");
    eval->add_option("--series", ea.series, "Series JSON file");
    eval->add_option("--kernel", ea.kernel, "Kernel k, h, K or H");
    eval->add_option("--w", ea.w, "Kernel parameter [w,x,y,z]");
    eval->add_option("--power", ea.power, "Power applied to the kernel");
    eval->add_option("--at", ea.at, "Evaluation point [w,x,y,z] (repeatable)")->required()->allow_extra_args(false);

    NormArgs na;
    auto* norm = app.add_subcommand("norm", "Hardy or Bergman norm of a series or kernel");
    norm->add_option("--series", na.series, "Series JSON file");
    norm->add_option("--kernel", na.kernel, "Kernel k, h, K or H");
    norm->add_option("--w", na.w, "Kernel parameter");
    norm->add_option("--power", na.power, "Power applied to the kernel");
    norm->add_option("--p", na.p, "Exponent p > 0");
    norm->add_option("--space", na.space, "hardy or bergman");
    norm->add_option("--n-sphere", na.n_sphere, "Slice directions sampled");
    norm->add_flag("--normalized", na.normalized, "Divide circle integrals by 2 pi");

    GeometryArgs ga;
    auto* geo = app.add_subcommand("geometry", "Slice disc, tube and ball geometry");
    geo->add_option("--region", ga.region, "ball, tube or disc");
    geo->add_option("--alpha", ga.alpha, "Centre [w,x,y,z]");
    geo->add_option("--r", ga.r, "Pseudohyperbolic radius");
    geo->add_option("--mc", ga.mc, "Monte Carlo samples for the ball volume");
    geo->add_option("--seed", ga.seed, "Seed");

    CarlesonArgs ca;
    auto* carl = app.add_subcommand("carleson-check", "Carleson-type condition over a grid");
    carl->add_option("--measure", ca.measure, "Measure JSON file")->required();
    carl->add_option("--condition", ca.condition, "hardy-box, slice-box, tube or ball");
    carl->add_option("--beta", ca.beta, "Exponent for the ball condition");
    carl->add_option("--r", ca.r, "Radius for tubes and balls");
    carl->add_option("--grid", ca.grid, "Grid name");
    carl->add_option("--mc", ca.mc, "Monte Carlo samples for ball masses");
    carl->add_option("--seed", ca.seed, "Seed");

    CounterexampleArgs xa;
    auto* cex = app.add_subcommand("counterexample", "Build the tube counterexample measure");
    cex->add_option("--r", xa.r, "Tube radius");
    cex->add_option("--eps", xa.eps, "Exponent gap");
    cex->add_option("--tubes", xa.tubes, "Number of tubes");
    cex->add_option("--out", xa.out, "Output JSON file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }
    va.only_given = only->count() > 0;

    try {
        if (*verify) return run_verify(va);
        if (*eval) return run_eval(ea);
        if (*norm) return run_norm(na);
        if (*geo) return run_geometry(ga);
        if (*carl) return run_carleson(ca);
        if (*cex) return run_counterexample(xa);
    } catch (const sqc::ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const sqc::Json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return 0;
}

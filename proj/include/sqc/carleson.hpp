#pragma once

#include "sqc/kernels.hpp"
#include "sqc/measures.hpp"

#include <string>
#include <vector>

namespace sqc {

enum class Condition { HardyBox, SliceBox, BergmanTube, Ball };

std::string to_string(Condition c);
/// Accepts hardy-box (alias symmetric-box), slice-box, tube, ball.
Condition condition_from_string(const std::string& name);

struct BoxGrid {
    std::vector<double> thetas;
    /// Values of 1 - r.
    std::vector<double> gaps;
    /// Slices scanned by the slice-box condition.
    std::vector<UnitImaginary> axes;

    /// 64 thetas in [0, pi], 1 - r in {2^-1, ..., 2^-10}, axes i, j, k, -i and two oblique.
    static BoxGrid standard();
};

struct PointGrid {
    std::vector<Quaternion> alphas;
    double r = 0.5;

    /// Moduli up to 0.995 along the axes i, j, k and random directions.
    static PointGrid standard(double r = 0.5, std::uint64_t seed = 17);
    /// alpha = |alpha| I for the given moduli.
    static PointGrid along(const UnitImaginary& I, const std::vector<double>& moduli, double r);
};

struct CarlesonReport {
    Condition condition = Condition::HardyBox;
    double sup_ratio = 0.0;
    Region witness = SymmetricBox{0.0, 0.5};
    /// Ratio per grid point, in grid order.
    std::vector<double> ratios;
    /// Per-scale maxima against the scale (1 - r for boxes, d for tubes and balls).
    std::vector<double> scales;
    std::vector<double> scale_max;
    /// Log-log slope of scale_max against the scale; negative means growth toward the boundary.
    double growth_exponent = 0.0;
    double beta = 0.0;
    double threshold = 0.0;
    bool bounded = true;
    std::string grid;
};

/// A finite-grid verdict: slope of the per-scale maxima at least this value.
inline constexpr double kBoundedSlope = -0.1;

CarlesonReport check_hardy_box(const MeasureSpec& mu, const BoxGrid& grid = BoxGrid::standard(),
                               const MeasureOptions& opt = {});
CarlesonReport check_slice_box(const MeasureSpec& mu, const BoxGrid& grid = BoxGrid::standard());
CarlesonReport check_bergman_tube(const MeasureSpec& mu, const PointGrid& grid = PointGrid::standard(),
                                  const MeasureOptions& opt = {});
CarlesonReport check_ball(const MeasureSpec& mu, double beta, const PointGrid& grid = PointGrid::standard(),
                          const MeasureOptions& opt = {});

enum class TestFamily { KernelK, KernelH, Monomials };

std::string to_string(TestFamily f);

struct FunctionalReport {
    TestFamily family = TestFamily::KernelK;
    Space space = Space::Hardy;
    double p = 2.0;
    std::vector<double> parameters;
    std::vector<double> ratios;
    double max_ratio = 0.0;
    double growth_exponent = 0.0;
    bool bounded = true;
};

/// Test functions: K^{2/p}(., w) or H^{2/p}(., w) for w in ws, or q^n for n in degrees.
struct FamilySpec {
    TestFamily kind = TestFamily::KernelK;
    std::vector<Quaternion> ws;
    std::vector<unsigned> degrees;
};

/// Ratios of the integral of |f|^p d mu to ||f||^p over the family. The growth
/// exponent is fitted against d = 1 - |w| for kernels and 1/(n+1) for monomials.
FunctionalReport functional_carleson_test(const MeasureSpec& mu, double p, Space space, const FamilySpec& family,
                                          const MeasureOptions& opt = {}, const NormGrid& norm_grid = {});

}  // namespace sqc

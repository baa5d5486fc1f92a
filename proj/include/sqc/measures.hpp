#pragma once

#include "sqc/geometry.hpp"
#include "sqc/slice_series.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sqc {

/// Finite sum of weighted point masses.
struct AtomicMeasure {
    std::vector<std::pair<Quaternion, double>> atoms;
};

/// Planar Lebesgue measure on the slice B_I with density sum_k c_k |z|^k.
struct SliceLebesgueMeasure {
    UnitImaginary axis = UnitImaginary::i();
    std::vector<double> radial{1.0};
};

/// mu = mu_I^+ (x) nu: the same planar density g(|z|) y^{y_power} dx dy on every
/// upper half slice, mixed by the probability measure nu on S, where nu has
/// density 1 + strength (I . zonal_axis) with respect to the uniform one.
struct RotationalMeasure {
    std::vector<double> radial{1.0};
    double y_power = 0.0;
    std::optional<UnitImaginary> zonal_axis;
    double zonal_strength = 0.0;
};

/// Sum over k of c_k eta restricted to the tube Delta(alpha_k, r),
/// c_k = d_k^{4 - eps} / eta(Delta(alpha_k, r)).
struct TubeCounterexampleMeasure {
    double r = 0.3;
    double eps = 0.5;
    UnitImaginary axis = UnitImaginary::i();
    std::vector<double> heights;
    std::vector<double> densities;

    Quaternion center(std::size_t k) const { return axis.embed(0.0, heights[k]); }
    double d(std::size_t k) const { return 1.0 - heights[k]; }
};

using MeasureSpec = std::variant<AtomicMeasure, SliceLebesgueMeasure, RotationalMeasure, TubeCounterexampleMeasure>;

std::string measure_kind(const MeasureSpec& mu);

struct MeasureOptions {
    std::size_t mc_samples = 200'000;
    std::uint64_t seed = 11;
    /// Directions used for the S-factor of rotational and tube integrals.
    std::size_t n_sphere = 32;
    std::size_t n_radial = 256;
    std::size_t n_theta = 512;
};

double total_mass(const MeasureSpec& mu);

/// Mass of the part of mu carried by the real axis.
double real_mass(const MeasureSpec& mu);

/// Integral of |f|^p d mu.
double integrate(const SliceFunction& f, double p, const MeasureSpec& mu, const MeasureOptions& opt = {});

/// Integral of |f|^p d mu_I with mu_I = mu_R + mu~_I^+ + mu~_{-I}^+.
double slice_integrate(const SliceFunction& f, double p, const MeasureSpec& mu, const UnitImaginary& I,
                       const MeasureOptions& opt = {});

/// Direct Monte Carlo of the integral of |f|^p d mu for measures with an
/// eta-density (rotational, counterexample).
struct MonteCarloValue {
    double value = 0.0;
    double sigma = 0.0;
};
MonteCarloValue integrate_mc(const SliceFunction& f, double p, const MeasureSpec& mu, std::size_t n,
                             std::uint64_t seed);

/// mu(region); exact or quadrature where the geometry allows, seeded MC for balls.
double region_measure(const MeasureSpec& mu, const Region& region, const MeasureOptions& opt = {});

/// mu_I(S_I(theta0, r)).
double slice_box_measure(const MeasureSpec& mu, const CarlesonBox& box);

/// y_1 = 0.5 and y_{k+1} the nearest height with rho(I y_k, I y_{k+1}) = 4r / (1 + 4r^2),
/// so the tubes Delta(alpha_k, 2r) are pairwise disjoint.
TubeCounterexampleMeasure build_counterexample(double r, double eps, std::size_t tubes,
                                               const UnitImaginary& axis = UnitImaginary::i());

struct SubmeanReport {
    double max_ratio = 0.0;
    bool holds = true;
};

/// |f(z)|^p against 4 (1-R)^{-4} / |Delta_J(alpha,R)| times the integral of |f|^p over
/// Delta_J(alpha, R), R = (1+r)/2, for z sampled in Delta_J(alpha, r).
SubmeanReport submean_check(const SliceFunction& f, double p, std::complex<double> alpha, double r,
                            const UnitImaginary& J, std::size_t samples, std::uint64_t seed);

struct InequalityReport {
    std::size_t violations = 0;
    double max_ratio = 0.0;
};

/// |(1 - IJ) A / 2 + (1 + IJ) B / 2|^p against 2^{p-1}(|A|^p + |B|^p) (p >= 1)
/// or |A|^p + |B|^p (0 < p < 1) on random quaternions and units.
InequalityReport representation_inequality(double p, std::size_t n, std::uint64_t seed);

}  // namespace sqc

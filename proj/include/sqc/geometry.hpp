#pragma once

#include "sqc/quaternion.hpp"
#include "sqc/sampling.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace sqc {

/// d(alpha, boundary of B) = 1 - |alpha|.
inline double boundary_distance(const Quaternion& alpha) { return 1.0 - alpha.norm(); }

/// Pseudohyperbolic distance |z - a| / |1 - z conj(a)| for complex coordinates.
double rho_complex(std::complex<double> z, std::complex<double> a);

/// Slice distance for z, alpha on a common slice; throws DifferentSlices.
double rho_slice(const Quaternion& z, const Quaternion& alpha);

/// |(1 - q conj(alpha))^{-*} * (q - alpha)| via the closed form
/// |(-alpha + q (1 + alpha^2) - q^2 alpha)| / |1 - 2 Re(alpha) q + |alpha|^2 q^2|.
double rho(const Quaternion& q, const Quaternion& alpha);

/// Euclidean description of the slice disc Delta_I(alpha, r).
struct GeometrySummary {
    double d = 1.0;
    Quaternion euclidean_center;
    double euclidean_radius = 0.0;
    double area = 0.0;
    /// eta-volume of the region the summary was computed for (negative: not computed).
    double eta_volume = -1.0;
    double eta_sigma = 0.0;
};

GeometrySummary disc_geometry(const Quaternion& alpha, double r);
/// pi r^2 (1 - |a|^2)^2 / (1 - r^2 |a|^2)^2
double disc_area(double alpha_modulus, double r);

// ---------------------------------------------------------------------------
// Regions

struct SliceDisc {
    Quaternion alpha;
    double r;
    /// Plane of the disc; must contain alpha.
    UnitImaginary axis = UnitImaginary::i();
};
/// Axially symmetric completion of Delta_I(alpha, r).
struct Tube {
    Quaternion alpha;
    double r;
};
struct PseudoBall {
    Quaternion alpha;
    double r;
};
/// S_I(theta0, r) in the slice C_I.
struct CarlesonBox {
    double theta0;
    double r;
    UnitImaginary axis = UnitImaginary::i();
};
/// S(theta0, r) = union over I of S_I(theta0, r).
struct SymmetricBox {
    double theta0;
    double r;
};

using Region = std::variant<SliceDisc, Tube, PseudoBall, CarlesonBox, SymmetricBox>;

std::string region_kind(const Region& region);

bool contains(const Region& region, const Quaternion& q);

/// |A_I(theta0, r)| = 2 (1 - r).
inline double arc_length(double r) { return 2.0 * (1.0 - r); }

/// Complex coordinate of alpha in its own slice, with Im >= 0.
std::complex<double> slice_complex(const Quaternion& alpha);

/// eta(Delta(alpha, r)), eta normalized to eta(B) = 1, by quadrature of the
/// upper half slice section weighted with the sphere area 4 pi y^2.
double tube_volume(const Quaternion& alpha, double r);

/// Draws eta-uniform points of the tube Delta(alpha, r).
class TubeSampler {
public:
    TubeSampler(const Quaternion& alpha, double r);
    Quaternion operator()(Rng& rng) const;
    double volume() const { return volume_; }

private:
    double cx_, cy_, r1_;
    double volume_;
};

struct VolumeEstimate {
    double value = 0.0;
    double sigma = 0.0;
    double tube_volume = 0.0;
    std::size_t samples = 0;
    std::size_t hits = 0;
};

/// eta(B(alpha, r)) by tube-proposal Monte Carlo (B is contained in the tube).
VolumeEstimate ball_volume_mc(const Quaternion& alpha, double r, std::size_t n, std::uint64_t seed);

/// Draws n points of B(alpha, r) (rejection from the tube sampler).
std::vector<Quaternion> sample_ball(const Quaternion& alpha, double r, std::size_t n, std::uint64_t seed);

struct DistanceSandwich {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    /// Smallest C with (1-r)/C <= ratio <= C/(1-r) on the samples.
    double c1 = 0.0;
};

/// Extremes of d(q, boundary) / d(alpha, boundary) over sampled q in B(alpha, r).
DistanceSandwich distance_sandwich_check(const Quaternion& alpha, double r, std::size_t n, std::uint64_t seed);

struct SphereSection {
    /// max |q - alpha|^2 over sampled q in B(alpha, r) on the sphere [alpha].
    double max_distance2 = 0.0;
    /// Fraction of [center] inside B, times the sphere area.
    double gamma_area = 0.0;
};

/// Samples the 2-spheres [alpha] and [q1] (q1 Euclidean centre of the slice disc).
SphereSection sphere_section(const Quaternion& alpha, double r, std::size_t n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Covering and packing

struct TubeCover {
    std::vector<Quaternion> centers;
    bool single_ball = false;
    /// Chord radius of the direction net (0 for a single ball).
    double net_radius = 0.0;
};

/// Chord covering radius of sphere_sample(n) is below kFibonacciCover / sqrt(n).
inline constexpr double kFibonacciCover = 3.2;

/// Centres on [alpha] whose balls B(., 4r) cover Delta(alpha, r).
TubeCover cover_tube(const Quaternion& alpha, double r, std::size_t max_centers = 4'000'000);

/// Fraction of n sampled tube points lying in some B(center, 4r).
double cover_fraction(const Quaternion& alpha, double r, const TubeCover& cover, std::size_t n,
                      std::uint64_t seed);

/// Greedy farthest-point packing of centres J y on [I y] with pairwise rho >= 2r.
std::vector<Quaternion> pack_tube(double y, double r, const UnitImaginary& axis = UnitImaginary::i(),
                                  std::size_t candidates = 4000);

/// Number of n sampled tube points lying in two or more of the balls B(center, r).
std::size_t packing_overlaps(const std::vector<Quaternion>& centers, double r, std::size_t n, std::uint64_t seed);

/// Pseudohyperbolic lattice in B_I: rings at radial step r/2 covering |z| <= r_max.
std::vector<Quaternion> disc_lattice(const UnitImaginary& axis, double r, double r_max);

struct LatticeReport {
    std::size_t uncovered = 0;
    /// Max number of discs Delta_I(alpha_k, (1+r)/2) containing a sample.
    std::size_t n0 = 0;
};

LatticeReport lattice_check(const UnitImaginary& axis, const std::vector<Quaternion>& centers, double r,
                            double r_max, std::size_t n, std::uint64_t seed);

}  // namespace sqc

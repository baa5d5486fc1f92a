#pragma once

#include "sqc/quaternion.hpp"
#include "sqc/slice_series.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sqc {

/// 1 - 2 Re(w) q + |w|^2 q^2, the symmetrization of 1 - q conj(w).
Quaternion kernel_denominator(const Quaternion& q, const Quaternion& w);

/// Hardy kernel k(q, w) = (1 - q conj w)^{-*}.
Quaternion hardy_kernel(const Quaternion& q, const Quaternion& w);

enum class BergmanForm {
    /// (1 - q conj w)^{-2*}: denominator^{-2} (1 - 2 q w + q^2 w^2).
    Regular,
    /// (1 - 2 conj(q) conj(w) + conj(q)^2 conj(w)^2)(1 - 2 Re(w) conj(q) + |w|^2 conj(q)^2)^{-2}
    /// Anti-regular in q; kept for cross-checking the regular form.
    Printed,
};

/// Bergman kernel h_w(q) without the 1/pi factor.
Quaternion bergman_kernel(const Quaternion& q, const Quaternion& w, BergmanForm form = BergmanForm::Regular);

/// K(q) = (k(q, w) + k(q, conj w)) / 2, the S-average of k(q, u + I v).
Quaternion averaged_K(const Quaternion& q, const Quaternion& w);
/// H(q) = (h_w(q) + h_{conj w}(q)) / 2.
Quaternion averaged_H(const Quaternion& q, const Quaternion& w, BergmanForm form = BergmanForm::Regular);

enum class KernelKind { HardyK, BergmanH, AveragedK, AveragedH };

std::string to_string(KernelKind kind);
KernelKind kernel_kind_from_string(const std::string& name);

/// A closed-form kernel with parameter w, optionally raised to a power.
struct KernelSpec {
    KernelKind kind = KernelKind::HardyK;
    Quaternion w;
    double power = 1.0;

    KernelSpec(KernelKind kind_, const Quaternion& w_, double power_ = 1.0);
    Quaternion operator()(const Quaternion& q) const;
    SliceFunction function() const;
};

/// Truncated series of k(., w): coefficients conj(w)^n.
SliceSeries hardy_kernel_series(const Quaternion& w, std::size_t n);

struct SphereAverageReport {
    double defect = 0.0;
    Quaternion witness;
};

/// Max over a seeded q-grid of |mean_I kernel(q, u + I v) - averaged kernel|,
/// with the n_I sample directions rotated so the first is the axis of w.
SphereAverageReport sphere_average_check(KernelKind kind, const Quaternion& w, std::size_t n_sphere,
                                         std::size_t n_points = 200, std::uint64_t seed = 3);

struct BergmanFormReport {
    double regular_vs_series = 0.0;
    double printed_vs_series = 0.0;
    bool printed_flagged = false;
};

/// Compares both Bergman forms with the truncated series of k * k.
BergmanFormReport bergman_form_check(const Quaternion& w, std::size_t samples, std::uint64_t seed = 5);

// ---------------------------------------------------------------------------
// Norms

enum class Space { Hardy, Bergman };
enum class Normalization { Raw, Normalized };

std::string to_string(Space space);

struct NormGrid {
    std::size_t n_sphere = 200;
    std::size_t n_theta = 1024;
    std::size_t n_radial = 128;
    /// Radii approaching 1 for the Hardy limit.
    std::vector<double> radii{0.9, 0.99, 0.999};
    /// Raw: integral over d theta. Normalized: divided by 2 pi (Hardy only).
    Normalization normalization = Normalization::Raw;
};

struct NormEstimate {
    double value = 0.0;
    double p = 2.0;
    Space space = Space::Hardy;
    NormGrid grid;
    UnitImaginary sup_witness = UnitImaginary::i();
    /// Smallest slice norm over the sampled directions.
    double min_slice_value = 0.0;
    /// Hardy: max over slices of the change between the last two radii.
    double error_bar = 0.0;
};

/// Slice integral of |f(r e^{I theta})|^p over theta (raw or normalized).
double circle_integral(const SliceFunction& f, double p, const UnitImaginary& I, double r, std::size_t n_theta,
                       Normalization normalization);
/// Integral of |f|^p over the slice disc B_I with planar Lebesgue measure.
double disc_integral(const SliceFunction& f, double p, const UnitImaginary& I, std::size_t n_radial,
                     std::size_t n_theta);

NormEstimate hardy_norm(const SliceFunction& f, double p, const NormGrid& grid = {});
NormEstimate bergman_norm(const SliceFunction& f, double p, const NormGrid& grid = {});

/// Radii adapted to a kernel centred at modulus |w|: 1 - (1 - |w|) 10^-k, k = 1..3,
/// merged with the default radii.
std::vector<double> radii_for(double w_modulus);

}  // namespace sqc

#pragma once

#include "sqc/quaternion.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sqc {

inline constexpr std::size_t kMaxTruncation = 512;
/// Series are only evaluated on |q| <= kEvalMargin * radius.
inline constexpr double kEvalMargin = 0.95;

/// Pointwise quaternionic function on the ball.
using SliceFunction = std::function<Quaternion(const Quaternion&)>;

/// Truncated power series sum_n q^n a_n with right coefficients.
class SliceSeries {
public:
    SliceSeries() : coeffs_{Quaternion{}}, radius_(1.0) {}
    explicit SliceSeries(std::vector<Quaternion> coeffs, double radius = 1.0);

    static SliceSeries constant(const Quaternion& c) { return SliceSeries({c}); }
    /// 1 - q*a
    static SliceSeries one_minus_q_times(const Quaternion& a);
    /// q - a
    static SliceSeries q_minus(const Quaternion& a);

    std::span<const Quaternion> coeffs() const { return coeffs_; }
    const Quaternion& operator[](std::size_t n) const { return coeffs_[n]; }
    std::size_t truncation() const { return coeffs_.size() - 1; }
    std::size_t size() const { return coeffs_.size(); }
    double radius() const { return radius_; }

    /// All coefficients real within tol.
    bool is_intrinsic(double tol = kRealTolerance) const;

private:
    std::vector<Quaternion> coeffs_;
    double radius_;
};

/// Horner evaluation; throws OutOfDisk when |q| > kEvalMargin * radius.
Quaternion eval(const SliceSeries& f, const Quaternion& q);
/// Horner evaluation without the disc guard (callers that know the tail).
Quaternion eval_unchecked(const SliceSeries& f, const Quaternion& q);

SliceSeries star_mul(const SliceSeries& f, const SliceSeries& g, std::size_t n_max = kMaxTruncation);
SliceSeries reg_conj(const SliceSeries& f);
/// f * f^c; the result is stored with exactly real coefficients.
SliceSeries symmetrize(const SliceSeries& f);
/// (f^s)^{-1} f^c truncated at degree n (defaults to f's truncation budget).
SliceSeries star_inv(const SliceSeries& f, std::size_t n = kMaxTruncation);

SliceSeries operator+(const SliceSeries& f, const SliceSeries& g);
SliceSeries operator-(const SliceSeries& f, const SliceSeries& g);

/// Splitting of f on C_I as F + G J with F, G holomorphic on C_I.
struct SplitPair {
    std::vector<std::complex<double>> F;
    std::vector<std::complex<double>> G;
    UnitImaginary I;
    UnitImaginary J;

    /// F(z) + G(z) J at z = x + I y given as the complex number x + iy.
    Quaternion eval(std::complex<double> z) const;
};

SplitPair split(const SliceSeries& f, const UnitImaginary& I, const UnitImaginary& J);

/// Slice regular extension of `values` (known on C_J) to the ball.
SliceFunction ext_from_slice(SliceFunction values, const UnitImaginary& J);

/// Slice-wise principal power q^nu on C_{I_q}.
Quaternion power(const Quaternion& q, double nu);

struct IntrinsicCheck {
    bool intrinsic = false;
    double max_defect = 0.0;
    Quaternion witness;
};

/// Samples |f(conj q) - conj(f(q))| over `samples` seeded points of the ball
/// (radius <= 0.9, real points included).
IntrinsicCheck is_intrinsic(const SliceFunction& f, std::size_t samples, double tol = 1e-10,
                            std::uint64_t seed = 7);

struct CompositionCheck {
    double intrinsic_defect = 0.0;
    double extension_defect = 0.0;
};

/// f o g for intrinsic g: intrinsic defect of g and agreement of the
/// composition with its own slice extension from C_J.
CompositionCheck composition_check(const SliceFunction& f, const SliceFunction& g, const UnitImaginary& J,
                                   std::size_t samples, std::uint64_t seed = 11);

}  // namespace sqc

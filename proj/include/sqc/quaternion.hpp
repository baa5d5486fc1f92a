#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace sqc {

/// Below this modulus an imaginary part is treated as zero.
inline constexpr double kRealTolerance = 1e-12;

/// Real quaternion w + x i + y j + z k.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_) : w(w_) {}  // NOLINT: reals embed implicitly
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    constexpr double real() const { return w; }
    constexpr Quaternion imag() const { return {0.0, x, y, z}; }
    constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
    double imag_norm() const { return std::sqrt(x * x + y * y + z * z); }

    constexpr Quaternion& operator+=(const Quaternion& o) {
        w += o.w; x += o.x; y += o.y; z += o.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) {
        w -= o.w; x -= o.x; y -= o.y; z -= o.z;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        w *= s; x *= s; y *= s; z *= s;
        return *this;
    }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

/// Hamilton product.
constexpr Quaternion mul(const Quaternion& p, const Quaternion& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) { return mul(p, q); }

constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }
inline double norm(const Quaternion& q) { return q.norm(); }
inline Quaternion inverse(const Quaternion& q) { return conj(q) / q.norm2(); }
/// Euclidean inner product on R^4.
constexpr double dot(const Quaternion& p, const Quaternion& q) {
    return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z;
}
inline double distance(const Quaternion& p, const Quaternion& q) { return (p - q).norm(); }

inline constexpr Quaternion kOne{1.0, 0.0, 0.0, 0.0};
inline constexpr Quaternion kI{0.0, 1.0, 0.0, 0.0};
inline constexpr Quaternion kJ{0.0, 0.0, 1.0, 0.0};
inline constexpr Quaternion kK{0.0, 0.0, 0.0, 1.0};

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

/// A point of the sphere S of imaginary units.
class UnitImaginary {
public:
    /// Normalizes (x, y, z); throws std::invalid_argument for the zero vector.
    UnitImaginary(double x, double y, double z);
    static UnitImaginary i() { return {1.0, 0.0, 0.0}; }
    static UnitImaginary j() { return {0.0, 1.0, 0.0}; }
    static UnitImaginary k() { return {0.0, 0.0, 1.0}; }
    /// Imaginary direction of q; throws if q is (numerically) real.
    static UnitImaginary from_quaternion(const Quaternion& q);

    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }
    Quaternion as_quaternion() const { return {0.0, x_, y_, z_}; }
    UnitImaginary operator-() const { return {-x_, -y_, -z_}; }
    double dot(const UnitImaginary& o) const { return x_ * o.x_ + y_ * o.y_ + z_ * o.z_; }

    /// x + this*y, the point of the slice C_I with complex coordinate x + iy.
    Quaternion embed(double re, double im) const { return {re, x_ * im, y_ * im, z_ * im}; }
    Quaternion embed(std::complex<double> c) const { return embed(c.real(), c.imag()); }

    friend bool operator==(const UnitImaginary&, const UnitImaginary&) = default;

private:
    double x_, y_, z_;
};

/// Some unit imaginary orthogonal to I (deterministic choice).
UnitImaginary orthogonal_unit(const UnitImaginary& I);

/// q = re + axis * im with im >= 0; axis is empty for real q.
struct SlicePoint {
    double re = 0.0;
    double im = 0.0;
    std::optional<UnitImaginary> axis;

    bool is_real() const { return !axis.has_value(); }
    Quaternion embed() const { return axis ? axis->embed(re, im) : Quaternion{re}; }
    /// Complex coordinate re + i*im in the slice of the axis.
    std::complex<double> complex() const { return {re, im}; }
};

SlicePoint axis_of(const Quaternion& q, double tau_real = kRealTolerance);

/// Complex coordinate of q in the slice C_I (sign of the imaginary part
/// follows I). Throws DifferentSlices when q does not lie on C_I.
std::complex<double> slice_coordinate(const Quaternion& q, const UnitImaginary& I, double tol = 1e-9);

/// True when p and q commute, i.e. lie on a common slice.
bool same_slice(const Quaternion& p, const Quaternion& q, double tol = 1e-9);

/// Deterministic quasi-uniform points of S (Fibonacci layout, polar axis i).
/// For even n the set is closed under I -> -I; n = 2 gives {i, -i}.
std::vector<UnitImaginary> sphere_sample(std::size_t n, std::uint64_t seed = 0);

/// Rotation of S taking i to `target`, applied to every point of `points`.
std::vector<UnitImaginary> rotate_to(const std::vector<UnitImaginary>& points, const UnitImaginary& target);

}  // namespace sqc

#include "sqc/quaternion.hpp"

#include "sqc/errors.hpp"

#include <numbers>
#include <ostream>
#include <stdexcept>

namespace sqc {

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '[' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ']';
}

UnitImaginary::UnitImaginary(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw std::invalid_argument("UnitImaginary: zero or non-finite direction");
    }
    x_ = x / n;
    y_ = y / n;
    z_ = z / n;
}

UnitImaginary UnitImaginary::from_quaternion(const Quaternion& q) {
    if (q.imag_norm() < kRealTolerance) {
        throw std::invalid_argument("UnitImaginary::from_quaternion: quaternion is real");
    }
    return {q.x, q.y, q.z};
}

UnitImaginary orthogonal_unit(const UnitImaginary& I) {
    // Cross with the coordinate axis least aligned with I.
    const double ax = std::abs(I.x()), ay = std::abs(I.y()), az = std::abs(I.z());
    double ex = 0, ey = 0, ez = 0;
    if (ax <= ay && ax <= az) {
        ex = 1;
    } else if (ay <= az) {
        ey = 1;
    } else {
        ez = 1;
    }
    return {I.y() * ez - I.z() * ey, I.z() * ex - I.x() * ez, I.x() * ey - I.y() * ex};
}

SlicePoint axis_of(const Quaternion& q, double tau_real) {
    const double im = q.imag_norm();
    if (im < tau_real) {
        return {q.w, 0.0, std::nullopt};
    }
    return {q.w, im, UnitImaginary(q.x / im, q.y / im, q.z / im)};
}

std::complex<double> slice_coordinate(const Quaternion& q, const UnitImaginary& I, double tol) {
    const Quaternion u = I.as_quaternion();
    const double along = q.x * u.x + q.y * u.y + q.z * u.z;
    const Quaternion perp = q.imag() - u * along;
    if (perp.norm() > tol * std::max(1.0, q.norm())) {
        throw DifferentSlices("slice_coordinate: point does not lie on the requested slice");
    }
    return {q.w, along};
}

bool same_slice(const Quaternion& p, const Quaternion& q, double tol) {
    const double cx = p.y * q.z - p.z * q.y;
    const double cy = p.z * q.x - p.x * q.z;
    const double cz = p.x * q.y - p.y * q.x;
    return std::sqrt(cx * cx + cy * cy + cz * cz) <= tol * std::max(1.0, p.norm() * q.norm());
}

std::vector<UnitImaginary> sphere_sample(std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw std::invalid_argument("sphere_sample: n must be >= 1");
    }
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    // The seed only turns the layout about the polar axis i.
    const double offset = static_cast<double>(seed % 1000003u) * golden / 7.0;
    auto point = [&](double height, double phi) {
        const double s = std::sqrt(std::max(0.0, 1.0 - height * height));
        return UnitImaginary(height, s * std::cos(phi + offset), s * std::sin(phi + offset));
    };

    std::vector<UnitImaginary> out;
    out.reserve(n);
    if (n == 1) {
        out.push_back(UnitImaginary::i());
        return out;
    }
    if (n % 2 == 0) {
        // Half the points on the closed upper cap, equal-area heights, mirrored.
        const std::size_t m = n / 2;
        for (std::size_t k = 0; k < m; ++k) {
            out.push_back(point(1.0 - static_cast<double>(k) / static_cast<double>(m), golden * static_cast<double>(k)));
        }
        for (std::size_t k = 0; k < m; ++k) {
            out.push_back(-out[k]);
        }
        return out;
    }
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(point(1.0 - 2.0 * static_cast<double>(k) / static_cast<double>(n - 1), golden * static_cast<double>(k)));
    }
    return out;
}

std::vector<UnitImaginary> rotate_to(const std::vector<UnitImaginary>& points, const UnitImaginary& target) {
    // Rodrigues rotation about i x target.
    const double c = target.x();
    double ax = 0.0, ay = -target.z(), az = target.y();
    const double s = std::sqrt(ay * ay + az * az);
    if (s < 1e-15) {
        if (c > 0) {
            return points;
        }
        ax = 0.0;
        ay = 1.0;
        az = 0.0;  // half turn about j
    } else {
        ay /= s;
        az /= s;
    }
    const double sn = s < 1e-15 ? 0.0 : s;
    const double cs = s < 1e-15 ? -1.0 : c;
    std::vector<UnitImaginary> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        const double px = p.x(), py = p.y(), pz = p.z();
        const double kd = ax * px + ay * py + az * pz;
        const double cx = ay * pz - az * py, cy = az * px - ax * pz, cz = ax * py - ay * px;
        out.emplace_back(px * cs + cx * sn + ax * kd * (1 - cs),
                         py * cs + cy * sn + ay * kd * (1 - cs),
                         pz * cs + cz * sn + az * kd * (1 - cs));
    }
    return out;
}

}  // namespace sqc

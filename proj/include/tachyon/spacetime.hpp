#pragma once

#include <string_view>

#include <Eigen/Core>

namespace tachyon {

using Vec3 = Eigen::Vector3d;

/// Point or displacement in the preferred frame, c = 1, signature (+,-,-,-).
/// The same type carries 4-momenta (t holds k^0).
struct FourVector {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    static FourVector from(double time, const Vec3& space) { return {time, space.x(), space.y(), space.z()}; }

    Vec3 spatial() const { return {x, y, z}; }
    bool is_finite() const;

    friend FourVector operator+(const FourVector& a, const FourVector& b) {
        return {a.t + b.t, a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend FourVector operator-(const FourVector& a, const FourVector& b) {
        return {a.t - b.t, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend FourVector operator-(const FourVector& a) { return {-a.t, -a.x, -a.y, -a.z}; }
    friend FourVector operator*(double s, const FourVector& a) { return {s * a.t, s * a.x, s * a.y, s * a.z}; }
    friend bool operator==(const FourVector&, const FourVector&) = default;
};

/// t^2 - |x|^2. On the tachyonic mass shell minkowski_square(k) == -m^2.
double minkowski_square(const FourVector& v);

/// a^0 b^0 - a.b
double minkowski_dot(const FourVector& a, const FourVector& b);

/// Sum of squared components (Euclidean norm squared in R^4).
double euclidean_square(const FourVector& v);

enum class IntervalClass { Timelike, Spacelike, Null };

std::string_view to_string(IntervalClass c) noexcept;

/// Sign of minkowski_square, with |square| <= tol reported as Null.
IntervalClass interval_class(const FourVector& v, double tol);

/// Proper orthochronous pure boost with velocity beta along a unit axis.
/// Applying it maps preferred-frame coordinates to those of an observer
/// moving with velocity beta * axis.
class Boost {
public:
    /// Throws InvalidArgument for |beta| >= 1, non-finite input or a zero axis.
    /// The axis is normalized.
    Boost(double beta, const Vec3& axis);

    static Boost identity() { return Boost(0.0, Vec3::UnitZ()); }
    static Boost along_z(double beta) { return Boost(beta, Vec3::UnitZ()); }

    double beta() const { return beta_; }
    const Vec3& axis() const { return axis_; }
    double gamma() const { return gamma_; }

    Boost inverse() const { return Boost(-beta_, axis_); }

    FourVector apply(const FourVector& v) const;

private:
    double beta_;
    Vec3 axis_;
    double gamma_;
};

FourVector boost_apply(const Boost& b, const FourVector& v);

/// Relativistic sum of two collinear velocities.
double velocity_addition(double beta1, double beta2);

}  // namespace tachyon

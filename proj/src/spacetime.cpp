#include "tachyon/spacetime.hpp"

#include <cmath>
#include <string>

#include "tachyon/error.hpp"

namespace tachyon {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ZeroModeExcluded: return "ZeroModeExcluded";
        case ErrorCode::EvanescentModeExcluded: return "EvanescentModeExcluded";
        case ErrorCode::EmptyModeSet: return "EmptyModeSet";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::LightConeSingular: return "LightConeSingular";
        case ErrorCode::NonConvergent: return "NonConvergent";
        case ErrorCode::InsufficientResolution: return "InsufficientResolution";
        case ErrorCode::DimensionOverflow: return "DimensionOverflow";
        case ErrorCode::InvalidMode: return "InvalidMode";
        case ErrorCode::SpeciesUnavailable: return "SpeciesUnavailable";
        case ErrorCode::NotCharged: return "NotCharged";
        case ErrorCode::OnCutPlane: return "OnCutPlane";
        case ErrorCode::SpectrumForbiddenLeg: return "SpectrumForbiddenLeg";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

bool FourVector::is_finite() const {
    return std::isfinite(t) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
}

double minkowski_square(const FourVector& v) { return v.t * v.t - v.x * v.x - v.y * v.y - v.z * v.z; }

double minkowski_dot(const FourVector& a, const FourVector& b) {
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

double euclidean_square(const FourVector& v) { return v.t * v.t + v.x * v.x + v.y * v.y + v.z * v.z; }

std::string_view to_string(IntervalClass c) noexcept {
    switch (c) {
        case IntervalClass::Timelike: return "timelike";
        case IntervalClass::Spacelike: return "spacelike";
        case IntervalClass::Null: return "null";
    }
    return "unknown";
}

IntervalClass interval_class(const FourVector& v, double tol) {
    if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "interval tolerance must be >= 0");
    const double s = minkowski_square(v);
    if (std::abs(s) <= tol) return IntervalClass::Null;
    return s > 0.0 ? IntervalClass::Timelike : IntervalClass::Spacelike;
}

Boost::Boost(double beta, const Vec3& axis) : beta_(beta), axis_(axis), gamma_(1.0) {
    if (!std::isfinite(beta) || std::abs(beta) >= 1.0)
        throw Error(ErrorCode::InvalidArgument, "boost velocity must satisfy |beta| < 1");
    const double n = axis.norm();
    if (!std::isfinite(n) || n == 0.0) throw Error(ErrorCode::InvalidArgument, "boost axis must be a nonzero finite vector");
    axis_ = axis / n;
    gamma_ = 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
}

FourVector Boost::apply(const FourVector& v) const {
    const Vec3 r = v.spatial();
    const double along = axis_.dot(r);
    const double t = gamma_ * (v.t - beta_ * along);
    const double along_new = gamma_ * (along - beta_ * v.t);
    return FourVector::from(t, r + (along_new - along) * axis_);
}

FourVector boost_apply(const Boost& b, const FourVector& v) { return b.apply(v); }

double velocity_addition(double beta1, double beta2) { return (beta1 + beta2) / (1.0 + beta1 * beta2); }

}  // namespace tachyon

#include <doctest.h>

#include <cmath>
#include <random>

#include "tachyon/error.hpp"
#include "tachyon/spacetime.hpp"

using namespace tachyon;

TEST_CASE("minkowski square and signature") {
    CHECK(minkowski_square({1, 0, 0, 0}) == 1.0);
    CHECK(minkowski_square({0, 0, 0, 1}) == -1.0);
    CHECK(minkowski_square({3, 0, 0, 3}) == 0.0);
    CHECK(minkowski_dot({2, 1, 0, 0}, {1, 3, 0, 0}) == -1.0);
    CHECK(euclidean_square({1, 2, 2, 4}) == 25.0);
}

TEST_CASE("interval classes") {
    CHECK(interval_class({2, 0, 0, 1}, 1e-9) == IntervalClass::Timelike);
    CHECK(interval_class({1, 0, 0, 2}, 1e-9) == IntervalClass::Spacelike);
    CHECK(interval_class({1, 0, 0, 1}, 1e-9) == IntervalClass::Null);
    CHECK(to_string(IntervalClass::Spacelike) == "spacelike");
    CHECK_THROWS_AS(interval_class({1, 0, 0, 0}, -1.0), Error);
}

TEST_CASE("boost arithmetic") {
    const FourVector v{1, 0, 0, 0};
    const FourVector w = boost_apply(Boost::along_z(0.6), v);
    CHECK(w.t == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(w.z == doctest::Approx(-0.75).epsilon(1e-15));
    CHECK(w.x == 0.0);

    const FourVector u{0.3, -1.2, 2.5, 0.7};
    CHECK(boost_apply(Boost::identity(), u) == u);

    const Boost b(0.83, Vec3(1, -2, 0.5));
    const FourVector back = boost_apply(b, boost_apply(b.inverse(), u));
    CHECK(std::abs(back.t - u.t) < 1e-12);
    CHECK(std::abs(back.x - u.x) < 1e-12);
    CHECK(std::abs(back.y - u.y) < 1e-12);
    CHECK(std::abs(back.z - u.z) < 1e-12);
}

TEST_CASE("boost rejects invalid parameters") {
    CHECK_THROWS_AS(Boost(1.0, Vec3::UnitZ()), Error);
    CHECK_THROWS_AS(Boost(-1.2, Vec3::UnitZ()), Error);
    CHECK_THROWS_AS(Boost(0.5, Vec3::Zero()), Error);
    CHECK_THROWS_AS(Boost(std::nan(""), Vec3::UnitZ()), Error);
    CHECK(std::abs(Boost(0.5, Vec3(0, 0, 3)).axis().norm() - 1.0) < 1e-12);
}

TEST_CASE("interval invariance over random boosts") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0), beta(-0.999, 0.999);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const FourVector v{u(rng), u(rng), u(rng), u(rng)};
        const Boost b(beta(rng), Vec3(u(rng), u(rng), u(rng)));
        const double s = minkowski_square(v);
        const double s2 = minkowski_square(boost_apply(b, v));
        // relative to the Euclidean size, which bounds the cancellation in s
        worst = std::max(worst, std::abs(s2 - s) / (euclidean_square(v) * b.gamma() * b.gamma()));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("collinear composition follows velocity addition") {
    const FourVector v{1.3, 0.2, -0.4, 0.9};
    for (double b1 : {-0.7, 0.1, 0.5, 0.95}) {
        for (double b2 : {-0.3, 0.4, 0.9}) {
            const FourVector twice = boost_apply(Boost::along_z(b2), boost_apply(Boost::along_z(b1), v));
            const FourVector once = boost_apply(Boost::along_z(velocity_addition(b1, b2)), v);
            CHECK(std::abs(twice.t - once.t) < 1e-12 * (1 + std::abs(once.t)));
            CHECK(std::abs(twice.z - once.z) < 1e-12 * (1 + std::abs(once.z)));
        }
    }
}

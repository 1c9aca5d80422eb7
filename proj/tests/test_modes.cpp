#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "tachyon/error.hpp"
#include "tachyon/modes.hpp"

using namespace tachyon;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("dispersion and the spectrum cut") {
    const TachyonMass m(1.0);
    CHECK(dispersion(Vec3(2, 0, 0), m) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(code_of([&] { dispersion(Vec3(1, 0, 0), m); }) == ErrorCode::ZeroModeExcluded);
    CHECK(code_of([&] { dispersion(Vec3(0.5, 0, 0), m); }) == ErrorCode::EvanescentModeExcluded);
    CHECK_THROWS_AS(TachyonMass(0.0), Error);
    CHECK_THROWS_AS(TachyonMass(-1.0), Error);
}

TEST_CASE("group velocity is superluminal") {
    const TachyonMass m(1.0);
    const Vec3 v = group_velocity(Vec3(std::sqrt(2.0), 0, 0), m);
    CHECK(v.x() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(group_velocity(Vec3(10, 0, 0), m).norm() == doctest::Approx(10.0 / std::sqrt(99.0)).epsilon(1e-15));
    double prev = 1e9;
    for (double k : {1.5, 3.0, 10.0, 100.0, 1e4}) {
        const double speed = group_velocity(Vec3(0, k, 0), m).norm();
        CHECK(speed > 1.0);
        CHECK(speed < prev);
        prev = speed;
    }
    CHECK(prev - 1.0 < 1e-8);
}

TEST_CASE("mode functions") {
    const TachyonMass m(1.0);
    const Mode mode = make_mode(Vec3(0.3, -1.1, 0.8), m);
    const double norm = 1.0 / std::sqrt(std::pow(2 * oracle::pi, 3) * 2 * mode.omega);
    const cd origin = mode_function(mode, FourVector{});
    CHECK(origin.real() == doctest::Approx(norm).epsilon(1e-14));
    CHECK(origin.imag() == 0.0);
    for (const FourVector& x : {FourVector{1, 2, 3, 4}, FourVector{-0.4, 0.1, 7, -2}}) {
        const cd u = mode_function(mode, x);
        CHECK(std::abs(u) == doctest::Approx(norm).epsilon(1e-14));
        const double phase = mode.omega * x.t - mode.kvec.dot(x.spatial());
        const cd negative = norm * std::exp(cd(0.0, phase));
        CHECK(std::abs(std::conj(u) - negative) < 1e-15);
    }
}

TEST_CASE("mode functions solve the discrete tachyonic Klein-Gordon equation") {
    const TachyonMass m(1.3);
    const Mode mode = make_mode(Vec3(1.0, 1.4, -0.6), m);
    const FourVector x{0.2, -0.5, 1.1, 0.4};
    auto residual = [&](double h) {
        auto u = [&](const FourVector& p) { return mode_function(mode, p); };
        const cd c = u(x);
        cd box = (u(x + FourVector{h, 0, 0, 0}) + u(x - FourVector{h, 0, 0, 0}) - 2.0 * c) / (h * h);
        for (const FourVector& s : {FourVector{0, h, 0, 0}, FourVector{0, 0, h, 0}, FourVector{0, 0, 0, h}})
            box -= (u(x + s) + u(x - s) - 2.0 * c) / (h * h);
        return std::abs(box - m.squared() * c);
    };
    double prev = residual(0.2);
    for (double h : {0.1, 0.05, 0.025}) {
        const double cur = residual(h);
        CHECK(std::log2(prev / cur) > 1.9);
        prev = cur;
    }
}

TEST_CASE("box mode enumeration") {
    SUBCASE("light tachyon keeps every nonzero lattice point") {
        const ModeSet ms = build_box_modes(2 * oracle::pi, 1, TachyonMass(0.5));
        CHECK(ms.size() == 26);
        CHECK(ms.measure() == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("heavier tachyon drops the axis modes") {
        const ModeSet ms = build_box_modes(2 * oracle::pi, 1, TachyonMass(1.2));
        CHECK(ms.size() == 20);
        std::set<long> norms;
        for (const Mode& mode : ms.modes()) norms.insert(std::lround(mode.kvec.squaredNorm()));
        CHECK(norms == std::set<long>{2, 3});
    }
    SUBCASE("agrees with independent enumeration") {
        const double L = 9.3;
        const auto expected = oracle::enumerate_box(L, 5, 1.7);
        const ModeSet ms = build_box_modes(L, 5, TachyonMass(1.7));
        REQUIRE(ms.size() == expected.size());
        for (const auto& p : expected) {
            const auto i = ms.find(p.n);
            REQUIRE(i.has_value());
            CHECK(ms[*i].kvec.squaredNorm() == doctest::Approx(p.k2).epsilon(1e-14));
            CHECK(ms[*i].omega == doctest::Approx(std::sqrt(p.k2 - 1.7 * 1.7)).epsilon(1e-13));
        }
    }
    SUBCASE("closed under inversion with real frequencies") {
        const ModeSet ms = build_box_modes(8 * oracle::pi, 6, TachyonMass(1.0));
        for (const Mode& mode : ms.modes()) {
            CHECK(ms.find({-mode.lattice[0], -mode.lattice[1], -mode.lattice[2]}).has_value());
            CHECK(std::isfinite(mode.omega));
            CHECK(mode.omega > 0.0);
        }
    }
    CHECK(code_of([] { build_box_modes(1.0, 1, TachyonMass(100.0)); }) == ErrorCode::EmptyModeSet);
    CHECK_THROWS_AS(build_box_modes(-1.0, 2, TachyonMass(1.0)), Error);
    CHECK_THROWS_AS(build_box_modes(1.0, 0, TachyonMass(1.0)), Error);
}

TEST_CASE("mode set validation") {
    const TachyonMass m(1.0);
    const double L = 2 * oracle::pi;
    const Mode a{Vec3(2, 0, 0), std::sqrt(3.0), {2, 0, 0}};
    const Mode b{Vec3(-2, 0, 0), std::sqrt(3.0), {-2, 0, 0}};
    CHECK_NOTHROW(ModeSet(L, 2, m, {a, b}));
    CHECK(code_of([&] { ModeSet(L, 2, m, {a}); }) == ErrorCode::InvalidMode);
    CHECK(code_of([&] { ModeSet(L, 2, m, {a, b, a}); }) == ErrorCode::InvalidMode);
    CHECK(code_of([&] { ModeSet(L, 1, m, {a, b}); }) == ErrorCode::InvalidMode);
    const Mode slow{Vec3(0.5, 0, 0), 0.0, {0, 0, 0}};
    CHECK(code_of([&] { ModeSet(4 * oracle::pi, 2, m, {slow}); }) == ErrorCode::InvalidMode);
    CHECK(code_of([&] { ModeSet(L, 2, m, {}); }) == ErrorCode::EmptyModeSet);
}

TEST_CASE("mode set JSON round trip") {
    const ModeSet ms = build_box_modes(7.0, 3, TachyonMass(1.2));
    const ModeSet back = mode_set_from_json(nlohmann::json::parse(to_json(ms).dump()));
    REQUIRE(back.size() == ms.size());
    CHECK(back.measure() == ms.measure());
    for (std::size_t i = 0; i < ms.size(); ++i) {
        CHECK(back[i].lattice == ms[i].lattice);
        CHECK(back[i].omega == ms[i].omega);
    }
    CHECK_THROWS_AS(mode_set_from_json(nlohmann::json{{"mass", 1.0}}), Error);
}

TEST_CASE("box delta_m") {
    const ModeSet ms = build_box_modes(8 * oracle::pi, 6, TachyonMass(1.0));
    const double at_zero = ms.size() * ms.measure() / std::pow(2 * oracle::pi, 3);
    CHECK(delta_m_box(Vec3::Zero(), ms) == doctest::Approx(at_zero).epsilon(1e-13));
    // exact reality follows from pairing k with -k
    double imag = 0.0;
    const Vec3 x(0.7, -1.3, 2.2);
    for (const Mode& mode : ms.modes()) imag += std::sin(mode.kvec.dot(x));
    CHECK(std::abs(imag) < 1e-11);
}

TEST_CASE("smeared delta_m removes the low-frequency content") {
    const ModeSet ms = build_box_modes(8 * oracle::pi, 6, TachyonMass(1.0));
    const GaussianSmearing f{Vec3(1, 2, 3), 6.0};
    const GaussianSmearing g{Vec3(2, 2, 4), 6.0};
    // direct pairing oracle
    double direct = 0.0;
    for (const Mode& mode : ms.modes()) {
        const Vec3& k = mode.kvec;
        direct += std::cos(k.dot(f.center - g.center)) * std::exp(-0.5 * (f.sigma * f.sigma + g.sigma * g.sigma) * k.squaredNorm());
    }
    direct *= ms.measure() / std::pow(2 * oracle::pi, 3);
    const double smeared = smeared_delta_m_box(f, g, ms);
    CHECK(std::abs(smeared - direct) < 1e-15);
    // the unfiltered delta would give the Gaussian overlap (~2e-4); the cut leaves ~e^-36
    CHECK(std::abs(smeared) < 1e-15);
}

TEST_CASE("smeared delta_m converges to the continuum") {
    const TachyonMass m(1.0);
    const GaussianSmearing f{Vec3(0.2, 0.1, -0.3), 1.0};
    const GaussianSmearing g{Vec3(-0.4, 0.5, 0.6), 1.0};
    const double d = (f.center - g.center).norm();
    const double width2 = f.sigma * f.sigma + g.sigma * g.sigma;
    // (2 pi^2 d)^-1 int_m^inf k sin(kd) e^{-width2 k^2 / 2} dk
    const double continuum =
        oracle::simpson([&](double k) { return cd(k * std::sin(k * d) * std::exp(-0.5 * width2 * k * k)); }, 1.0, 12.0, 20000)
            .real() /
        (2 * oracle::pi * oracle::pi * d);
    double prev = 1e9;
    for (int scale : {1, 2, 4, 8}) {
        const double L = 10.0 * scale;
        const ModeSet ms = build_box_modes(L, 10 * scale, m);
        const double err = std::abs(smeared_delta_m_box(f, g, ms) - continuum);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-2 * std::abs(continuum));
}

TEST_CASE("Klein-Gordon inner product") {
    const TachyonMass m(1.0);
    const ModeSet ms = build_box_modes(2 * oracle::pi, 2, TachyonMass(0.5));
    const PeriodicGrid grid{ms.box_length(), 5};
    const Mode& k = ms[3];
    const Mode& l = ms[17];
    const double inv_measure = 1.0 / ms.measure();

    for (double a : {0.0, 0.7}) {
        const SampledField uk = sample_mode(k, a, grid);
        const SampledField ul = sample_mode(l, a, grid);
        const SampledField uk_bar = sample_mode(k, a, grid, true);
        const SampledField ul_bar = sample_mode(l, a, grid, true);
        CHECK(std::abs(kg_inner_product(uk, uk) - inv_measure) < 1e-12);
        CHECK(std::abs(kg_inner_product(uk, ul)) < 1e-12);
        CHECK(std::abs(kg_inner_product(uk_bar, uk_bar) + inv_measure) < 1e-12);
        CHECK(std::abs(kg_inner_product(uk, ul_bar)) < 1e-12);
        CHECK(std::abs(kg_inner_product(uk_bar, ul)) < 1e-12);
        CHECK(std::abs(kg_inner_product(uk, uk_bar)) < 1e-12);
    }
    // independence of the hypersurface time for a superposition
    auto mix = [&](double t) {
        SampledField f = sample_mode(k, t, grid);
        const SampledField g = sample_mode(l, t, grid, true);
        for (std::size_t i = 0; i < f.value.size(); ++i) {
            f.value[i] += cd(0.3, -0.2) * g.value[i];
            f.time_derivative[i] += cd(0.3, -0.2) * g.time_derivative[i];
        }
        return f;
    };
    CHECK(std::abs(kg_inner_product(mix(0.0), mix(0.0)) - kg_inner_product(mix(0.7), mix(0.7))) < 1e-10);
    // conjugate symmetry
    const SampledField f = mix(0.3);
    const SampledField g = sample_mode(ms[8], 0.3, grid);
    CHECK(std::abs(kg_inner_product(f, g) - std::conj(kg_inner_product(g, f))) < 1e-13);

    const SampledField other = sample_mode(k, 0.0, PeriodicGrid{ms.box_length(), 6});
    CHECK(code_of([&] { kg_inner_product(sample_mode(k, 0.0, grid), other); }) == ErrorCode::GridMismatch);
    (void)m;
}

TEST_CASE("frequency shift helper only moves omega") {
    const ModeSet ms = build_box_modes(8.0, 2, TachyonMass(1.0));
    const ModeSet shifted = with_frequency_shift(ms, 0.1);
    for (std::size_t i = 0; i < ms.size(); ++i) {
        CHECK(shifted[i].omega == doctest::Approx(ms[i].omega + 0.1));
        CHECK(shifted[i].kvec == ms[i].kvec);
    }
}

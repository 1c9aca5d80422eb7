#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "tachyon/error.hpp"
#include "tachyon/propagators.hpp"

using namespace tachyon;

namespace {

const TachyonMass kM(1.0);

QuadratureSpec spec() { return QuadratureSpec::defaults(kM); }

// band and cutoff are in units of 1/m and m; keep them fixed in absolute terms
QuadratureSpec light_spec(TachyonMass m) {
    QuadratureSpec q = QuadratureSpec::defaults(m);
    q.k_max = 1e6;
    q.light_cone_band = 0.05 * m.value();
    return q;
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::InvalidArgument;
}

const ModeSet& small_box() {
    static const ModeSet ms = build_box_modes(8 * oracle::pi, 4, kM);
    return ms;
}

FourVector random_point(std::mt19937_64& rng, double extent) {
    std::uniform_real_distribution<double> u(-extent, extent);
    const double t = u(rng), x = u(rng), y = u(rng), z = u(rng);
    return {t, x, y, z};
}

// (2 pi)^-3 int d^3k e^{-eps omega} e^{-i (omega t - k.x)} / (2 omega) with the
// angular integral done numerically.
cd damped_3d_quadrature(double t, double r, double eps, double m) {
    const double w_max = 40.0 / eps;
    auto radial = [&](double w) -> cd {
        const double k = std::sqrt(w * w + m * m);
        const cd angular = oracle::simpson([&](double c) { return std::exp(cd(0.0, k * r * c)); }, -1.0, 1.0, 2000);
        // d^3k / (2 omega) = 2 pi k^2 dk dcos / (2 omega) = pi k dw dcos
        return oracle::pi * k * angular * std::exp(cd(-eps * w, -w * t));
    };
    return oracle::simpson(radial, 0.0, w_max, 16000) / std::pow(2 * oracle::pi, 3);
}

}  // namespace

TEST_CASE("quadrature spec validation") {
    QuadratureSpec q = spec();
    CHECK_NOTHROW(q.validate(kM));
    q.eps_damping = {0.1, 0.2};
    CHECK_THROWS_AS(q.validate(kM), Error);
    q = spec();
    q.k_max = 5.0;
    CHECK_THROWS_AS(q.validate(kM), Error);
    q = spec();
    q.n_points = 50;
    CHECK_THROWS_AS(q.validate(kM), Error);
    q = spec();
    q.extrapolation_order = 6;
    CHECK_THROWS_AS(q.validate(kM), Error);
    CHECK(spec().to_json().at("n_points") == 200);
}

TEST_CASE("radial reduction agrees with a direct 3D quadrature") {
    for (const auto& [t, r] : {std::pair{0.3, 1.0}, std::pair{1.5, 0.4}}) {
        const double eps = 0.5;
        const PropagatorValue v = wightman_radial_damped(t, r, eps, kM, spec());
        const cd ref = damped_3d_quadrature(t, r, eps, 1.0);
        CHECK(std::abs(v.value - ref) < 1e-8 * std::abs(ref));
    }
}

TEST_CASE("radial Wightman function against closed forms") {
    const std::pair<double, double> points[] = {{0, 1}, {0.5, 2}, {0, 0.2}, {2, 0.5}, {1, 0}, {0.3, 0.1}, {-0.7, 1.5}, {0, 5}};
    for (const auto& [t, r] : points) {
        CAPTURE(t);
        CAPTURE(r);
        const PropagatorValue v = wightman_radial(t, r, kM, spec());
        const double re = 0.5 * oracle::symmetric_closed_form(t, r, 1.0);
        CHECK(std::abs(v.value.real() - re) <= v.est_error + 1e-6 * std::abs(re));
        if (r > std::abs(t)) {
            const cd ref = oracle::wightman_spacelike_contour(t, r, 1.0);
            CHECK(std::abs(v.value - ref) <= v.est_error + 1e-6 * std::abs(ref));
        }
    }
    CHECK(wightman_radial(0.0, 2.0, kM, spec()).value.imag() == 0.0);
}

TEST_CASE("radial evaluation errors") {
    CHECK(code_of([] { wightman_radial(1.0, 1.01, kM, spec()); }) == ErrorCode::LightConeSingular);
    CHECK(code_of([] { wightman_radial(0.0, 0.0, kM, spec()); }) == ErrorCode::LightConeSingular);
    CHECK(code_of([] { wightman_radial(0.0, -1.0, kM, spec()); }) == ErrorCode::InvalidArgument);
    QuadratureSpec strict = spec();
    strict.tolerance = 1e-15;
    CHECK(code_of([&] { wightman_radial(0.0, 1.0, kM, strict); }) == ErrorCode::NonConvergent);
    QuadratureSpec wide = spec();
    wide.light_cone_band = 0.5;
    CHECK(code_of([&] { wightman_radial(1.0, 1.4, kM, wide); }) == ErrorCode::LightConeSingular);
}

TEST_CASE("massless reference") {
    CHECK(massless_wightman({0, 0, 0, 1}).real() == doctest::Approx(0.0253303).epsilon(1e-6));
    CHECK(massless_wightman({0, 0, 0, 1}).imag() == 0.0);
    // m -> 0 radial quadrature reproduces the closed form
    const TachyonMass tiny(1e-6);
    const PropagatorValue v = wightman_radial(0.0, 1.0, tiny, light_spec(tiny));
    CHECK(std::abs(v.value - oracle::massless_closed_form(0.0, 1.0)) < 1e-6 * 0.0253303);
    const FourVector x{0.4, 0.3, -1.2, 0.9};
    for (double lambda : {0.5, 0.1, 3.0})
        CHECK(std::abs(lambda * lambda * massless_wightman(lambda * x) - massless_wightman(x)) < 1e-14);
    CHECK(code_of([] { massless_wightman({1, 0, 0, 1}); }) == ErrorCode::LightConeSingular);
    CHECK(code_of([] { massless_wightman({1, 0, 0, 1.01}, 0.05); }) == ErrorCode::LightConeSingular);
}

TEST_CASE("scaling limit curves decrease") {
    const std::vector<double> lambdas{0.5, 0.25, 0.125};
    for (const FourVector& x : {FourVector{0, 0, 0, 1}, FourVector{0, 0.6, 0, 1}, FourVector{1, 0, 0, 0}}) {
        const auto curve = scaling_limit_curve(x, lambdas, kM, spec());
        for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].relative_error < curve[i - 1].relative_error);
        // independent estimate at t = 0: lambda^2 Delta+ / Delta0+ - 1 = -(pi/2) z Y1(z) - 1, z = m lambda r
        if (x.t == 0.0) {
            const double r = x.spatial().norm();
            for (const ScalingPoint& p : curve) {
                const double z = p.lambda * r;
                const double expected = std::abs(-0.5 * oracle::pi * z * std::cyl_neumann(1.0, z) - 1.0);
                CHECK(std::abs(p.relative_error - expected) < 1e-5);
            }
        }
    }
    // fixed lambda, m -> 0: the curves merge
    const TachyonMass tiny(1e-5);
    const std::vector<double> one{0.5};
    CHECK(scaling_limit_curve({0, 0, 0, 1}, one, tiny, light_spec(tiny)).front().relative_error < 1e-6);
}

TEST_CASE("box sums: elementary properties") {
    const ModeSet& ms = small_box();
    std::mt19937_64 rng(3);
    const FourVector x = random_point(rng, 3.0), y = random_point(rng, 3.0);

    const std::vector<Mode> one{ms[5]};
    const cd single = wightman_mode_sum(x, y, one, ms.measure());
    CHECK(std::abs(single - ms.measure() * mode_function(ms[5], x) * std::conj(mode_function(ms[5], y))) < 1e-16);

    const cd diag = wightman_box(x, x, ms);
    CHECK(diag.imag() == 0.0);
    CHECK(diag.real() > 0.0);
    CHECK(wightman_box(x, y, ms) == std::conj(wightman_box(y, x, ms)));

    // translation invariance: lattice-commensurate space shift and any time shift
    const double L = ms.box_length();
    const FourVector a{0.77, L, -2 * L, 0.0};
    CHECK(std::abs(wightman_box(x + a, y + a, ms) - wightman_box(x, y, ms)) < 1e-13);
    const FourVector b{-1.3, 0.4, 0.2, -0.9};
    CHECK(std::abs(wightman_box(x + b, y + b, ms) - wightman_box(x, y, ms)) < 1e-13);
}

TEST_CASE("decomposition and equal-time structure") {
    const ModeSet& ms = small_box();
    const BoxEvaluator box(ms);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 20; ++i) {
        const FourVector x = random_point(rng, 3.0), y = random_point(rng, 3.0);
        const cd w = box.wightman(x, y).value;
        const cd d1 = symmetric_part(x, y, box).value;
        const cd d = commutator(x, y, box).value;
        CHECK(std::abs(w - (0.5 * d1 + cd(0.0, 0.5) * d)) < 1e-12 * std::abs(w));
        CHECK(d1.imag() == 0.0);
        CHECK(d1 == symmetric_part(y, x, box).value);
        // <0|[phi(x), phi(y)]|0> = i Delta = Delta+(x, y) - Delta+(y, x)
        CHECK(std::abs(cd(0.0, 1.0) * d - (w - box.wightman(y, x).value)) < 1e-12 * std::abs(w));

        FourVector ye = y;
        ye.t = x.t;
        CHECK(std::abs(commutator(x, ye, box).value) < 1e-15);
        CHECK(std::abs(commutator_box_dt(x, ye, ms) + delta_m_box((x - ye).spatial(), ms)) < 1e-14);
    }
}

TEST_CASE("spacelike commutator does not vanish off equal times") {
    const RadialEvaluator radial(kM, spec());
    const FourVector x{0.5, 0, 0, 2};
    const PropagatorValue d = commutator(x, FourVector{}, radial);
    const double ref = 2.0 * oracle::wightman_spacelike_contour(0.5, 2.0, 1.0).imag();
    CHECK(std::abs(d.value.real() - ref) <= d.est_error + 1e-6 * std::abs(ref));
    CHECK(std::abs(d.value) > 1e-3);
}

TEST_CASE("smeared equal-time commutators") {
    const ModeSet& ms = small_box();
    const GaussianSmearing f{Vec3(1, 2, 0.5), 0.8}, g{Vec3(1.5, 1.7, 1.0), 1.1};
    CHECK(std::abs(smeared_equal_time_commutator(f, g, 0.3, ms)) < 1e-16);
    const cd pp = smeared_field_momentum_commutator(f, g, 0.3, ms);
    CHECK(std::abs(pp - cd(0.0, smeared_delta_m_box(f, g, ms))) < 1e-16);
    // derivative orders by finite differences of the smeared function
    const double h = 1e-4;
    const cd fd = (smeared_wightman_box(f, 0.3 + h, 0, g, 0.1, 0, ms) - smeared_wightman_box(f, 0.3 - h, 0, g, 0.1, 0, ms)) / (2 * h);
    CHECK(std::abs(fd - smeared_wightman_box(f, 0.3, 1, g, 0.1, 0, ms)) < 1e-8);
}

TEST_CASE("Klein-Gordon residual converges at second order") {
    const ModeSet& ms = small_box();
    std::mt19937_64 rng(5);
    for (int i = 0; i < 5; ++i) {
        const FourVector x = random_point(rng, 3.0);
        double prev = std::abs(klein_gordon_residual_box(x, ms, 0.2));
        for (double h : {0.1, 0.05}) {
            const double cur = std::abs(klein_gordon_residual_box(x, ms, h));
            CHECK(std::log2(prev / cur) > 1.8);
            prev = cur;
        }
    }
    const ModeSet broken = with_frequency_shift(ms, 0.1);
    const FourVector x{0.3, 0.2, -0.1, 0.5};
    const double r1 = std::abs(klein_gordon_residual_box(x, broken, 0.1));
    const double r2 = std::abs(klein_gordon_residual_box(x, broken, 0.05));
    CHECK(std::log2(r1 / r2) < 0.5);
}

TEST_CASE("Wightman positivity on the box") {
    const ModeSet& ms = small_box();
    std::mt19937_64 rng(6);
    const int n = 12;
    std::vector<FourVector> pts;
    for (int i = 0; i < n; ++i) pts.push_back(random_point(rng, 4.0));
    Eigen::MatrixXcd gram(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gram(i, j) = wightman_box(pts[i], pts[j], ms);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram);
    CHECK(solver.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("PCT residual") {
    const BoxEvaluator box(small_box());
    const BoostedEvaluator boosted(box, Boost(0.7, Vec3(0.2, 1, -1)));
    std::mt19937_64 rng(8);
    for (int i = 0; i < 50; ++i) {
        const FourVector x = random_point(rng, 3.0);
        CHECK(pct_residual(x, box) <= 1e-12 * std::abs(box.wightman(x, FourVector{}).value));
        CHECK(pct_residual(x, boosted) <= 1e-12 * std::abs(boosted.wightman(x, FourVector{}).value));
    }
    CHECK(pct_residual(FourVector{}, box) == 0.0);
}

TEST_CASE("boosted pullback") {
    const BoxEvaluator box(small_box());
    const FourVector x{0.4, 1.0, -0.5, 2.0}, y{-0.3, 0.1, 0.2, 0.3};
    CHECK(boosted_wightman(x, y, Boost::identity(), box).value == box.wightman(x, y).value);
    const Boost b(0.5, Vec3::UnitX());
    CHECK(boosted_wightman(x, y, b, box).value == box.wightman(b.inverse().apply(x), b.inverse().apply(y)).value);
    const nlohmann::json d = BoostedEvaluator(box, b).describe();
    CHECK(d.at("base").at("evaluator") == "box");

    const RadialEvaluator radial(kM, spec());
    const FourVector s{0.5, 0, 0, 2};
    const PropagatorValue ref1 = symmetric_part(s, FourVector{}, radial);
    const PropagatorValue ref = commutator(s, FourVector{}, radial);
    for (double beta : {0.3, -0.6, 0.8}) {
        const BoostedEvaluator pulled(radial, Boost::along_z(beta));
        const PropagatorValue v1 = symmetric_part(s, FourVector{}, pulled);
        CHECK(std::abs(v1.value - ref1.value) <= 1e-3 * std::abs(ref1.value) + v1.est_error + ref1.est_error);
    }
    const PropagatorValue moved = commutator(s, FourVector{}, BoostedEvaluator(radial, Boost::along_z(0.8)));
    CHECK(std::abs(moved.value - ref.value) > 1e-2 * std::abs(ref.value));
}

TEST_CASE("box sums approach the continuum as the box grows") {
    // Spatially smeared at one time with Gaussians; the continuum oracle is
    // a 1D integral. The remaining gap is the image tail ~ (m L)^{-3/2}.
    const GaussianSmearing f{Vec3(0.2, 0.1, -0.3), 1.0}, g{Vec3(-0.4, 0.5, 0.6), 1.0};
    const double d = (f.center - g.center).norm();
    const double t = 0.7;
    // (2 pi)^-3 int d^3k e^{-i omega t} e^{-k^2} / (2 omega) with k dk = omega dw
    const cd continuum =
        oracle::simpson([&](double w) {
            const double k = std::sqrt(w * w + 1.0);
            return std::sin(k * d) / d * std::exp(cd(-k * k, -w * t));
        }, 0.0, 12.0, 20000) / (4 * oracle::pi * oracle::pi);
    double prev = 1e9;
    for (int scale : {1, 2, 4, 8}) {
        const ModeSet ms = build_box_modes(10.0 * scale, 10 * scale, kM);
        const double err = std::abs(smeared_wightman_box(f, t, 0, g, 0.0, 0, ms) - continuum) / std::abs(continuum);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 0.1);
}

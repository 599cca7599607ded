#include <doctest.h>

#include <cmath>

#include "hv2q/bell.hpp"
#include "hv2q/general.hpp"
#include "hv2q/mc.hpp"
#include "hv2q/rng.hpp"
#include "hv2q/states.hpp"

using namespace hv2q;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("theta-hat map at aligned, orthogonal and opposite settings") {
    Rng rng(401);
    const Vec3 b = sample_unit_sphere(rng);

    const BellAxisMap same = bell_theta_hat(b, b);
    CHECK(same.theta_hat == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(norm(same.a_hat - b) <= 1e-12);

    const Vec3 a_perp = orthogonal_unit(b);
    CHECK(bell_theta_hat(a_perp, b).theta_hat == doctest::Approx(0.5 * kPi).epsilon(1e-12));

    const BellAxisMap opposite = bell_theta_hat(-b, b);
    CHECK(opposite.theta_hat == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(norm(opposite.a_hat + b) <= 1e-9);
}

TEST_CASE("theta-hat axis lies in span{a, b} at the stated angle") {
    Rng rng(402);
    for (int it = 0; it < 100; ++it) {
        const Vec3 a = sample_unit_sphere(rng);
        const Vec3 b = sample_unit_sphere(rng);
        const BellAxisMap map = bell_theta_hat(a, b);
        CHECK(is_unit(map.a_hat, 1e-12));
        CHECK(dot(map.a_hat, b) == doctest::Approx(std::cos(map.theta_hat)).epsilon(1e-12));
        // coplanarity with a and b
        CHECK(std::abs(dot(map.a_hat, normalized(cross(a, b)))) <= 1e-12);
        // same hemisphere as a
        CHECK(dot(map.a_hat, a - dot(a, b) * b) >= -1e-12);
    }
}

TEST_CASE("single-measurement assignments anchor on lambda") {
    Rng rng(403);
    const Vec3 a = sample_unit_sphere(rng);
    const Vec3 b = sample_unit_sphere(rng);
    CHECK(bell_assign_single(a, b, a).first == 1);
    CHECK(bell_assign_single(a, b, b).second == -1);
}

TEST_CASE("joint assignment anticorrelates aligned settings almost surely") {
    Rng rng(404);
    const Vec3 b = sample_unit_sphere(rng);
    for (int it = 0; it < 100; ++it) {
        const Vec3 lambda = sample_unit_sphere(rng);
        const auto [av, bv] = bell_assign_joint(b, b, lambda);
        CHECK(av * bv == -1);
    }
}

TEST_CASE("Monte Carlo averages reproduce the singlet statistics") {
    Rng rng(405);
    McSettings mc;
    mc.samples = 1000000;
    mc.seed = 4055;
    for (int it = 0; it < 3; ++it) {
        const Vec3 a = sample_unit_sphere(rng);
        const Vec3 b = sample_unit_sphere(rng);
        auto sample = [a, b](Rng& r, std::vector<double>& v) {
            const Vec3 lambda = sample_unit_sphere(r);
            const auto [av, bv] = bell_assign_joint(a, b, lambda);
            const auto [as, bs] = bell_assign_single(a, b, lambda);
            v[0] = av;
            v[1] = bv;
            v[2] = av * bv;
            v[3] = as;
            v[4] = bs;
        };
        const auto est = mc_estimate(mc, 5, sample);
        CHECK(z_score(est[0], 0.0) <= 4.0);
        CHECK(z_score(est[1], 0.0) <= 4.0);
        CHECK(z_score(est[2], -dot(a, b)) <= 4.0);
        CHECK(z_score(est[3], 0.0) <= 4.0);
        CHECK(z_score(est[4], 0.0) <= 4.0);
        mc.seed += 17;
    }
}

TEST_CASE("orthogonal settings decorrelate") {
    Rng rng(406);
    const Vec3 b = sample_unit_sphere(rng);
    const Vec3 a = orthogonal_unit(b);
    McSettings mc;
    mc.samples = 1000000;
    mc.seed = 4066;
    auto sample = [a, b](Rng& r, std::vector<double>& v) {
        const Vec3 lambda = sample_unit_sphere(r);
        const auto [av, bv] = bell_assign_joint(a, b, lambda);
        v[0] = av * bv;
    };
    const auto est = mc_estimate(mc, 1, sample);
    CHECK(z_score(est[0], 0.0) <= 4.0);
}

TEST_CASE("hemisphere-overlap identity gives the negative scalar product") {
    // <sign(a_hat.l) * (-sign(b.l))> = 2 theta_hat / pi - 1 for uniform l, and
    // theta_hat = pi (1 - a.b)/2 turns that into -a.b.
    Rng rng(407);
    for (int it = 0; it < 200; ++it) {
        const Vec3 a = sample_unit_sphere(rng);
        const Vec3 b = sample_unit_sphere(rng);
        const BellAxisMap map = bell_theta_hat(a, b);
        const double analytic = 2.0 * map.theta_hat / kPi - 1.0;
        CHECK(analytic == doctest::Approx(-dot(a, b)).epsilon(1e-12));
        // Quadrature route through the hemisphere response overlap.
        if (it < 10)
            CHECK(std::abs(cap_correlation(map.theta_hat, 0.5 * kPi, 0.5 * kPi) + dot(a, b)) <=
                  1e-9);
    }
}

TEST_CASE("sphere sampling moments") {
    Rng rng(408);
    const Vec3 v = sample_unit_sphere(rng);
    McSettings mc;
    mc.samples = 1000000;
    mc.seed = 4088;
    const double cos_cap = std::cos(1.0);
    auto sample = [v, cos_cap](Rng& r, std::vector<double>& out) {
        const Vec3 lambda = sample_sphere(r);
        const double proj = dot(v, lambda);
        out[0] = proj * proj;
        out[1] = lambda.x;
        out[2] = lambda.y;
        out[3] = lambda.z;
        out[4] = proj >= cos_cap ? 1.0 : 0.0;
    };
    const auto est = mc_estimate(mc, 5, sample);
    CHECK(z_score(est[0], 1.0 / 3.0) <= 4.0);           // <(v.l)^2> = 1/3
    CHECK(z_score(est[1], 0.0) <= 4.0);
    CHECK(z_score(est[2], 0.0) <= 4.0);
    CHECK(z_score(est[3], 0.0) <= 4.0);
    CHECK(z_score(est[4], 0.5 * (1.0 - cos_cap)) <= 4.0);  // cap area fraction
}

TEST_CASE("verify_bell passes on the singlet and rejects other states") {
    const LocalObservable x = canonicalize_observable(0.0, 1.0, axis_x());
    const LocalObservable y = canonicalize_observable(0.0, 1.0, Vec3{0.6, 0.0, 0.8});
    VerifySettings settings;
    settings.mc.samples = 200000;
    settings.mc.seed = 4099;
    const VerificationReport r = verify_bell(singlet(), x, y, settings);
    CHECK(r.pass);
    CHECK(r.max_moment_error <= 1e-10);
    CHECK(r.gamma == doctest::Approx(0.5 * kPi * (1.0 - dot(x.axis, y.axis))).epsilon(1e-12));

    CHECK_THROWS_AS(verify_bell(TwoQubitState{Ket4::basis(0)}, x, y, settings),
                    std::invalid_argument);
    const LocalObservable shifted = canonicalize_observable(0.5, 1.0, axis_x());
    CHECK_THROWS_AS(verify_bell(singlet(), shifted, y, settings), std::invalid_argument);
}

#include <doctest.h>

#include <cmath>

#include "hv2q/frame.hpp"
#include "hv2q/oracle.hpp"
#include "hv2q/rng.hpp"
#include "hv2q/states.hpp"

using namespace hv2q;

TEST_CASE("tilde transform is trivial on maximally entangled states") {
    const CanonicalFrame f = frame_of(singlet());
    Rng rng(301);
    for (int it = 0; it < 20; ++it) {
        const LocalObservable x = random_observable(rng);
        const TildeObservable t = tilde_transform(x, f);
        CHECK(t.alpha1_t == doctest::Approx(x.alpha1).epsilon(1e-12));
        CHECK(t.alpha2_t == doctest::Approx(x.alpha2).epsilon(1e-12));
        const Vec3 a_prime = rotate(f, x.axis);
        CHECK(norm(t.weighted_axis - x.alpha2 * a_prime) <= 1e-12);
    }
}

TEST_CASE("tilde transform of an identity-like observable points along n'") {
    Ket4 k;
    k[0] = std::sqrt(0.8);
    k[3] = std::sqrt(0.2);
    const CanonicalFrame f = frame_of(make_state(k));
    const LocalObservable x = canonicalize_observable(2.0, 0.0, axis_z());
    const TildeObservable t = tilde_transform(x, f);
    CHECK(t.alpha1_t == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(t.alpha2_t == doctest::Approx(2.0 * 0.6).epsilon(1e-12));  // alpha1 sin(2 phi)
    CHECK(norm(t.weighted_axis - (2.0 * 0.6) * f.n_prime) <= 1e-12);
}

TEST_CASE("tilde closed form matches an independent matrix-product route") {
    Rng rng(302);
    for (int it = 0; it < 200; ++it) {
        const TwoQubitState psi = random_state(rng);
        const CanonicalFrame f = frame_of(psi);
        const LocalObservable x = random_observable(rng);
        const TildeObservable t = tilde_transform(x, f);

        // Rebuild through explicit matrices only.
        const CMat2 ud = f.u.adjoint();
        const CMat2 tilde = (ud * f.n_op * f.u) * (ud * observable_matrix(x) * f.u) *
                            (ud * f.n_op * f.u);
        const double m1 = 0.5 * tilde.trace().real();
        const Vec3 w{0.5 * (sigma_x() * tilde).trace().real(),
                     0.5 * (sigma_y() * tilde).trace().real(),
                     0.5 * (sigma_z() * tilde).trace().real()};
        CHECK(std::abs(m1 - t.alpha1_t) <= 1e-12);
        CHECK(norm(w - t.weighted_axis) <= 1e-12);
    }
}

TEST_CASE("averages on the singlet reduce to the scalar product form") {
    const TwoQubitState s = singlet();
    Rng rng(303);
    for (int it = 0; it < 50; ++it) {
        const LocalObservable x = random_observable(rng);
        const LocalObservable y = random_observable(rng);
        const OracleResult r = qm_averages(s, x, y);
        CHECK(r.direct.x == doctest::Approx(x.alpha1).epsilon(1e-10));
        CHECK(r.direct.y == doctest::Approx(y.alpha1).epsilon(1e-10));
        const double expected =
            x.alpha1 * y.alpha1 - x.alpha2 * y.alpha2 * dot(x.axis, y.axis);
        CHECK(r.direct.xy == doctest::Approx(expected).epsilon(1e-10));
        CHECK(r.discrepancy <= 1e-10);
    }
}

TEST_CASE("averages on a symmetric Bell state") {
    Ket4 k;
    k[0] = 1.0 / std::sqrt(2.0);
    k[3] = 1.0 / std::sqrt(2.0);
    const LocalObservable x = canonicalize_observable(0.0, 1.0, axis_x());
    const OracleResult r = qm_averages(make_state(k), x, x);
    CHECK(r.direct.xy == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("closed-form single averages match the direct route on random inputs") {
    Rng rng(304);
    for (int it = 0; it < 1000; ++it) {
        const TwoQubitState psi = random_state(rng);
        const LocalObservable x = random_observable(rng);
        const LocalObservable y = random_observable(rng);
        const OracleResult r = qm_averages(psi, x, y);
        CHECK(std::abs(r.direct.x - r.closed_form.x) <= 1e-10);
        CHECK(std::abs(r.direct.y - r.closed_form.y) <= 1e-10);
        CHECK(std::abs(r.direct.xy - r.closed_form.xy) <= 1e-10);
    }
}

TEST_CASE("an identity partner recovers the single-party average") {
    Rng rng(305);
    for (int it = 0; it < 50; ++it) {
        const TwoQubitState psi = random_state(rng);
        const LocalObservable x = random_observable(rng);
        const LocalObservable id_y = canonicalize_observable(1.0, 0.0, axis_z());
        const OracleResult r = qm_averages(psi, x, id_y);
        CHECK(r.direct.xy == doctest::Approx(r.direct.x).epsilon(1e-10));
        CHECK(r.direct.y == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("joint probabilities: perfect anticorrelation on the singlet") {
    const LocalObservable x = canonicalize_observable(0.0, 1.0, axis_z());
    const JointTable t = joint_probabilities(singlet(), x, x);
    CHECK(t.p[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(t.p[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(t.p[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(t.p[3] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("joint probabilities: product state is deterministic") {
    const LocalObservable z = canonicalize_observable(0.0, 1.0, axis_z());
    const JointTable t = joint_probabilities(TwoQubitState{Ket4::basis(0)}, z, z);
    CHECK(t.p[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.p[1] + t.p[2] + t.p[3] <= 1e-12);
}

TEST_CASE("moments reconstructed from the table match the averages") {
    Rng rng(306);
    for (int it = 0; it < 200; ++it) {
        const TwoQubitState psi = random_state(rng);
        const LocalObservable x = random_observable(rng);
        const LocalObservable y = random_observable(rng);
        const JointTable t = joint_probabilities(psi, x, y);

        double sum = 0.0, mean_f = 0.0, mean_g = 0.0, mean_fg = 0.0;
        const int fs[4] = {+1, +1, -1, -1};
        const int gs[4] = {+1, -1, +1, -1};
        for (int k = 0; k < 4; ++k) {
            sum += t.p[(size_t)k];
            mean_f += fs[k] * t.p[(size_t)k];
            mean_g += gs[k] * t.p[(size_t)k];
            mean_fg += fs[k] * gs[k] * t.p[(size_t)k];
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));

        const OracleResult r = qm_averages(psi, x, y);
        CHECK(std::abs((x.alpha1 + x.alpha2 * mean_f) - r.direct.x) <= 1e-10);
        CHECK(std::abs((y.alpha1 + y.alpha2 * mean_g) - r.direct.y) <= 1e-10);
        const double xy = x.alpha1 * y.alpha1 + x.alpha1 * y.alpha2 * mean_g +
                          x.alpha2 * y.alpha1 * mean_f + x.alpha2 * y.alpha2 * mean_fg;
        CHECK(std::abs(xy - r.direct.xy) <= 1e-10);
    }
}

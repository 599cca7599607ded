#pragma once

#include <utility>

#include "hv2q/report.hpp"
#include "hv2q/rng.hpp"
#include "hv2q/states.hpp"
#include "hv2q/vec3.hpp"

namespace hv2q {

/// sign with the measure-zero tie resolved to +1.
inline int sign_pm(double v) { return v >= 0.0 ? 1 : -1; }

/// The remapped first-party axis for joint singlet measurements:
/// theta_hat = pi (1 - a.b) / 2 and a_hat lies at angle theta_hat from b,
/// inside span{a, b} on a's side (the azimuth is a gauge choice; only the
/// angle to b carries meaning).
struct BellAxisMap {
    double theta_hat = 0.0;
    Vec3 a_hat;
};

BellAxisMap bell_theta_hat(Vec3 a, Vec3 b);

/// Outcome pair (A, B) when only one side is measured: A = sign(a.lambda),
/// B = -sign(b.lambda).
std::pair<int, int> bell_assign_single(Vec3 a, Vec3 b, Vec3 lambda);

/// Outcome pair for a joint measurement: A = sign(a_hat.lambda),
/// B = -sign(b.lambda).
std::pair<int, int> bell_assign_joint(Vec3 a, Vec3 b, Vec3 lambda);

/// Uniform hidden variable on the unit sphere.
inline Vec3 sample_sphere(Rng& rng) { return sample_unit_sphere(rng); }

/// Full verification of the original singlet model. The state must be the
/// singlet and both observables plain spin components (alpha1 = 0,
/// alpha2 = 1); anything else is rejected with std::invalid_argument.
VerificationReport verify_bell(const TwoQubitState& psi, const LocalObservable& x,
                               const LocalObservable& y, const VerifySettings& settings);

}  // namespace hv2q

#pragma once

#include "hv2q/frame.hpp"
#include "hv2q/report.hpp"
#include "hv2q/states.hpp"

namespace hv2q {

/// Response half-angles on the sphere:
///   cos(xi)  = -sin(2 phi) a'.n'   (independent of the partner setting)
///   cos(chi) = -sin(2 phi) b.n'
struct ModelAngles {
    double xi = 0.0, chi = 0.0;
    double cos_xi = 0.0, cos_chi = 0.0;
};

ModelAngles model_angles(const CanonicalFrame& frame, const LocalObservable& x,
                         const LocalObservable& y);

/// Target vector of the joint correlation: <FG> must equal -r.b with
/// r = cos(2 phi) a' + 2 (a'.n') sin^2(phi) n'.   ||r|| <= 1 always.
Vec3 r_vector(const CanonicalFrame& frame, const LocalObservable& x);

/// Fraction of the unit sphere covered by the intersection of two caps with
/// half-angles xi and chi whose axes are separated by gamma. Evaluated by 1D
/// quadrature over the polar angle with the closed-form azimuthal extent per
/// ring (absolute error well below 1e-9).
double cap_intersection_fraction(double gamma, double xi, double chi);

/// Correlation <FG> of the two cap responses at axis separation gamma:
/// E(gamma) = 2A + 2B - 4 I(gamma) - 1 with the cap area fractions
/// A = (1 - cos xi)/2, B = (1 - cos chi)/2. Nondecreasing in gamma.
double cap_correlation(double gamma, double xi, double chi);

/// Extremes of E over the axis direction: E(0) = |cos xi - cos chi| - 1 and
/// E(pi) = 1 - |cos xi + cos chi|.
struct CorrelationBounds {
    double min_value = -1.0;
    double max_value = 1.0;
};

CorrelationBounds correlation_bounds(double xi, double chi);

/// Fully solved hidden-variable response for one (state, X, Y) input.
struct ModelParams {
    double xi = 0.0, chi = 0.0;
    double cos_xi = 0.0, cos_chi = 0.0;
    Vec3 r;
    Vec3 a_hat;
    double gamma = 0.0;  // angle between a_hat and b
    CorrelationBounds bounds;
    double target = 0.0;    // -r.b
    double residual = 0.0;  // |E(gamma) - target|
    int iterations = 0;     // bisection steps taken
};

/// Finds the cap-axis separation gamma with E(gamma) = -r.b by bracketing and
/// bisection, then places a_hat at angle gamma from b inside span{b, a'}
/// (deterministic fallback when a' is parallel to b). The target always lies
/// inside [E(0), E(pi)]; a target outside the bounds beyond 1e-9 signals a
/// bug and raises InvariantViolation.
ModelParams solve_ahat(const CanonicalFrame& frame, const LocalObservable& x,
                       const LocalObservable& y);

/// Deterministic outcome assignment for one hidden variable:
///   F = +1 iff a_hat.lambda >= cos(xi)   (ties resolved to the >= branch)
///   G = +1 iff b.lambda     <  cos(chi)
/// x_value = alpha1 + alpha2 F, y_value = beta1 + beta2 G.
struct ValueAssignment {
    double x_value = 0.0, y_value = 0.0;
    int f = 1, g = 1;
};

ValueAssignment assign_values(const ModelParams& params, const LocalObservable& x,
                              const LocalObservable& y, Vec3 lambda);

/// Angles of a unit-vector triple and the triangle-type inequality
/// |cos(omega) - cos(tau) cos(sigma)| <= sin(tau) sin(sigma) they satisfy.
struct TripleAngles {
    double tau = 0.0, sigma = 0.0, omega = 0.0;
};

/// tau = angle(a', n'), sigma = angle(n', b), omega = angle(a', b).
TripleAngles triple_angles(const CanonicalFrame& frame, const LocalObservable& x,
                           const LocalObservable& y);

struct InequalityCheck {
    bool holds = false;
    double slack = 0.0;  // sin(tau) sin(sigma) - |cos(omega) - cos(tau) cos(sigma)|
};

InequalityCheck angle_inequality(double tau, double sigma, double omega);

/// End-to-end check of the sphere model against the exact oracle: analytic
/// moments and joint table, plus (optionally) seeded Monte Carlo estimates.
VerificationReport verify_general(const TwoQubitState& psi, const LocalObservable& x,
                                  const LocalObservable& y, const VerifySettings& settings);

}  // namespace hv2q

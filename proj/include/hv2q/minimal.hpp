#pragma once

#include "hv2q/frame.hpp"
#include "hv2q/general.hpp"
#include "hv2q/report.hpp"
#include "hv2q/states.hpp"

namespace hv2q {

/// Response half-widths when the hidden variable lives on a unit circle:
///   xi  = pi (1 + sin(2 phi) a'.n') / 2
///   chi = pi (1 + sin(2 phi) b.n') / 2
struct MinimalAngles {
    double xi = 0.0, chi = 0.0;
};

MinimalAngles minimal_angles(const CanonicalFrame& frame, const LocalObservable& x,
                             const LocalObservable& y);

/// Circle-model response parameters. The circle positions are a gauge choice:
/// b sits at angle 0 and the remapped axis a_hat at angle theta_hat.
struct MinimalParams {
    double xi = 0.0, chi = 0.0;
    double theta_hat = 0.0;       // pi (1 - r.b) / 2
    double theta_sum_slack = 0.0; // xi + chi - theta_hat, >= 0 in the operative regime
    double target = 0.0;          // -r.b
};

/// theta_hat = pi (1 - r.b) / 2 with the assumption theta_hat <= xi + chi
/// checked and reported; exceeding it beyond 1e-9 raises InvariantViolation.
MinimalParams minimal_theta_hat(const CanonicalFrame& frame, const LocalObservable& x,
                                const LocalObservable& y);

/// Total arc length (in radians) of the intersection of two circular arcs
/// with half-widths half1 and half2 whose centers are `separation` apart.
double arc_overlap(double separation, double half1, double half2);

/// Correlation <FG> of the two arc responses. Computed from the exact arc
/// overlap; inside the operative regime |theta_hat - (xi + chi)| <= 0 this
/// coincides with the piecewise form (2/pi) min{xi + chi, theta_hat} - 1.
double minimal_correlation(double xi, double chi, double theta_hat);

/// Gap between the exact arc value and the piecewise form; zero on the
/// operative domain, nonzero when arcs wrap or one contains the other.
double minimal_correlation_formula_gap(double xi, double chi, double theta_hat);

/// Uniform hidden variable on the circle, an angle in [0, 2 pi).
inline double sample_circle(Rng& rng) { return sample_circle_angle(rng); }

struct MinimalAssignment {
    double x_value = 0.0, y_value = 0.0;
    int f = 1, g = 1;
};

/// Angular-distance responses with ties on the >= branch:
///   F = +1 iff dist(lambda, theta_hat) <= xi
///   G = -1 iff dist(lambda, 0)        <= chi
MinimalAssignment assign_minimal(const MinimalParams& params, const LocalObservable& x,
                                 const LocalObservable& y, double lambda_angle);

/// End-to-end check of the circle model against the exact oracle.
VerificationReport verify_minimal(const TwoQubitState& psi, const LocalObservable& x,
                                  const LocalObservable& y, const VerifySettings& settings);

/// Factorization defect D(a, b) = |(-r.b) - <F><G>| with the sphere-model
/// single-response means. Zero for every b exactly when the state is a
/// product state (phi = pi/4).
double factorization_defect(const CanonicalFrame& frame, const LocalObservable& x,
                            const LocalObservable& y);

/// Exact supremum of the defect over all partner axes b.
double factorization_defect_sup(const CanonicalFrame& frame, const LocalObservable& x);

/// Probes the defect over a list of partner observables.
LocalityReport locality_probe(const CanonicalFrame& frame, const LocalObservable& x,
                              const std::vector<LocalObservable>& partners);

}  // namespace hv2q

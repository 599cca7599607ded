#pragma once

#include "hv2q/frame.hpp"
#include "hv2q/states.hpp"

namespace hv2q {

/// The transformed observable N' X' N' = alpha1_t * I + alpha2_t * sigma.a_t
/// expressed in canonical form (alpha2_t >= 0). `weighted_axis` keeps the raw
/// combination alpha2_t * a_t, which is what the correlation formulas consume.
struct TildeObservable {
    double alpha1_t = 0.0;
    double alpha2_t = 0.0;
    Vec3 a_t{0.0, 0.0, 1.0};
    Vec3 weighted_axis{0.0, 0.0, 0.0};
};

/// Closed-form transform of a canonical observable through the frame:
///   alpha1_t         = alpha1 + alpha2 sin(2 phi) a'.n'
///   alpha2_t * a_t   = alpha2 cos(2 phi) a' + (alpha1 sin(2 phi)
///                      + 2 alpha2 sin^2(phi) a'.n') n'
/// The same quantity is recomputed as the literal matrix product N' X' N' and
/// the two routes must agree within 1e-10 (NumericalError otherwise).
TildeObservable tilde_transform(const LocalObservable& x, const CanonicalFrame& frame);

struct Moments {
    double x = 0.0;
    double y = 0.0;
    double xy = 0.0;
};

/// Quantum-mechanical averages computed along both routes.
struct OracleResult {
    Moments direct;       // 4x4 matrix expectations
    Moments closed_form;  // frame route through the transformed observable
    double discrepancy = 0.0;
};

/// <X (x) I>, <I (x) Y>, <X (x) Y> in the given state. Both routes are always
/// evaluated; a discrepancy above 1e-9 raises NumericalError.
OracleResult qm_averages(const TwoQubitState& psi, const LocalObservable& x,
                         const LocalObservable& y);

/// Born-rule probabilities of the four outcome pairs. Entry order:
/// (+,+), (+,-), (-,+), (-,-) where +/- labels the alpha1 +/- alpha2 branch
/// (projectors built from the canonical axes).
struct JointTable {
    std::array<double, 4> p{};
};

JointTable joint_probabilities(const TwoQubitState& psi, const LocalObservable& x,
                               const LocalObservable& y);

/// Table determined by the three +/-1-valued moments:
/// p(f,g) = (1 + f<F> + g<G> + fg<FG>)/4 in the same order as JointTable.
JointTable table_from_sign_moments(double mean_f, double mean_g, double mean_fg);

}  // namespace hv2q

#pragma once

#include "hv2q/report.hpp"
#include "hv2q/states.hpp"

namespace hv2q {

/// Compares the value the sphere model gives an observable inside a joint
/// measurement with the value it gives the same observable measured alone.
/// The joint context uses the solved cap axis a_hat; the single context uses
/// the bare axis. Two single-context conventions exist (the lab axis a and
/// the frame-rotated a'); the report carries both.
ViolationReport product_rule_violation(const TwoQubitState& psi, const LocalObservable& x,
                                       const LocalObservable& y, const McSettings& mc);

/// The 3x3 array of two-qubit spin products whose row products are +I and
/// whose column products are +I, +I, -I: no global sign assignment can honor
/// all six identities at once. Verifies the matrix identities, exhausts the
/// 2^9 sign patterns, and evaluates the model's value map on the singlet for
/// a sampled set of hidden variables.
PeresSquareReport peres_square(uint64_t n_samples = 1000, uint64_t seed = 1);

}  // namespace hv2q

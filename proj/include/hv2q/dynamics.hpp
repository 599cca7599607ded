#pragma once

#include <vector>

#include "hv2q/frame.hpp"
#include "hv2q/report.hpp"
#include "hv2q/states.hpp"

namespace hv2q {

enum class ModelKind { bell, general, minimal };

/// psi_t = exp(-i H t) psi0 for Hermitian H (hbar = 1), defensively
/// renormalized; norm drift beyond 1e-12 raises NumericalError.
TwoQubitState evolve(const TwoQubitState& psi0, const CMat4& hamiltonian, double t);

/// One sampled instant of an evolved trajectory. The hidden-variable
/// distribution never evolves; only the frame and response parameters do.
struct TimelineStep {
    double t = 0.0;
    TwoQubitState state;
    CanonicalFrame frame;
    double mu1 = 0.0;
    VerificationReport verification;
    bool pass = false;
};

struct Timeline {
    std::vector<TimelineStep> steps;
    bool all_pass = false;
};

/// Evolves the state to each requested time (times must be nondecreasing),
/// recomputes the frame from scratch there, and runs the static verification
/// of the chosen model. mc.samples == 0 keeps each step analytic-only.
Timeline frame_timeline(const TwoQubitState& psi0, const CMat4& hamiltonian,
                        const std::vector<double>& times, const LocalObservable& x,
                        const LocalObservable& y, ModelKind model,
                        const VerifySettings& settings);

}  // namespace hv2q

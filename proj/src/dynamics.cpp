#include "hv2q/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "hv2q/bell.hpp"
#include "hv2q/errors.hpp"
#include "hv2q/general.hpp"
#include "hv2q/minimal.hpp"

namespace hv2q {

TwoQubitState evolve(const TwoQubitState& psi0, const CMat4& hamiltonian, double t) {
    const CMat4 propagator = unitary_exp(hamiltonian, t);
    Ket4 k = propagator * psi0.ket;
    if (std::abs(k.norm() - 1.0) > 1e-12)
        throw NumericalError("evolve: norm drift " + std::to_string(k.norm() - 1.0));
    return make_state(k);
}

Timeline frame_timeline(const TwoQubitState& psi0, const CMat4& hamiltonian,
                        const std::vector<double>& times, const LocalObservable& x,
                        const LocalObservable& y, ModelKind model,
                        const VerifySettings& settings) {
    for (size_t i = 1; i < times.size(); ++i)
        if (times[i] < times[i - 1])
            throw std::invalid_argument("frame_timeline: times must be nondecreasing");

    Timeline tl;
    tl.all_pass = true;
    tl.steps.reserve(times.size());
    for (const double t : times) {
        TimelineStep step;
        step.t = t;
        step.state = evolve(psi0, hamiltonian, t);
        step.frame = frame_of(step.state);
        step.mu1 = 0.5 * (1.0 + step.frame.sin_two_phi);
        switch (model) {
            case ModelKind::bell:
                step.verification = verify_bell(step.state, x, y, settings);
                break;
            case ModelKind::general:
                step.verification = verify_general(step.state, x, y, settings);
                break;
            case ModelKind::minimal:
                step.verification = verify_minimal(step.state, x, y, settings);
                break;
        }
        step.pass = step.verification.pass;
        tl.all_pass = tl.all_pass && step.pass;
        tl.steps.push_back(std::move(step));
    }
    return tl;
}

}  // namespace hv2q

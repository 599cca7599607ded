#pragma once

#include <cstdint>

#include "hv2q/linalg.hpp"
#include "hv2q/rng.hpp"

namespace hv2q {

/// Dichotomic local observable alpha1 * I + alpha2 * sigma.axis in canonical
/// form: alpha2 >= 0, unit axis. Spectrum is {alpha1 - alpha2, alpha1 + alpha2}.
struct LocalObservable {
    double alpha1 = 0.0;
    double alpha2 = 1.0;
    Vec3 axis{0.0, 0.0, 1.0};
};

/// Canonical form of (alpha1, alpha2, axis): a negative alpha2 flips the axis,
/// the axis is normalized, and alpha2 == 0 pins the (physically irrelevant)
/// axis to +z so downstream model parameters stay deterministic.
LocalObservable canonicalize_observable(double alpha1, double alpha2, Vec3 axis);

/// 2x2 Hermitian matrix of the observable.
CMat2 observable_matrix(const LocalObservable& o);

/// Normalized pure state of two qubits in the |00>,|01>,|10>,|11> basis.
struct TwoQubitState {
    Ket4 ket;
};

/// Normalizes and wraps a ket. Throws std::invalid_argument for a ~zero ket.
TwoQubitState make_state(const Ket4& ket);

/// (|01> - |10>)/sqrt(2).
TwoQubitState singlet();

/// Haar-like random state: four complex Gaussian amplitudes, normalized.
TwoQubitState random_state(Rng& rng);
TwoQubitState random_state(uint64_t seed);

/// Random product state u (x) v of two Haar-like single-qubit kets.
TwoQubitState random_product_state(Rng& rng);

/// Random state with prescribed Schmidt weight mu1 and Haar-like local bases.
TwoQubitState random_state_with_schmidt_weight(Rng& rng, double mu1);

/// Random canonical observable: alpha1 in [-2,2], alpha2 in [0,2], axis
/// uniform on the sphere.
LocalObservable random_observable(Rng& rng);
LocalObservable random_observable(uint64_t seed);

/// Haar-like random unit 2-ket.
Ket2 random_ket2(Rng& rng);

/// Random 4x4 Hermitian matrix with Gaussian entries.
CMat4 random_hermitian4(Rng& rng);

/// Random local Hamiltonian h1 (x) I + I (x) h2.
CMat4 random_local_hamiltonian(Rng& rng);

}  // namespace hv2q

#pragma once

#include <string>

#include "hv2q/linalg.hpp"
#include "hv2q/states.hpp"

namespace hv2q {

/// State format: {"amplitudes": [[re,im],[re,im],[re,im],[re,im]]} in basis
/// order |00>,|01>,|10>,|11>. The ket is normalized on load.
TwoQubitState parse_state_json(const std::string& text);

/// Observable format: {"alpha1": r, "alpha2": r, "axis": [x,y,z]}.
/// Canonicalized on load.
LocalObservable parse_observable_json(const std::string& text);

/// Hamiltonian format: 4x4 nested array of [re,im] pairs; must be Hermitian
/// within 1e-10.
CMat4 parse_hamiltonian_json(const std::string& text);

/// Serialize back out (same schemas, 17-significant-digit floats).
std::string state_to_json(const TwoQubitState& psi);
std::string observable_to_json(const LocalObservable& o);

/// Treats the argument as inline JSON when it starts with '{' or '[',
/// otherwise as a path to read. Throws std::runtime_error when the file
/// cannot be read.
std::string load_inline_or_file(const std::string& arg);

}  // namespace hv2q

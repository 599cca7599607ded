#pragma once

#include "hv2q/linalg.hpp"
#include "hv2q/states.hpp"

namespace hv2q {

/// Schmidt decomposition psi = sqrt(mu1) |a1 b1> + sqrt(mu2) |a2 b2> with
/// mu1 >= mu2, mu1 + mu2 = 1 and orthonormal local bases.
struct SchmidtData {
    double mu1 = 1.0;
    double mu2 = 0.0;
    std::array<Ket2, 2> a_basis{};
    std::array<Ket2, 2> b_basis{};
};

SchmidtData schmidt_decompose(const TwoQubitState& psi);

/// Canonical factorization psi = N (U (x) I) |singlet> of a two-qubit pure
/// state. N = cos(phi) I + sin(phi) sigma.n is Hermitian positive with
/// sigma.n |a1> = |a1>, phi in [0, pi/4] (phi = 0: maximally entangled,
/// phi = pi/4: product state). rot is the SO(3) rotation induced by U and
/// n_prime = rot * n.
struct CanonicalFrame {
    double phi = 0.0;
    double sin_two_phi = 0.0;  // equals mu1 - mu2
    double cos_two_phi = 1.0;  // equals 2*sqrt(mu1*mu2)
    Vec3 n{0.0, 0.0, 1.0};
    Vec3 n_prime{0.0, 0.0, 1.0};
    CMat2 u;      // unitary factor
    CMat2 n_op;   // Hermitian factor N
    Mat3 rot;     // rotation induced by u
};

/// Builds the frame from Schmidt data. The factorization is re-multiplied and
/// compared with the Schmidt reconstruction; a residual above 1e-10 (up to
/// global phase) raises NumericalError rather than being silently accepted.
CanonicalFrame build_frame(const SchmidtData& sd);

/// schmidt_decompose + build_frame, with the residual also checked against
/// the original ket.
CanonicalFrame frame_of(const TwoQubitState& psi);

/// Applies the induced rotation: realizes a -> a' and n -> n'.
Vec3 rotate(const CanonicalFrame& frame, Vec3 v);

/// Distance between kets up to a global phase, aligned on the
/// largest-magnitude amplitude of the reference.
double ket_distance_up_to_phase(const Ket4& reference, const Ket4& candidate);

}  // namespace hv2q

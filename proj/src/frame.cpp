#include "hv2q/frame.hpp"

#include <cmath>

#include "hv2q/errors.hpp"
#include "hv2q/tolerances.hpp"

namespace hv2q {

namespace {

Ket4 schmidt_reconstruction(const SchmidtData& sd) {
    const double s1 = std::sqrt(sd.mu1), s2 = std::sqrt(sd.mu2);
    const Ket4 t1 = tensor_product(sd.a_basis[0], sd.b_basis[0]);
    const Ket4 t2 = tensor_product(sd.a_basis[1], sd.b_basis[1]);
    Ket4 k;
    for (int i = 0; i < 4; ++i) k[i] = s1 * t1[i] + s2 * t2[i];
    return k;
}

}  // namespace

double ket_distance_up_to_phase(const Ket4& reference, const Ket4& candidate) {
    int anchor = 0;
    double best = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (std::abs(reference[i]) > best) {
            best = std::abs(reference[i]);
            anchor = i;
        }
    }
    cplx phase{1.0, 0.0};
    if (std::abs(candidate[anchor]) > 1e-14)
        phase = (reference[anchor] / candidate[anchor]);
    if (std::abs(phase) > 1e-14) phase /= std::abs(phase);
    Ket4 aligned;
    for (int i = 0; i < 4; ++i) aligned[i] = phase * candidate[i];
    return max_abs_diff(reference, aligned);
}

SchmidtData schmidt_decompose(const TwoQubitState& psi) {
    // Coefficient matrix c(i,j) = <ij|psi>.
    CMat2 c;
    c(0, 0) = psi.ket[0];
    c(0, 1) = psi.ket[1];
    c(1, 0) = psi.ket[2];
    c(1, 1) = psi.ket[3];
    const Svd2 svd = svd_2x2(c);

    SchmidtData sd;
    const double w1 = svd.s[0] * svd.s[0], w2 = svd.s[1] * svd.s[1];
    const double total = w1 + w2;
    sd.mu1 = w1 / total;
    sd.mu2 = w2 / total;
    sd.a_basis = svd.left;
    // |b_k> carries the conjugate of the right singular vector.
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            sd.b_basis[static_cast<size_t>(k)][i] = std::conj(svd.right[static_cast<size_t>(k)][i]);

    if (ket_distance_up_to_phase(psi.ket, schmidt_reconstruction(sd)) > tol.spectral)
        throw NumericalError("schmidt_decompose: reconstruction residual above tolerance");
    return sd;
}

CanonicalFrame build_frame(const SchmidtData& sd) {
    CanonicalFrame f;
    const double s1 = std::sqrt(sd.mu1), s2 = std::sqrt(sd.mu2);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double cos_phi = (s1 + s2) * inv_sqrt2;
    const double sin_phi = (s1 - s2) * inv_sqrt2;
    f.phi = std::atan2(sin_phi, cos_phi);
    f.sin_two_phi = sd.mu1 - sd.mu2;
    f.cos_two_phi = 2.0 * s1 * s2;

    f.n = bloch_vector(sd.a_basis[0]);

    f.n_op = pauli_dot(f.n);
    for (auto& e : f.n_op.m) e *= sin_phi;
    f.n_op(0, 0) += cos_phi;
    f.n_op(1, 1) += cos_phi;

    // u1: |0> -> |a1>, |1> -> -|a2>;  u2: |0> -> |b2>, |1> -> |b1>.
    // The second factor acts on particle 2; transported through the singlet
    // onto particle 1 it becomes the adjugate, so u = u1 * adj(u2).
    CMat2 u1, u2;
    for (int i = 0; i < 2; ++i) {
        u1(i, 0) = sd.a_basis[0][i];
        u1(i, 1) = -sd.a_basis[1][i];
        u2(i, 0) = sd.b_basis[1][i];
        u2(i, 1) = sd.b_basis[0][i];
    }
    f.u = u1 * adjugate(u2);
    if (!f.u.is_unitary(tol.spectral))
        throw NumericalError("build_frame: unitary factor failed the unitarity check");

    f.rot = rotation_from_unitary(f.u);
    if (std::abs(f.rot.det() - 1.0) > tol.spectral)
        throw NumericalError("build_frame: induced rotation is not special orthogonal");
    f.n_prime = f.rot * f.n;

    // Factorization gate: N (u (x) I) |singlet| must reproduce the state.
    const CMat2 nu = f.n_op * f.u;
    const Ket4 rebuilt = tensor_product(nu, CMat2::identity()) * singlet().ket;
    if (ket_distance_up_to_phase(schmidt_reconstruction(sd), rebuilt) > tol.spectral)
        throw NumericalError("build_frame: factorization residual above tolerance");
    return f;
}

CanonicalFrame frame_of(const TwoQubitState& psi) {
    const CanonicalFrame f = build_frame(schmidt_decompose(psi));
    const CMat2 nu = f.n_op * f.u;
    const Ket4 rebuilt = tensor_product(nu, CMat2::identity()) * singlet().ket;
    if (ket_distance_up_to_phase(psi.ket, rebuilt) > tol.spectral)
        throw NumericalError("frame_of: factorization residual above tolerance");
    return f;
}

Vec3 rotate(const CanonicalFrame& frame, Vec3 v) { return frame.rot * v; }

}  // namespace hv2q

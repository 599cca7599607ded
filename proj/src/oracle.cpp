#include "hv2q/oracle.hpp"

#include <cmath>

#include "hv2q/errors.hpp"
#include "hv2q/tolerances.hpp"

namespace hv2q {

TildeObservable tilde_transform(const LocalObservable& x, const CanonicalFrame& frame) {
    const Vec3 a_prime = rotate(frame, x.axis);
    const double an = dot(a_prime, frame.n_prime);
    const double s2 = frame.sin_two_phi, c2 = frame.cos_two_phi;
    const double sin_sq_phi = 0.5 * (1.0 - c2);

    TildeObservable out;
    out.alpha1_t = x.alpha1 + x.alpha2 * s2 * an;
    out.weighted_axis = x.alpha2 * c2 * a_prime + (x.alpha1 * s2 + 2.0 * x.alpha2 * sin_sq_phi * an) * frame.n_prime;
    out.alpha2_t = norm(out.weighted_axis);
    out.a_t = (out.alpha2_t < 1e-12) ? axis_z() : (1.0 / out.alpha2_t) * out.weighted_axis;

    // Independent route: literal matrix product N' X' N' with
    // X' = u^dagger X u and N' = u^dagger N u.
    const CMat2 x_mat = observable_matrix(x);
    const CMat2 ud = frame.u.adjoint();
    const CMat2 x_rot = ud * x_mat * frame.u;
    const CMat2 n_rot = ud * frame.n_op * frame.u;
    const CMat2 tilde = n_rot * x_rot * n_rot;
    const double m1 = 0.5 * tilde.trace().real();
    // Extract sigma components by trace with the Pauli matrices.
    Vec3 w;
    w.x = 0.5 * (sigma_x() * tilde).trace().real();
    w.y = 0.5 * (sigma_y() * tilde).trace().real();
    w.z = 0.5 * (sigma_z() * tilde).trace().real();

    const double gap = std::max({std::abs(m1 - out.alpha1_t), std::abs(w.x - out.weighted_axis.x),
                                 std::abs(w.y - out.weighted_axis.y), std::abs(w.z - out.weighted_axis.z)});
    if (gap > tol.spectral)
        throw NumericalError("tilde_transform: closed form and matrix route disagree by " +
                             std::to_string(gap));
    return out;
}

OracleResult qm_averages(const TwoQubitState& psi, const LocalObservable& x,
                         const LocalObservable& y) {
    OracleResult out;

    const CMat2 x_mat = observable_matrix(x);
    const CMat2 y_mat = observable_matrix(y);
    const CMat2 id = CMat2::identity();
    out.direct.x = expectation(psi.ket, tensor_product(x_mat, id));
    out.direct.y = expectation(psi.ket, tensor_product(id, y_mat));
    out.direct.xy = expectation(psi.ket, tensor_product(x_mat, y_mat));

    const CanonicalFrame frame = frame_of(psi);
    const TildeObservable tx = tilde_transform(x, frame);
    const double bn = dot(y.axis, frame.n_prime);
    out.closed_form.x = tx.alpha1_t;
    out.closed_form.y = y.alpha1 - y.alpha2 * frame.sin_two_phi * bn;
    out.closed_form.xy = tx.alpha1_t * y.alpha1 - y.alpha2 * dot(tx.weighted_axis, y.axis);

    out.discrepancy = std::max({std::abs(out.direct.x - out.closed_form.x),
                                std::abs(out.direct.y - out.closed_form.y),
                                std::abs(out.direct.xy - out.closed_form.xy)});
    if (out.discrepancy > tol.oracle_routes)
        throw NumericalError("qm_averages: oracle routes disagree by " + std::to_string(out.discrepancy));
    return out;
}

JointTable joint_probabilities(const TwoQubitState& psi, const LocalObservable& x,
                               const LocalObservable& y) {
    const CMat2 id = CMat2::identity();
    const CMat2 sa = pauli_dot(x.axis);
    const CMat2 sb = pauli_dot(y.axis);

    auto projector = [&id](const CMat2& s, int sign) {
        CMat2 p = id;
        for (size_t i = 0; i < 4; ++i) p.m[i] = 0.5 * (p.m[i] + static_cast<double>(sign) * s.m[i]);
        return p;
    };

    JointTable t;
    const std::array<std::pair<int, int>, 4> signs{{{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}}};
    double sum = 0.0;
    for (size_t k = 0; k < 4; ++k) {
        const CMat4 proj = tensor_product(projector(sa, signs[k].first), projector(sb, signs[k].second));
        double p = expectation(psi.ket, proj);
        if (p < -tol.structural)
            throw NumericalError("joint_probabilities: negative probability " + std::to_string(p));
        if (p < 0.0) p = 0.0;
        t.p[k] = p;
        sum += p;
    }
    if (std::abs(sum - 1.0) > tol.spectral)
        throw NumericalError("joint_probabilities: probabilities sum to " + std::to_string(sum));
    return t;
}

JointTable table_from_sign_moments(double mean_f, double mean_g, double mean_fg) {
    JointTable t;
    const std::array<std::pair<int, int>, 4> signs{{{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}}};
    for (size_t k = 0; k < 4; ++k) {
        const double f = signs[k].first, g = signs[k].second;
        t.p[k] = 0.25 * (1.0 + f * mean_f + g * mean_g + f * g * mean_fg);
    }
    return t;
}

}  // namespace hv2q

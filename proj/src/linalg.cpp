#include "hv2q/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hv2q/errors.hpp"
#include "hv2q/tolerances.hpp"

namespace hv2q {

// ---- Vec3 / Mat3 -----------------------------------------------------------

Vec3 normalized(Vec3 v) {
    const double n = norm(v);
    if (n < 1e-14) throw std::invalid_argument("cannot normalize a zero 3-vector");
    return (1.0 / n) * v;
}

bool is_unit(Vec3 v, double tolerance) { return std::abs(norm(v) - 1.0) <= tolerance; }

double angle_between(Vec3 a, Vec3 b) { return std::atan2(norm(cross(a, b)), dot(a, b)); }

Vec3 orthogonal_unit(Vec3 b) {
    const double ax = std::abs(b.x), ay = std::abs(b.y), az = std::abs(b.z);
    Vec3 e = axis_x();
    if (ay <= ax && ay <= az)
        e = axis_y();
    else if (az <= ax && az <= ay)
        e = axis_z();
    return normalized(e - dot(e, b) * b);
}

Mat3 Mat3::identity() {
    Mat3 r;
    r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
    return r;
}

Mat3 Mat3::transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
}

double Mat3::det() const {
    const Mat3& a = *this;
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

Vec3 operator*(const Mat3& r, Vec3 v) {
    return {r(0, 0) * v.x + r(0, 1) * v.y + r(0, 2) * v.z,
            r(1, 0) * v.x + r(1, 1) * v.y + r(1, 2) * v.z,
            r(2, 0) * v.x + r(2, 1) * v.y + r(2, 2) * v.z};
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

double max_abs_diff(const Mat3& a, const Mat3& b) {
    double d = 0.0;
    for (size_t i = 0; i < 9; ++i) d = std::max(d, std::abs(a.m[i] - b.m[i]));
    return d;
}

// ---- CVec / CMat -----------------------------------------------------------

template <int N>
CVec<N> CVec<N>::normalized() const {
    const double n = norm();
    if (n < 1e-14) throw std::invalid_argument("cannot normalize a zero ket");
    CVec<N> r;
    for (int i = 0; i < N; ++i) r[i] = a[static_cast<size_t>(i)] / n;
    return r;
}

template struct CVec<2>;
template struct CVec<4>;

template <int N>
bool CMat<N>::is_hermitian(double tolerance) const {
    return max_abs_diff(*this, this->adjoint()) <= tolerance;
}

template <int N>
bool CMat<N>::is_unitary(double tolerance) const {
    return max_abs_diff(this->adjoint() * (*this), CMat<N>::identity()) <= tolerance;
}

template struct CMat<2>;
template struct CMat<4>;

// ---- Pauli algebra ---------------------------------------------------------

CMat2 sigma_x() {
    CMat2 s;
    s(0, 1) = s(1, 0) = cplx{1.0, 0.0};
    return s;
}

CMat2 sigma_y() {
    CMat2 s;
    s(0, 1) = cplx{0.0, -1.0};
    s(1, 0) = cplx{0.0, 1.0};
    return s;
}

CMat2 sigma_z() {
    CMat2 s;
    s(0, 0) = cplx{1.0, 0.0};
    s(1, 1) = cplx{-1.0, 0.0};
    return s;
}

CMat2 pauli_dot(Vec3 n) {
    CMat2 s;
    s(0, 0) = cplx{n.z, 0.0};
    s(0, 1) = cplx{n.x, -n.y};
    s(1, 0) = cplx{n.x, n.y};
    s(1, 1) = cplx{-n.z, 0.0};
    return s;
}

CMat2 pauli_from_vector(double alpha1, double alpha2, Vec3 a) {
    if (alpha2 < 0.0) throw std::invalid_argument("pauli_from_vector: alpha2 must be >= 0");
    if (!is_unit(a, 1e-9)) throw std::invalid_argument("pauli_from_vector: axis must be a unit vector");
    CMat2 m = pauli_dot(a);
    for (auto& e : m.m) e *= alpha2;
    m(0, 0) += alpha1;
    m(1, 1) += alpha1;
    return m;
}

Vec3 bloch_vector(const Ket2& k) {
    const cplx c = std::conj(k[0]) * k[1];
    return {2.0 * c.real(), 2.0 * c.imag(), std::norm(k[0]) - std::norm(k[1])};
}

// ---- Composition and expectation values ------------------------------------

CMat4 tensor_product(const CMat2& l, const CMat2& r) {
    CMat4 t;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int q = 0; q < 2; ++q) t(2 * i + k, 2 * j + q) = l(i, j) * r(k, q);
    return t;
}

Ket4 tensor_product(const Ket2& l, const Ket2& r) {
    Ket4 t;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) t[2 * i + k] = l[i] * r[k];
    return t;
}

double expectation(const Ket4& psi, const CMat4& m) {
    const cplx v = inner(psi, m * psi);
    if (std::abs(v.imag()) > tol.spectral)
        throw NumericalError("expectation: imaginary residue " + std::to_string(v.imag()));
    return v.real();
}

// ---- Solvers ---------------------------------------------------------------

namespace {

// Divide out the phase of the first component with magnitude > 1e-9, making it
// real nonnegative. Returns the phase factor that was removed.
cplx phase_fix(Ket2& v) {
    for (int i = 0; i < 2; ++i) {
        const double r = std::abs(v[i]);
        if (r > 1e-9) {
            const cplx ph = v[i] / r;
            v[0] *= std::conj(ph);
            v[1] *= std::conj(ph);
            return ph;
        }
    }
    return cplx{1.0, 0.0};
}

void phase_fix(Ket4& v) {
    for (int i = 0; i < 4; ++i) {
        const double r = std::abs(v[i]);
        if (r > 1e-9) {
            const cplx ph = std::conj(v[i] / r);
            for (int j = 0; j < 4; ++j) v[j] *= ph;
            return;
        }
    }
}

// Unit 2-ket orthogonal to a unit 2-ket.
Ket2 orthogonal_ket(const Ket2& v) {
    Ket2 w;
    w[0] = -std::conj(v[1]);
    w[1] = std::conj(v[0]);
    return w;
}

}  // namespace

// Eigenvector of [[a, b], [conj(b), d]] for the eigenvalue m + disc, written
// in terms of beta = (a - d)/2 so no catastrophic cancellation occurs even
// for nearly degenerate spectra.
static Ket2 top_eigenvector_2x2(cplx b, double beta, double disc) {
    const Ket2 c1{{b, cplx{disc - beta, 0.0}}};
    const Ket2 c2{{cplx{disc + beta, 0.0}, std::conj(b)}};
    return ((c1.norm() >= c2.norm()) ? c1 : c2).normalized();
}

Eig2 eigen_hermitian(const CMat2& h) {
    if (!h.is_hermitian(1e-10)) throw std::invalid_argument("eigen_hermitian: matrix is not Hermitian");
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const cplx b = h(0, 1);
    const double m = 0.5 * (a + d);
    const double beta = 0.5 * (a - d);
    const double disc = std::sqrt(beta * beta + std::norm(b));

    Eig2 out;
    out.values = {m - disc, m + disc};

    if (disc <= 1e-15 * (1.0 + std::abs(m))) {
        out.vectors = {Ket2::basis(0), Ket2::basis(1)};
        return out;
    }
    Ket2 v1 = top_eigenvector_2x2(b, beta, disc);
    Ket2 v0 = orthogonal_ket(v1);
    phase_fix(v0);
    phase_fix(v1);
    out.vectors = {v0, v1};
    return out;
}

Svd2 svd_2x2(const CMat2& c) {
    // Right singular vectors: eigenvectors of the Hermitian Gram matrix.
    CMat2 h = c.adjoint() * c;
    const double m = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double beta = 0.5 * (h(0, 0).real() - h(1, 1).real());
    const double disc = std::sqrt(beta * beta + std::norm(h(0, 1)));

    Ket2 v0, v1;
    if (disc <= 1e-14 * (1.0 + m)) {
        v0 = Ket2::basis(0);
        v1 = Ket2::basis(1);
    } else {
        v0 = top_eigenvector_2x2(h(0, 1), beta, disc);
        v1 = orthogonal_ket(v0);
    }

    // Singular values as the norms of the image vectors. Any orthonormal
    // right pair then reconstructs c exactly (sum of c v_k v_k^dagger), so
    // eigenvector conditioning near a degenerate spectrum cannot leak into
    // the residual; the values themselves are only second-order sensitive.
    Svd2 out;
    Ket2 cv0 = c * v0;
    Ket2 cv1 = c * v1;
    out.s = {cv0.norm(), cv1.norm()};
    if (out.s[0] < out.s[1]) {
        std::swap(out.s[0], out.s[1]);
        std::swap(v0, v1);
        std::swap(cv0, cv1);
    }

    // Left singular vectors u_k = c v_k / s_k; complete by orthogonality when rank-deficient.
    Ket2 u0, u1;
    if (out.s[0] > 1e-14) {
        u0 = cv0.normalized();
    } else {
        u0 = Ket2::basis(0);
    }
    if (out.s[1] > 1e-14 * std::max(1.0, out.s[0])) {
        u1 = cv1.normalized();
        // Re-orthogonalize against u0 to keep the basis clean near degeneracy.
        const cplx ov = inner(u0, u1);
        Ket2 shifted = u1 - ov * u0;
        if (shifted.norm() > 0.5) u1 = shifted.normalized();
    } else {
        u1 = orthogonal_ket(u0);
    }

    // Deterministic phases: anchor on the left vectors, right vectors absorb.
    const cplx p0 = phase_fix(u0);
    const cplx p1 = phase_fix(u1);
    v0[0] *= std::conj(p0); v0[1] *= std::conj(p0);
    v1[0] *= std::conj(p1); v1[1] *= std::conj(p1);

    out.left = {u0, u1};
    out.right = {v0, v1};

    // Reconstruction gate: c = sum_k s_k u_k v_k^dagger.
    CMat2 rec;
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                rec(i, j) += out.s[static_cast<size_t>(k)] * out.left[static_cast<size_t>(k)][i] *
                             std::conj(out.right[static_cast<size_t>(k)][j]);
    if (max_abs_diff(rec, c) > tol.structural)
        throw NumericalError("svd_2x2: reconstruction residual above tolerance");
    return out;
}

Eig4 eigen_hermitian(const CMat4& h) {
    if (!h.is_hermitian(1e-10)) throw std::invalid_argument("eigen_hermitian: matrix is not Hermitian");

    CMat4 a = h;
    CMat4 v = CMat4::identity();
    double scale = 0.0;
    for (const auto& e : h.m) scale = std::max(scale, std::abs(e));
    const double stop = 1e-15 * (1.0 + scale);

    bool converged = false;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= stop) {
            converged = true;
            break;
        }
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= stop * 1e-2) continue;
                const cplx phase = apq / r;
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
                const double t = ((theta >= 0.0) ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double cs = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * cs;

                CMat4 j = CMat4::identity();
                j(p, p) = cs;
                j(p, q) = sn * phase;
                j(q, p) = -sn * std::conj(phase);
                j(q, q) = cs;
                a = j.adjoint() * a * j;
                v = v * j;
            }
        }
    }
    if (!converged) {
        double off = 0.0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off > 1e-12 * (1.0 + scale)) throw NumericalError("eigen_hermitian: Jacobi sweeps did not converge");
    }

    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.end(),
              [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    Eig4 out;
    for (int k = 0; k < 4; ++k) {
        const int src = order[static_cast<size_t>(k)];
        out.values[static_cast<size_t>(k)] = a(src, src).real();
        Ket4 col;
        for (int i = 0; i < 4; ++i) col[i] = v(i, src);
        phase_fix(col);
        out.vectors[static_cast<size_t>(k)] = col;
    }
    return out;
}

CMat4 unitary_exp(const CMat4& h, double t) {
    const Eig4 eig = eigen_hermitian(h);
    CMat4 u;
    for (int k = 0; k < 4; ++k) {
        const cplx ph = std::exp(cplx{0.0, -eig.values[static_cast<size_t>(k)] * t});
        const Ket4& vk = eig.vectors[static_cast<size_t>(k)];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) u(i, j) += ph * vk[i] * std::conj(vk[j]);
    }
    if (!u.is_unitary(tol.spectral)) throw NumericalError("unitary_exp: result failed the unitarity check");
    return u;
}

Mat3 rotation_from_unitary(const CMat2& u) {
    if (!u.is_unitary(1e-10)) throw std::invalid_argument("rotation_from_unitary: input is not unitary");
    const std::array<CMat2, 3> sig{sigma_x(), sigma_y(), sigma_z()};
    const CMat2 ud = u.adjoint();
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
        const CMat2 conj_i = ud * sig[static_cast<size_t>(i)] * u;
        for (int j = 0; j < 3; ++j) {
            const cplx tr = (sig[static_cast<size_t>(j)] * conj_i).trace();
            r(j, i) = 0.5 * tr.real();
        }
    }
    return r;
}

CMat2 adjugate(const CMat2& m) {
    CMat2 r;
    r(0, 0) = m(1, 1);
    r(0, 1) = -m(0, 1);
    r(1, 0) = -m(1, 0);
    r(1, 1) = m(0, 0);
    return r;
}

}  // namespace hv2q

#pragma once

#include <array>
#include <complex>

#include "hv2q/vec3.hpp"

namespace hv2q {

using cplx = std::complex<double>;

/// Fixed-size complex column vector (N = 2 or 4).
template <int N>
struct CVec {
    std::array<cplx, N> a{};

    cplx& operator[](int i) { return a[static_cast<size_t>(i)]; }
    const cplx& operator[](int i) const { return a[static_cast<size_t>(i)]; }

    static CVec basis(int i) {
        CVec v;
        v[i] = cplx{1.0, 0.0};
        return v;
    }

    double norm() const {
        double s = 0.0;
        for (const auto& c : a) s += std::norm(c);
        return std::sqrt(s);
    }

    CVec normalized() const;  // throws std::invalid_argument for ~zero input
};

using Ket2 = CVec<2>;
using Ket4 = CVec<4>;

template <int N>
cplx inner(const CVec<N>& a, const CVec<N>& b) {
    cplx s{0.0, 0.0};
    for (int i = 0; i < N; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

template <int N>
CVec<N> operator+(const CVec<N>& a, const CVec<N>& b) {
    CVec<N> r;
    for (int i = 0; i < N; ++i) r[i] = a[i] + b[i];
    return r;
}

template <int N>
CVec<N> operator-(const CVec<N>& a, const CVec<N>& b) {
    CVec<N> r;
    for (int i = 0; i < N; ++i) r[i] = a[i] - b[i];
    return r;
}

template <int N>
CVec<N> operator*(cplx s, const CVec<N>& v) {
    CVec<N> r;
    for (int i = 0; i < N; ++i) r[i] = s * v[i];
    return r;
}

/// Fixed-size complex matrix, row-major (N = 2 or 4).
template <int N>
struct CMat {
    std::array<cplx, N * N> m{};

    cplx& operator()(int r, int c) { return m[static_cast<size_t>(N * r + c)]; }
    const cplx& operator()(int r, int c) const { return m[static_cast<size_t>(N * r + c)]; }

    static CMat identity() {
        CMat e;
        for (int i = 0; i < N; ++i) e(i, i) = cplx{1.0, 0.0};
        return e;
    }

    CMat adjoint() const {
        CMat r;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) r(i, j) = std::conj((*this)(j, i));
        return r;
    }

    cplx trace() const {
        cplx s{0.0, 0.0};
        for (int i = 0; i < N; ++i) s += (*this)(i, i);
        return s;
    }

    bool is_hermitian(double tolerance = 1e-12) const;
    bool is_unitary(double tolerance = 1e-10) const;
};

using CMat2 = CMat<2>;
using CMat4 = CMat<4>;

template <int N>
CMat<N> operator+(const CMat<N>& a, const CMat<N>& b) {
    CMat<N> r;
    for (size_t i = 0; i < a.m.size(); ++i) r.m[i] = a.m[i] + b.m[i];
    return r;
}

template <int N>
CMat<N> operator-(const CMat<N>& a, const CMat<N>& b) {
    CMat<N> r;
    for (size_t i = 0; i < a.m.size(); ++i) r.m[i] = a.m[i] - b.m[i];
    return r;
}

template <int N>
CMat<N> operator*(cplx s, const CMat<N>& a) {
    CMat<N> r;
    for (size_t i = 0; i < a.m.size(); ++i) r.m[i] = s * a.m[i];
    return r;
}

template <int N>
CMat<N> operator*(const CMat<N>& a, const CMat<N>& b) {
    CMat<N> r;
    for (int i = 0; i < N; ++i)
        for (int k = 0; k < N; ++k) {
            const cplx aik = a(i, k);
            for (int j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

template <int N>
CVec<N> operator*(const CMat<N>& a, const CVec<N>& v) {
    CVec<N> r;
    for (int i = 0; i < N; ++i) {
        cplx s{0.0, 0.0};
        for (int j = 0; j < N; ++j) s += a(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

template <int N>
double max_abs_diff(const CMat<N>& a, const CMat<N>& b) {
    double d = 0.0;
    for (size_t i = 0; i < a.m.size(); ++i) d = std::max(d, std::abs(a.m[i] - b.m[i]));
    return d;
}

template <int N>
double max_abs_diff(const CVec<N>& a, const CVec<N>& b) {
    double d = 0.0;
    for (int i = 0; i < N; ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// ---- Pauli algebra -------------------------------------------------------

CMat2 sigma_x();
CMat2 sigma_y();
CMat2 sigma_z();

/// sigma . n for an arbitrary real vector n (no unit-norm requirement).
CMat2 pauli_dot(Vec3 n);

/// alpha1 * I + alpha2 * sigma.a with unit axis a and alpha2 >= 0.
/// Rejects non-unit axes and negative alpha2 (canonicalize first).
CMat2 pauli_from_vector(double alpha1, double alpha2, Vec3 a);

/// Bloch vector <k|sigma|k> of a unit 2-ket.
Vec3 bloch_vector(const Ket2& k);

// ---- Composition and expectation values ----------------------------------

CMat4 tensor_product(const CMat2& l, const CMat2& r);
Ket4 tensor_product(const Ket2& l, const Ket2& r);

/// <psi|M|psi> for Hermitian M; the imaginary residue must stay below 1e-10
/// (NumericalError otherwise) and is discarded.
double expectation(const Ket4& psi, const CMat4& m);

// ---- Small dense solvers --------------------------------------------------

/// Eigensystem of a Hermitian 2x2 matrix, closed form.
/// values[0] <= values[1]; eigenvectors orthonormal, phase-fixed.
struct Eig2 {
    std::array<double, 2> values{};
    std::array<Ket2, 2> vectors{};
};
Eig2 eigen_hermitian(const CMat2& h);

/// Compact SVD of a general complex 2x2 matrix: c = u * diag(s) * v^dagger
/// with s[0] >= s[1] >= 0 and orthonormal, deterministically phase-fixed
/// columns (first component of each left vector with magnitude > 1e-9 is
/// made real nonnegative; right vectors absorb the same phase).
struct Svd2 {
    std::array<double, 2> s{};
    std::array<Ket2, 2> left{};
    std::array<Ket2, 2> right{};
};
Svd2 svd_2x2(const CMat2& c);

/// Eigensystem of a Hermitian 4x4 matrix via cyclic complex Jacobi sweeps.
/// values ascending; vectors orthonormal columns, phase-fixed.
struct Eig4 {
    std::array<double, 4> values{};
    std::array<Ket4, 4> vectors{};
};
Eig4 eigen_hermitian(const CMat4& h);

/// exp(-i H t) for Hermitian H via spectral decomposition.
/// Validates hermiticity of H and unitarity of the result.
CMat4 unitary_exp(const CMat4& h, double t);

/// SO(3) rotation R induced by a 2x2 unitary: u^dagger (sigma.v) u = sigma.(R v).
Mat3 rotation_from_unitary(const CMat2& u);

/// Adjugate of a 2x2 matrix: adj(m) * m = det(m) * I.
CMat2 adjugate(const CMat2& m);

}  // namespace hv2q

#include "hv2q/states.hpp"

#include <cmath>
#include <stdexcept>

namespace hv2q {

LocalObservable canonicalize_observable(double alpha1, double alpha2, Vec3 axis) {
    LocalObservable o;
    o.alpha1 = alpha1;
    if (alpha2 < 0.0) {
        alpha2 = -alpha2;
        axis = -axis;
    }
    o.alpha2 = alpha2;
    if (alpha2 == 0.0) {
        o.axis = axis_z();
        return o;
    }
    if (norm(axis) < 1e-14)
        throw std::invalid_argument("canonicalize_observable: zero axis with alpha2 != 0");
    o.axis = normalized(axis);
    return o;
}

CMat2 observable_matrix(const LocalObservable& o) {
    return pauli_from_vector(o.alpha1, o.alpha2, o.axis);
}

TwoQubitState make_state(const Ket4& ket) { return TwoQubitState{ket.normalized()}; }

TwoQubitState singlet() {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Ket4 k;
    k[1] = cplx{inv_sqrt2, 0.0};
    k[2] = cplx{-inv_sqrt2, 0.0};
    return TwoQubitState{k};
}

TwoQubitState random_state(Rng& rng) {
    Ket4 k;
    for (int i = 0; i < 4; ++i) k[i] = cplx{rng.gaussian(), rng.gaussian()};
    return make_state(k);
}

TwoQubitState random_state(uint64_t seed) {
    Rng rng(seed);
    return random_state(rng);
}

Ket2 random_ket2(Rng& rng) {
    Ket2 k;
    k[0] = cplx{rng.gaussian(), rng.gaussian()};
    k[1] = cplx{rng.gaussian(), rng.gaussian()};
    return k.normalized();
}

TwoQubitState random_product_state(Rng& rng) {
    return make_state(tensor_product(random_ket2(rng), random_ket2(rng)));
}

TwoQubitState random_state_with_schmidt_weight(Rng& rng, double mu1) {
    if (mu1 < 0.5 || mu1 > 1.0)
        throw std::invalid_argument("random_state_with_schmidt_weight: mu1 must lie in [1/2, 1]");
    const Ket2 a1 = random_ket2(rng);
    Ket2 a2{{-std::conj(a1[1]), std::conj(a1[0])}};
    const Ket2 b1 = random_ket2(rng);
    Ket2 b2{{-std::conj(b1[1]), std::conj(b1[0])}};
    // Random relative phases keep the basis generic.
    const cplx pa = std::exp(cplx{0.0, rng.uniform(0.0, 6.283185307179586)});
    const cplx pb = std::exp(cplx{0.0, rng.uniform(0.0, 6.283185307179586)});
    a2 = pa * a2;
    b2 = pb * b2;
    const double s1 = std::sqrt(mu1), s2 = std::sqrt(1.0 - mu1);
    Ket4 k;
    const Ket4 t1 = tensor_product(a1, b1), t2 = tensor_product(a2, b2);
    for (int i = 0; i < 4; ++i) k[i] = s1 * t1[i] + s2 * t2[i];
    return make_state(k);
}

LocalObservable random_observable(Rng& rng) {
    LocalObservable o;
    o.alpha1 = rng.uniform(-2.0, 2.0);
    o.alpha2 = rng.uniform(0.0, 2.0);
    o.axis = sample_unit_sphere(rng);
    return o;
}

LocalObservable random_observable(uint64_t seed) {
    Rng rng(seed);
    return random_observable(rng);
}

CMat4 random_hermitian4(Rng& rng) {
    CMat4 m;
    for (auto& e : m.m) e = cplx{rng.gaussian(), rng.gaussian()};
    CMat4 h;
    const CMat4 md = m.adjoint();
    for (size_t i = 0; i < h.m.size(); ++i) h.m[i] = 0.5 * (m.m[i] + md.m[i]);
    return h;
}

CMat4 random_local_hamiltonian(Rng& rng) {
    CMat2 h1, h2;
    for (auto& e : h1.m) e = cplx{rng.gaussian(), rng.gaussian()};
    for (auto& e : h2.m) e = cplx{rng.gaussian(), rng.gaussian()};
    CMat2 h1h = h1.adjoint(), h2h = h2.adjoint();
    for (size_t i = 0; i < 4; ++i) {
        h1.m[i] = 0.5 * (h1.m[i] + h1h.m[i]);
        h2.m[i] = 0.5 * (h2.m[i] + h2h.m[i]);
    }
    const CMat4 left = tensor_product(h1, CMat2::identity());
    const CMat4 right = tensor_product(CMat2::identity(), h2);
    return left + right;
}

}  // namespace hv2q

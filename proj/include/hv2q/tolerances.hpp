#pragma once

namespace hv2q {

// Central numeric tolerances used across the library.
//   structural: algebraic identities evaluated directly in double precision
//   spectral:   results that pass through iterative solvers or quadrature
struct Tolerances {
    double structural = 1e-12;
    double spectral = 1e-10;
    double acos_clamp = 1e-12;     // |arg| may exceed 1 by at most this much
    double oracle_routes = 1e-9;   // direct vs closed-form oracle agreement
    double analytic_match = 1e-8;  // model-vs-oracle analytic agreement
};

inline constexpr Tolerances tol{};

}  // namespace hv2q

#include "hv2q/minimal.hpp"

#include <algorithm>
#include <cmath>

#include "hv2q/errors.hpp"
#include "hv2q/oracle.hpp"
#include "hv2q/tolerances.hpp"

namespace hv2q {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;

// Angular distance between two circle positions, in [0, pi].
double circle_distance(double u, double v) {
    const double d = std::fmod(std::abs(u - v), kTwoPi);
    return std::min(d, kTwoPi - d);
}

}  // namespace

MinimalAngles minimal_angles(const CanonicalFrame& frame, const LocalObservable& x,
                             const LocalObservable& y) {
    const Vec3 a_prime = rotate(frame, x.axis);
    MinimalAngles out;
    out.xi = 0.5 * kPi * (1.0 + frame.sin_two_phi * dot(a_prime, frame.n_prime));
    out.chi = 0.5 * kPi * (1.0 + frame.sin_two_phi * dot(y.axis, frame.n_prime));
    out.xi = std::clamp(out.xi, 0.0, kPi);
    out.chi = std::clamp(out.chi, 0.0, kPi);
    return out;
}

MinimalParams minimal_theta_hat(const CanonicalFrame& frame, const LocalObservable& x,
                                const LocalObservable& y) {
    const MinimalAngles angles = minimal_angles(frame, x, y);
    const Vec3 r = r_vector(frame, x);

    MinimalParams p;
    p.xi = angles.xi;
    p.chi = angles.chi;
    p.target = -dot(r, y.axis);
    p.theta_hat = 0.5 * kPi * (1.0 - dot(r, y.axis));
    p.theta_hat = std::clamp(p.theta_hat, 0.0, kPi);
    p.theta_sum_slack = p.xi + p.chi - p.theta_hat;
    if (p.theta_sum_slack < -1e-9)
        throw InvariantViolation("minimal_theta_hat: theta_hat exceeds xi + chi");
    return p;
}

double arc_overlap(double separation, double half1, double half2) {
    if (half1 <= 0.0 || half2 <= 0.0) return 0.0;
    half1 = std::min(half1, kPi);
    half2 = std::min(half2, kPi);
    const double d = std::clamp(separation, 0.0, kPi);
    const double cap = 2.0 * std::min(half1, half2);
    // Overlap accumulates on the near side and, when the arcs are wide
    // enough, also across the far side of the circle.
    const double near_side = std::clamp(half1 + half2 - d, 0.0, cap);
    const double far_side = std::clamp(half1 + half2 - (kTwoPi - d), 0.0, cap);
    return std::min(near_side + far_side, cap);
}

double minimal_correlation(double xi, double chi, double theta_hat) {
    const double overlap = arc_overlap(theta_hat, xi, chi);
    return (2.0 / kPi) * (xi + chi - overlap) - 1.0;
}

double minimal_correlation_formula_gap(double xi, double chi, double theta_hat) {
    const double piecewise = (2.0 / kPi) * std::min(xi + chi, theta_hat) - 1.0;
    return std::abs(minimal_correlation(xi, chi, theta_hat) - piecewise);
}

MinimalAssignment assign_minimal(const MinimalParams& params, const LocalObservable& x,
                                 const LocalObservable& y, double lambda_angle) {
    MinimalAssignment v;
    v.f = (circle_distance(lambda_angle, params.theta_hat) <= params.xi) ? 1 : -1;
    v.g = (circle_distance(lambda_angle, 0.0) <= params.chi) ? -1 : 1;
    v.x_value = x.alpha1 + x.alpha2 * v.f;
    v.y_value = y.alpha1 + y.alpha2 * v.g;
    return v;
}

double factorization_defect(const CanonicalFrame& frame, const LocalObservable& x,
                            const LocalObservable& y) {
    const ModelAngles sphere = model_angles(frame, x, y);
    const Vec3 r = r_vector(frame, x);
    const double mean_f = -sphere.cos_xi;
    const double mean_g = sphere.cos_chi;
    return std::abs(-dot(r, y.axis) - mean_f * mean_g);
}

double factorization_defect_sup(const CanonicalFrame& frame, const LocalObservable& x) {
    const Vec3 a_prime = rotate(frame, x.axis);
    const double an = dot(a_prime, frame.n_prime);
    const double sin_sq_phi = 0.5 * (1.0 - frame.cos_two_phi);
    // sup over b of |cos 2phi| |(a' - 2 sin^2(phi) (a'.n') n').b|
    const Vec3 v = a_prime - 2.0 * sin_sq_phi * an * frame.n_prime;
    return std::abs(frame.cos_two_phi) * norm(v);
}

LocalityReport locality_probe(const CanonicalFrame& frame, const LocalObservable& x,
                              const std::vector<LocalObservable>& partners) {
    LocalityReport rep;
    rep.phi = frame.phi;
    rep.closed_form_sup = factorization_defect_sup(frame, x);
    for (const auto& y : partners) {
        LocalityPair pair;
        pair.b = y.axis;
        pair.defect = factorization_defect(frame, x, y);
        rep.sup_defect = std::max(rep.sup_defect, pair.defect);
        rep.pairs.push_back(pair);
    }
    rep.local = std::max(rep.sup_defect, rep.closed_form_sup) <= 1e-10;
    return rep;
}

VerificationReport verify_minimal(const TwoQubitState& psi, const LocalObservable& x,
                                  const LocalObservable& y, const VerifySettings& settings) {
    const CanonicalFrame frame = frame_of(psi);
    const MinimalParams params = minimal_theta_hat(frame, x, y);

    VerificationReport r;
    r.model = "minimal";
    r.mu1 = 0.5 * (1.0 + frame.sin_two_phi);
    r.phi = frame.phi;
    r.xi = params.xi;
    r.chi = params.chi;
    r.gamma = params.theta_hat;
    r.target = params.target;
    r.theta_sum_slack = params.theta_sum_slack;
    r.formula_gap = minimal_correlation_formula_gap(params.xi, params.chi, params.theta_hat);
    r.bound_min = (2.0 / kPi) * std::abs(params.xi - params.chi) - 1.0;
    r.bound_max = (2.0 / kPi) * std::min(params.xi + params.chi, kTwoPi - params.xi - params.chi) - 1.0;
    r.analytic_tolerance = settings.analytic_tolerance;
    r.mc_sigma = settings.mc_sigma;

    const OracleResult oracle = qm_averages(psi, x, y);
    r.oracle_route_discrepancy = oracle.discrepancy;
    r.x.oracle = oracle.direct.x;
    r.y.oracle = oracle.direct.y;
    r.xy.oracle = oracle.direct.xy;
    r.born_table = joint_probabilities(psi, x, y).p;

    // Analytic circle-model moments: <F> = 2 xi/pi - 1, <G> = 1 - 2 chi/pi.
    const double mean_f = 2.0 * params.xi / kPi - 1.0;
    const double mean_g = 1.0 - 2.0 * params.chi / kPi;
    const double mean_fg = minimal_correlation(params.xi, params.chi, params.theta_hat);
    r.x.analytic = x.alpha1 + x.alpha2 * mean_f;
    r.y.analytic = y.alpha1 + y.alpha2 * mean_g;
    r.xy.analytic = x.alpha1 * y.alpha1 + x.alpha1 * y.alpha2 * mean_g +
                    x.alpha2 * y.alpha1 * mean_f + x.alpha2 * y.alpha2 * mean_fg;
    r.analytic_table = table_from_sign_moments(mean_f, mean_g, mean_fg).p;

    r.max_moment_error = std::max({std::abs(r.x.analytic - r.x.oracle),
                                   std::abs(r.y.analytic - r.y.oracle),
                                   std::abs(r.xy.analytic - r.xy.oracle)});
    for (size_t k = 0; k < 4; ++k)
        r.max_table_error = std::max(r.max_table_error, std::abs(r.analytic_table[k] - r.born_table[k]));
    r.analytic_pass = r.max_moment_error <= settings.analytic_tolerance &&
                      r.max_table_error <= settings.analytic_tolerance;

    // Locality probe: the given pair, the exact supremum over b, and a fixed
    // axis grid (Fibonacci sphere) of partner directions.
    r.locality_included = true;
    r.locality_defect = factorization_defect(frame, x, y);
    r.locality_sup = factorization_defect_sup(frame, x);
    r.locality_local = r.locality_sup <= 1e-10;
    const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < 16; ++k) {
        const double z = 1.0 - 2.0 * (k + 0.5) / 16.0;
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double az = golden_angle * k;
        const LocalObservable partner =
            canonicalize_observable(0.0, 1.0, Vec3{s * std::cos(az), s * std::sin(az), z});
        r.locality_pairs.emplace_back(partner.axis, factorization_defect(frame, x, partner));
    }

    r.mc = settings.mc;
    if (settings.mc.samples > 0) {
        r.mc_enabled = true;
        auto sample = [&params, &x, &y](Rng& rng, std::vector<double>& v) {
            const double lambda = sample_circle_angle(rng);
            const MinimalAssignment a = assign_minimal(params, x, y, lambda);
            v[0] = a.x_value;
            v[1] = a.y_value;
            v[2] = a.x_value * a.y_value;
            v[3] = (a.f > 0 && a.g > 0) ? 1.0 : 0.0;
            v[4] = (a.f > 0 && a.g < 0) ? 1.0 : 0.0;
            v[5] = (a.f < 0 && a.g > 0) ? 1.0 : 0.0;
            v[6] = (a.f < 0 && a.g < 0) ? 1.0 : 0.0;
        };
        const auto est = mc_estimate(settings.mc, 7, sample);
        r.x.mc = est[0].mean;
        r.x.mc_stderr = est[0].stderr_;
        r.x.z = z_score(est[0], r.x.analytic);
        r.y.mc = est[1].mean;
        r.y.mc_stderr = est[1].stderr_;
        r.y.z = z_score(est[1], r.y.analytic);
        r.xy.mc = est[2].mean;
        r.xy.mc_stderr = est[2].stderr_;
        r.xy.z = z_score(est[2], r.xy.analytic);
        r.max_mc_z = std::max({r.x.z, r.y.z, r.xy.z});
        for (size_t k = 0; k < 4; ++k) {
            r.mc_table[k] = est[3 + k].mean;
            r.mc_table_stderr[k] = est[3 + k].stderr_;
            r.max_mc_z = std::max(r.max_mc_z, z_score(est[3 + k], r.analytic_table[k]));
        }
        r.mc_pass = r.max_mc_z <= settings.mc_sigma;
    }
    r.pass = r.analytic_pass && r.mc_pass;
    return r;
}

}  // namespace hv2q

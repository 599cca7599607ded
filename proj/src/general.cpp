#include "hv2q/general.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hv2q/errors.hpp"
#include "hv2q/oracle.hpp"
#include "hv2q/quadrature.hpp"
#include "hv2q/tolerances.hpp"

namespace hv2q {

namespace {

constexpr double kPi = 3.14159265358979323846;

double checked_acos(double c, const char* who) {
    if (std::abs(c) > 1.0 + tol.acos_clamp)
        throw NumericalError(std::string(who) + ": cosine argument out of range: " + std::to_string(c));
    return std::acos(std::clamp(c, -1.0, 1.0));
}

double angle_in_range(double v, const char* who) {
    if (v < -tol.acos_clamp || v > kPi + tol.acos_clamp)
        throw std::invalid_argument(std::string(who) + ": angle outside [0, pi]");
    return std::clamp(v, 0.0, kPi);
}

}  // namespace

ModelAngles model_angles(const CanonicalFrame& frame, const LocalObservable& x,
                         const LocalObservable& y) {
    const Vec3 a_prime = rotate(frame, x.axis);
    const double an_rotated = dot(a_prime, frame.n_prime);
    const double an_plain = dot(x.axis, frame.n);
    // Both dot products define cos(xi); the rotation preserves them, and any
    // disagreement here means the frame is inconsistent.
    if (std::abs(an_rotated - an_plain) > tol.spectral)
        throw InvariantViolation("model_angles: a'.n' and a.n disagree");

    ModelAngles out;
    out.cos_xi = -frame.sin_two_phi * an_rotated;
    out.cos_chi = -frame.sin_two_phi * dot(y.axis, frame.n_prime);
    out.xi = checked_acos(out.cos_xi, "model_angles");
    out.chi = checked_acos(out.cos_chi, "model_angles");
    return out;
}

Vec3 r_vector(const CanonicalFrame& frame, const LocalObservable& x) {
    const Vec3 a_prime = rotate(frame, x.axis);
    const double an = dot(a_prime, frame.n_prime);
    const double sin_sq_phi = 0.5 * (1.0 - frame.cos_two_phi);
    const Vec3 r = frame.cos_two_phi * a_prime + 2.0 * an * sin_sq_phi * frame.n_prime;
    if (norm(r) > 1.0 + tol.structural)
        throw InvariantViolation("r_vector: ||r|| exceeds 1");
    return r;
}

double cap_intersection_fraction(double gamma, double xi, double chi) {
    gamma = angle_in_range(gamma, "cap_intersection_fraction");
    xi = angle_in_range(xi, "cap_intersection_fraction");
    chi = angle_in_range(chi, "cap_intersection_fraction");

    // Integrate over the smaller cap; the intersection is symmetric in the roles.
    const double small = std::min(xi, chi);
    const double large = std::max(xi, chi);
    if (small <= 0.0) return 0.0;

    const double cos_large = std::cos(large);
    const double cos_gamma = std::cos(gamma);
    const double sin_gamma = std::sin(gamma);

    // Azimuthal fraction of the ring at polar angle t (measured from the small
    // cap's axis) lying inside the large cap, whose axis sits at angle gamma.
    auto ring_fraction = [&](double t) {
        const double denom = std::sin(t) * sin_gamma;
        const double num = cos_large - std::cos(t) * cos_gamma;
        if (denom < 1e-14) return num <= 0.0 ? 1.0 : 0.0;
        const double u = num / denom;
        if (u >= 1.0) return 0.0;
        if (u <= -1.0) return 1.0;
        return std::acos(u) / kPi;
    };

    // The fraction is analytic between the polar angles where the ring becomes
    // tangent to the large cap's boundary circle.
    std::vector<double> cuts{0.0, small};
    for (const double t : {gamma + large, gamma - large, large - gamma, 2.0 * kPi - large - gamma})
        if (t > 1e-15 && t < small - 1e-15) cuts.push_back(t);
    std::sort(cuts.begin(), cuts.end());

    double result = 0.0;
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double lo = cuts[k], hi = cuts[k + 1];
        if (hi - lo < 1e-15) continue;
        const double probe = ring_fraction(0.5 * (lo + hi));
        if (probe == 0.0) continue;
        if (probe == 1.0) {
            result += 0.5 * (std::cos(lo) - std::cos(hi));
            continue;
        }
        // Clip a sliver off both ends: where the ring grazes the cap boundary
        // the pointwise fraction can sit O(1) away from its limit inside a
        // ~1e-16-wide layer, which adaptive refinement would chase forever.
        // The clipped mass is bounded by the margin itself.
        const double margin = std::min(1e-13, 0.45 * (hi - lo));
        const double a = lo + margin, b = hi - margin;
        const double half = 0.5 * (b - a);
        // t = a + half (1 - cos theta) turns the sqrt behavior of the
        // azimuthal extent at the tangency cuts into a smooth function of
        // theta, so the refinement stays shallow.
        auto integrand = [&](double theta) {
            const double t = a + half * (1.0 - std::cos(theta));
            return 0.5 * ring_fraction(t) * std::sin(t) * half * std::sin(theta);
        };
        result += adaptive_quadrature(integrand, 0.0, kPi, 5e-13);
    }
    return result;
}

double cap_correlation(double gamma, double xi, double chi) {
    const double area_f = 0.5 * (1.0 - std::cos(xi));
    const double area_g = 0.5 * (1.0 - std::cos(chi));
    const double overlap = cap_intersection_fraction(gamma, xi, chi);
    return 2.0 * area_f + 2.0 * area_g - 4.0 * overlap - 1.0;
}

CorrelationBounds correlation_bounds(double xi, double chi) {
    CorrelationBounds b;
    b.min_value = std::abs(std::cos(xi) - std::cos(chi)) - 1.0;
    b.max_value = 1.0 - std::abs(std::cos(xi) + std::cos(chi));
    return b;
}

ModelParams solve_ahat(const CanonicalFrame& frame, const LocalObservable& x,
                       const LocalObservable& y) {
    const ModelAngles angles = model_angles(frame, x, y);

    ModelParams p;
    p.xi = angles.xi;
    p.chi = angles.chi;
    p.cos_xi = angles.cos_xi;
    p.cos_chi = angles.cos_chi;
    p.r = r_vector(frame, x);
    p.target = -dot(p.r, y.axis);
    p.bounds = correlation_bounds(p.xi, p.chi);

    if (p.target < p.bounds.min_value - 1e-9 || p.target > p.bounds.max_value + 1e-9)
        throw InvariantViolation("solve_ahat: target correlation escapes the attainable interval");

    // E is nondecreasing in gamma, so a plain bisection on [0, pi] suffices.
    // If the bracket were ever lost (it should not be), rebuild it from a
    // 1024-point scan before bisecting again.
    auto correlation_at = [&](double g) { return cap_correlation(g, p.xi, p.chi); };
    double lo = 0.0, hi = kPi;
    double f_lo = correlation_at(lo), f_hi = correlation_at(hi);
    int iterations = 0;
    if (f_lo > p.target + 1e-10 || f_hi < p.target - 1e-10) {
        const int n_scan = 1024;
        double prev_g = 0.0, prev_f = f_lo;
        bool bracketed = false;
        for (int i = 1; i <= n_scan; ++i) {
            const double g = kPi * i / n_scan;
            const double f = correlation_at(g);
            if ((prev_f - p.target) * (f - p.target) <= 0.0) {
                lo = prev_g;
                hi = g;
                f_lo = prev_f;
                f_hi = f;
                bracketed = true;
                break;
            }
            prev_g = g;
            prev_f = f;
        }
        if (!bracketed) throw InvariantViolation("solve_ahat: no bracket found for the target");
    }

    double mid = 0.5 * (lo + hi), f_mid = 0.0;
    while (iterations < 200) {
        mid = 0.5 * (lo + hi);
        f_mid = correlation_at(mid);
        ++iterations;
        if (std::abs(f_mid - p.target) <= 1e-12 || hi - lo <= 1e-12) break;
        if (f_mid < p.target)
            lo = mid;
        else
            hi = mid;
    }
    p.gamma = mid;
    p.iterations = iterations;
    p.residual = std::abs(f_mid - p.target);
    if (p.residual > 1e-10)
        throw NumericalError("solve_ahat: bisection residual " + std::to_string(p.residual));

    // Place a_hat at angle gamma from b inside span{b, a'}; when a' has no
    // component orthogonal to b, fall back to a deterministic perpendicular.
    const Vec3 a_prime = rotate(frame, x.axis);
    Vec3 in_plane = a_prime - dot(a_prime, y.axis) * y.axis;
    const double len = norm(in_plane);
    const Vec3 perp = (len < 1e-9) ? orthogonal_unit(y.axis) : (1.0 / len) * in_plane;
    p.a_hat = std::cos(p.gamma) * y.axis + std::sin(p.gamma) * perp;
    return p;
}

ValueAssignment assign_values(const ModelParams& params, const LocalObservable& x,
                              const LocalObservable& y, Vec3 lambda) {
    ValueAssignment v;
    v.f = (dot(params.a_hat, lambda) >= params.cos_xi) ? 1 : -1;
    v.g = (dot(y.axis, lambda) < params.cos_chi) ? 1 : -1;
    v.x_value = x.alpha1 + x.alpha2 * v.f;
    v.y_value = y.alpha1 + y.alpha2 * v.g;
    return v;
}

TripleAngles triple_angles(const CanonicalFrame& frame, const LocalObservable& x,
                           const LocalObservable& y) {
    const Vec3 a_prime = rotate(frame, x.axis);
    TripleAngles t;
    t.tau = angle_between(a_prime, frame.n_prime);
    t.sigma = angle_between(frame.n_prime, y.axis);
    t.omega = angle_between(a_prime, y.axis);
    return t;
}

InequalityCheck angle_inequality(double tau, double sigma, double omega) {
    InequalityCheck c;
    c.slack = std::sin(tau) * std::sin(sigma) -
              std::abs(std::cos(omega) - std::cos(tau) * std::cos(sigma));
    c.holds = c.slack >= -tol.structural;
    return c;
}

VerificationReport verify_general(const TwoQubitState& psi, const LocalObservable& x,
                                  const LocalObservable& y, const VerifySettings& settings) {
    const CanonicalFrame frame = frame_of(psi);
    const ModelParams params = solve_ahat(frame, x, y);

    VerificationReport r;
    r.model = "general";
    r.mu1 = 0.5 * (1.0 + frame.sin_two_phi);
    r.phi = frame.phi;
    r.xi = params.xi;
    r.chi = params.chi;
    r.gamma = params.gamma;
    r.bound_min = params.bounds.min_value;
    r.bound_max = params.bounds.max_value;
    r.target = params.target;
    r.solver_residual = params.residual;
    r.solver_iterations = params.iterations;
    r.analytic_tolerance = settings.analytic_tolerance;
    r.mc_sigma = settings.mc_sigma;

    const OracleResult oracle = qm_averages(psi, x, y);
    r.oracle_route_discrepancy = oracle.discrepancy;
    r.x.oracle = oracle.direct.x;
    r.y.oracle = oracle.direct.y;
    r.xy.oracle = oracle.direct.xy;
    r.born_table = joint_probabilities(psi, x, y).p;

    // Analytic model moments: <F> = -cos(xi), <G> = cos(chi), <FG> = E(gamma).
    const double mean_f = -params.cos_xi;
    const double mean_g = params.cos_chi;
    const double mean_fg = cap_correlation(params.gamma, params.xi, params.chi);
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

    r.mc = settings.mc;
    if (settings.mc.samples > 0) {
        r.mc_enabled = true;
        auto sample = [&params, &x, &y](Rng& rng, std::vector<double>& v) {
            const Vec3 lambda = sample_unit_sphere(rng);
            const ValueAssignment a = assign_values(params, x, y, lambda);
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

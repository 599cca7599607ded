#include "hv2q/bell.hpp"

#include <algorithm>
#include <cmath>

#include "hv2q/frame.hpp"
#include "hv2q/oracle.hpp"

namespace hv2q {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

BellAxisMap bell_theta_hat(Vec3 a, Vec3 b) {
    BellAxisMap out;
    const double cos_theta = std::clamp(dot(a, b), -1.0, 1.0);
    out.theta_hat = 0.5 * kPi * (1.0 - cos_theta);

    Vec3 in_plane = a - dot(a, b) * b;
    const double len = norm(in_plane);
    // a parallel to +/-b forces theta_hat to 0 or pi; the azimuth is then moot.
    const Vec3 perp = (len < 1e-9) ? orthogonal_unit(b) : (1.0 / len) * in_plane;
    out.a_hat = std::cos(out.theta_hat) * b + std::sin(out.theta_hat) * perp;
    return out;
}

std::pair<int, int> bell_assign_single(Vec3 a, Vec3 b, Vec3 lambda) {
    return {sign_pm(dot(a, lambda)), -sign_pm(dot(b, lambda))};
}

std::pair<int, int> bell_assign_joint(Vec3 a, Vec3 b, Vec3 lambda) {
    const BellAxisMap map = bell_theta_hat(a, b);
    return {sign_pm(dot(map.a_hat, lambda)), -sign_pm(dot(b, lambda))};
}

VerificationReport verify_bell(const TwoQubitState& psi, const LocalObservable& x,
                               const LocalObservable& y, const VerifySettings& settings) {
    if (ket_distance_up_to_phase(singlet().ket, psi.ket) > 1e-9)
        throw std::invalid_argument("verify_bell: the original model covers only the singlet state");
    if (std::abs(x.alpha1) > 1e-12 || std::abs(x.alpha2 - 1.0) > 1e-12 ||
        std::abs(y.alpha1) > 1e-12 || std::abs(y.alpha2 - 1.0) > 1e-12)
        throw std::invalid_argument("verify_bell: observables must be plain spin components");

    const Vec3 a = x.axis, b = y.axis;
    const BellAxisMap map = bell_theta_hat(a, b);

    VerificationReport r;
    r.model = "bell";
    r.mu1 = 0.5;
    r.phi = 0.0;
    r.xi = 0.5 * kPi;
    r.chi = 0.5 * kPi;
    r.gamma = map.theta_hat;
    r.bound_min = -1.0;
    r.bound_max = 1.0;
    r.target = -dot(a, b);
    r.analytic_tolerance = settings.analytic_tolerance;
    r.mc_sigma = settings.mc_sigma;

    const OracleResult oracle = qm_averages(psi, x, y);
    r.oracle_route_discrepancy = oracle.discrepancy;
    r.x.oracle = oracle.direct.x;
    r.y.oracle = oracle.direct.y;
    r.xy.oracle = oracle.direct.xy;
    r.born_table = joint_probabilities(psi, x, y).p;

    // Hemisphere responses: <A> = <B> = 0 and <AB> = 2 theta_hat / pi - 1.
    r.x.analytic = 0.0;
    r.y.analytic = 0.0;
    r.xy.analytic = 2.0 * map.theta_hat / kPi - 1.0;
    r.analytic_table = table_from_sign_moments(r.x.analytic, r.y.analytic, r.xy.analytic).p;

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
        const Vec3 a_hat = map.a_hat;
        auto sample = [a_hat, b](Rng& rng, std::vector<double>& v) {
            const Vec3 lambda = sample_unit_sphere(rng);
            const double av = sign_pm(dot(a_hat, lambda));
            const double bv = -sign_pm(dot(b, lambda));
            v[0] = av;
            v[1] = bv;
            v[2] = av * bv;
            v[3] = (av > 0 && bv > 0) ? 1.0 : 0.0;
            v[4] = (av > 0 && bv < 0) ? 1.0 : 0.0;
            v[5] = (av < 0 && bv > 0) ? 1.0 : 0.0;
            v[6] = (av < 0 && bv < 0) ? 1.0 : 0.0;
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

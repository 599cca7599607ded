#include "hv2q/contextuality.hpp"

#include <array>
#include <cmath>

#include "hv2q/bell.hpp"
#include "hv2q/errors.hpp"
#include "hv2q/frame.hpp"
#include "hv2q/general.hpp"
#include "hv2q/mc.hpp"

namespace hv2q {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct SquareEntry {
    const char* label;
    int first;   // 0: identity, 1: sigma_x, 2: sigma_y, 3: sigma_z
    int second;
};

// Row products are +I; column products are +I, +I, -I.
constexpr std::array<std::array<SquareEntry, 3>, 3> kSquare{{
    {{{"sx(x)id", 1, 0}, {"id(x)sx", 0, 1}, {"sx(x)sx", 1, 1}}},
    {{{"id(x)sy", 0, 2}, {"sy(x)id", 2, 0}, {"sy(x)sy", 2, 2}}},
    {{{"sx(x)sy", 1, 2}, {"sy(x)sx", 2, 1}, {"sz(x)sz", 3, 3}}},
}};

CMat2 one_qubit_factor(int which) {
    switch (which) {
        case 1: return sigma_x();
        case 2: return sigma_y();
        case 3: return sigma_z();
        default: return CMat2::identity();
    }
}

Vec3 factor_axis(int which) {
    switch (which) {
        case 1: return axis_x();
        case 2: return axis_y();
        case 3: return axis_z();
        default: return axis_z();
    }
}

// Sign s when m equals s * I within 1e-12; 0 otherwise.
int identity_sign(const CMat4& m) {
    const CMat4 id = CMat4::identity();
    if (max_abs_diff(m, id) <= 1e-12) return 1;
    CMat4 neg;
    for (size_t i = 0; i < neg.m.size(); ++i) neg.m[i] = -id.m[i];
    if (max_abs_diff(m, neg) <= 1e-12) return -1;
    return 0;
}

// Model value of one square entry on the singlet for a given hidden variable.
double singlet_value(const SquareEntry& e, Vec3 lambda) {
    if (e.first != 0 && e.second != 0) {
        const auto [a_val, b_val] = bell_assign_joint(factor_axis(e.first), factor_axis(e.second), lambda);
        return static_cast<double>(a_val * b_val);
    }
    if (e.first != 0) return static_cast<double>(sign_pm(dot(factor_axis(e.first), lambda)));
    return static_cast<double>(-sign_pm(dot(factor_axis(e.second), lambda)));
}

}  // namespace

ViolationReport product_rule_violation(const TwoQubitState& psi, const LocalObservable& x,
                                       const LocalObservable& y, const McSettings& mc) {
    const CanonicalFrame frame = frame_of(psi);
    const ModelParams params = solve_ahat(frame, x, y);

    ViolationReport rep;
    rep.mc = mc;
    rep.a_dot_b = dot(x.axis, y.axis);
    rep.xi = params.xi;
    rep.gamma = params.gamma;

    const Vec3 axis_lab = x.axis;
    const Vec3 axis_rot = rotate(frame, x.axis);
    rep.angle_lab = angle_between(params.a_hat, axis_lab);
    rep.angle_rot = angle_between(params.a_hat, axis_rot);
    rep.angle_over_pi_lab = rep.angle_lab / kPi;
    rep.angle_over_pi_rot = rep.angle_rot / kPi;

    // Exact measure of the symmetric difference of two equal-size caps.
    const double area = 0.5 * (1.0 - params.cos_xi);
    rep.analytic_lab = 2.0 * (area - cap_intersection_fraction(rep.angle_lab, params.xi, params.xi));
    rep.analytic_rot = 2.0 * (area - cap_intersection_fraction(rep.angle_rot, params.xi, params.xi));

    if (mc.samples > 0) {
        const double cos_xi = params.cos_xi;
        const Vec3 a_hat = params.a_hat;
        auto sample = [a_hat, axis_lab, axis_rot, cos_xi](Rng& rng, std::vector<double>& v) {
            const Vec3 lambda = sample_unit_sphere(rng);
            const bool joint = dot(a_hat, lambda) >= cos_xi;
            const bool single_lab = dot(axis_lab, lambda) >= cos_xi;
            const bool single_rot = dot(axis_rot, lambda) >= cos_xi;
            v[0] = (joint != single_lab) ? 1.0 : 0.0;
            v[1] = (joint != single_rot) ? 1.0 : 0.0;
        };
        const auto est = mc_estimate(mc, 2, sample);
        rep.mc_lab = est[0].mean;
        rep.mc_lab_stderr = est[0].stderr_;
        rep.mc_rot = est[1].mean;
        rep.mc_rot_stderr = est[1].stderr_;
    }
    return rep;
}

PeresSquareReport peres_square(uint64_t n_samples, uint64_t seed) {
    PeresSquareReport rep;
    rep.mc.samples = n_samples;
    rep.mc.seed = seed;

    std::array<std::array<CMat4, 3>, 3> ops;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const SquareEntry& e = kSquare[static_cast<size_t>(i)][static_cast<size_t>(j)];
            ops[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                tensor_product(one_qubit_factor(e.first), one_qubit_factor(e.second));
            rep.labels[static_cast<size_t>(i)][static_cast<size_t>(j)] = e.label;
        }

    rep.products_ok = true;
    for (int i = 0; i < 3; ++i) {
        const auto& row = ops[static_cast<size_t>(i)];
        rep.row_signs[static_cast<size_t>(i)] = identity_sign(row[0] * row[1] * row[2]);
        const CMat4 col = ops[0][static_cast<size_t>(i)] * ops[1][static_cast<size_t>(i)] *
                          ops[2][static_cast<size_t>(i)];
        rep.col_signs[static_cast<size_t>(i)] = identity_sign(col);
        if (rep.row_signs[static_cast<size_t>(i)] == 0 || rep.col_signs[static_cast<size_t>(i)] == 0)
            rep.products_ok = false;
    }
    if (rep.products_ok) {
        const bool expected = rep.row_signs == std::array<int, 3>{1, 1, 1} &&
                              rep.col_signs == std::array<int, 3>{1, 1, -1};
        rep.products_ok = expected;
    }

    // Exhaustive search: a noncontextual value map would be one of 2^9 sign
    // patterns satisfying all six product constraints simultaneously.
    rep.consistent_assignments = 0;
    for (int mask = 0; mask < 512; ++mask) {
        auto value = [mask](int i, int j) { return (mask >> (3 * i + j)) & 1 ? -1 : 1; };
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
            if (value(i, 0) * value(i, 1) * value(i, 2) != rep.row_signs[static_cast<size_t>(i)]) ok = false;
            if (value(0, i) * value(1, i) * value(2, i) != rep.col_signs[static_cast<size_t>(i)]) ok = false;
        }
        if (ok) ++rep.consistent_assignments;
    }

    // Value map of the model on the singlet: row/column identities evaluated
    // per hidden variable.
    if (n_samples > 0) {
        McSettings mc;
        mc.samples = n_samples;
        mc.seed = seed;
        auto sample = [](Rng& rng, std::vector<double>& v) {
            const Vec3 lambda = sample_unit_sphere(rng);
            std::array<std::array<double, 3>, 3> val{};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    val[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                        singlet_value(kSquare[static_cast<size_t>(i)][static_cast<size_t>(j)], lambda);
            const std::array<int, 3> row_req{1, 1, 1}, col_req{1, 1, -1};
            bool any = false;
            for (int i = 0; i < 3; ++i) {
                const auto& r = val[static_cast<size_t>(i)];
                const bool row_bad = std::abs(r[0] * r[1] * r[2] - row_req[static_cast<size_t>(i)]) > 0.5;
                const bool col_bad =
                    std::abs(val[0][static_cast<size_t>(i)] * val[1][static_cast<size_t>(i)] *
                                 val[2][static_cast<size_t>(i)] -
                             col_req[static_cast<size_t>(i)]) > 0.5;
                v[static_cast<size_t>(i)] = row_bad ? 1.0 : 0.0;
                v[static_cast<size_t>(3 + i)] = col_bad ? 1.0 : 0.0;
                any = any || row_bad || col_bad;
            }
            v[6] = any ? 1.0 : 0.0;
        };
        const auto est = mc_estimate(mc, 7, sample);
        for (size_t i = 0; i < 3; ++i) {
            rep.row_violation_fraction[i] = est[i].mean;
            rep.col_violation_fraction[i] = est[3 + i].mean;
        }
        rep.any_violation_fraction = est[6].mean;
    }
    return rep;
}

}  // namespace hv2q

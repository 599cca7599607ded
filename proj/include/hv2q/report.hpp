#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hv2q/mc.hpp"
#include "hv2q/vec3.hpp"

namespace hv2q {

/// One verified observable average: exact value, the model's analytic value,
/// and (when sampling is enabled) the Monte Carlo estimate.
struct MomentCheck {
    double oracle = 0.0;
    double analytic = 0.0;
    double mc = 0.0;
    double mc_stderr = 0.0;
    double z = 0.0;
};

/// Thresholds applied when grading a verification run.
struct VerifySettings {
    McSettings mc;                  // mc.samples == 0 skips sampling entirely
    double analytic_tolerance = 1e-8;
    double mc_sigma = 5.0;
};

/// Everything a single model-vs-quantum-mechanics comparison produced.
struct VerificationReport {
    std::string model;  // "bell" | "general" | "minimal"

    // state and response parameters
    double mu1 = 0.0, phi = 0.0;
    double xi = 0.0, chi = 0.0;
    double gamma = 0.0;  // axis separation: gamma* on the sphere, theta-hat on the circle
    double bound_min = 0.0, bound_max = 0.0;
    double target = 0.0;
    double solver_residual = 0.0;
    int solver_iterations = 0;

    // minimal model extras
    double theta_sum_slack = 0.0;  // xi + chi - theta_hat (>= 0 in the operative regime)
    double formula_gap = 0.0;      // |arc-exact correlation - piecewise formula|

    double oracle_route_discrepancy = 0.0;

    MomentCheck x, y, xy;
    std::array<double, 4> born_table{}, analytic_table{};
    std::array<double, 4> mc_table{}, mc_table_stderr{};

    double max_moment_error = 0.0;  // analytic vs oracle, over the three moments
    double max_table_error = 0.0;   // analytic table vs Born table
    double max_mc_z = 0.0;

    bool mc_enabled = false;
    McSettings mc;

    // locality probe (attached to minimal-model reports)
    bool locality_included = false;
    double locality_defect = 0.0;     // defect for the given (a, b) pair
    double locality_sup = 0.0;        // closed-form supremum over b
    bool locality_local = false;
    std::vector<std::pair<Vec3, double>> locality_pairs;  // defects on a fixed axis grid

    double analytic_tolerance = 1e-8;
    double mc_sigma = 5.0;
    bool analytic_pass = false;
    bool mc_pass = true;
    bool pass = false;
};

/// Factorization-defect probe of the locality boundary.
struct LocalityPair {
    Vec3 b;
    double defect = 0.0;
};

struct LocalityReport {
    double phi = 0.0;
    double sup_defect = 0.0;         // max over the sampled partners
    double closed_form_sup = 0.0;    // |cos 2phi| * ||a' - 2 sin^2(phi) (a'.n') n'||
    bool local = false;              // sup <= 1e-10
    std::vector<LocalityPair> pairs;
};

/// Joint-vs-single context comparison for one (state, X, Y) input.
struct ViolationReport {
    double a_dot_b = 0.0;
    double xi = 0.0;
    double gamma = 0.0;  // angle between the joint-context cap axis and b
    // Two single-context axis conventions: the lab axis a and the rotated a'.
    double angle_lab = 0.0, angle_rot = 0.0;          // angle(a_hat, axis)
    double analytic_lab = 0.0, analytic_rot = 0.0;    // exact disagreement measure
    double angle_over_pi_lab = 0.0, angle_over_pi_rot = 0.0;
    double mc_lab = 0.0, mc_lab_stderr = 0.0;
    double mc_rot = 0.0, mc_rot_stderr = 0.0;
    McSettings mc;
};

/// Nine-operator square demonstration.
struct PeresSquareReport {
    std::array<std::array<std::string, 3>, 3> labels;
    std::array<int, 3> row_signs{};  // sign s with product = s * I
    std::array<int, 3> col_signs{};
    bool products_ok = false;
    int consistent_assignments = -1;  // exhaustive search over 2^9 sign patterns
    // model demonstration on the singlet
    McSettings mc;
    std::array<double, 3> row_violation_fraction{};
    std::array<double, 3> col_violation_fraction{};
    double any_violation_fraction = 0.0;
};

// ---- serialization ---------------------------------------------------------

/// Doubles are rendered with 17 significant digits so identical inputs yield
/// byte-identical reports.
std::string format_double(double v);

void write_json(const VerificationReport& r, std::ostream& os);
void write_csv(const VerificationReport& r, std::ostream& os);
void write_json(const LocalityReport& r, std::ostream& os);
void write_json(const ViolationReport& r, std::ostream& os);
void write_csv(const ViolationReport& r, std::ostream& os);
void write_json(const PeresSquareReport& r, std::ostream& os);
void write_csv(const PeresSquareReport& r, std::ostream& os);

}  // namespace hv2q

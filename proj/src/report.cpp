#include "hv2q/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace hv2q {

std::string format_double(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

/// Streaming JSON emitter with a fixed key order and 17-significant-digit
/// floats; keeps reports byte-identical across runs for identical inputs.
class JsonWriter {
public:
    explicit JsonWriter(std::ostream& os) : os_(os) {}

    JsonWriter& begin_object() { return token("{", true); }
    JsonWriter& end_object() { depth_pop(); os_ << "}"; return *this; }
    JsonWriter& begin_array() { return token("[", true); }
    JsonWriter& end_array() { depth_pop(); os_ << "]"; return *this; }

    JsonWriter& key(const char* name) {
        separate();
        os_ << '"' << name << "\":";
        pending_value_ = true;
        return *this;
    }

    JsonWriter& value(double v) { separate(); os_ << format_double(v); return *this; }
    JsonWriter& value(int v) { separate(); os_ << v; return *this; }
    JsonWriter& value(uint64_t v) { separate(); os_ << v; return *this; }
    JsonWriter& value(bool v) { separate(); os_ << (v ? "true" : "false"); return *this; }
    JsonWriter& value(const std::string& v) {
        separate();
        os_ << '"';
        for (char c : v) {
            if (c == '"' || c == '\\') os_ << '\\';
            os_ << c;
        }
        os_ << '"';
        return *this;
    }

    template <typename T>
    JsonWriter& field(const char* name, const T& v) { return key(name).value(v); }

    JsonWriter& field(const char* name, const std::array<double, 4>& v) {
        key(name).begin_array();
        for (double e : v) value(e);
        return end_array();
    }

    JsonWriter& field(const char* name, const Vec3& v) {
        key(name).begin_array();
        value(v.x).value(v.y).value(v.z);
        return end_array();
    }

private:
    JsonWriter& token(const char* t, bool opens) {
        separate();
        os_ << t;
        if (opens) fresh_.push_back(true);
        return *this;
    }

    void separate() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!fresh_.empty()) {
            if (!fresh_.back())
                os_ << ",";
            else
                fresh_.back() = false;
        }
    }

    void depth_pop() {
        if (!fresh_.empty()) fresh_.pop_back();
        pending_value_ = false;
    }

    std::ostream& os_;
    std::vector<bool> fresh_;
    bool pending_value_ = false;
};

void write_moment(JsonWriter& w, const char* name, const MomentCheck& m, bool mc_enabled) {
    w.key(name).begin_object();
    w.field("oracle", m.oracle).field("analytic", m.analytic);
    if (mc_enabled) {
        w.field("mc", m.mc).field("mc_stderr", m.mc_stderr).field("z", m.z);
    }
    w.end_object();
}

}  // namespace

void write_json(const VerificationReport& r, std::ostream& os) {
    JsonWriter w(os);
    w.begin_object();
    w.field("schema", 1).field("kind", std::string("verification")).field("model", r.model);

    w.key("frame").begin_object()
        .field("mu1", r.mu1)
        .field("phi", r.phi)
        .end_object();

    w.key("params").begin_object()
        .field("xi", r.xi)
        .field("chi", r.chi)
        .field("gamma", r.gamma)
        .field("bound_min", r.bound_min)
        .field("bound_max", r.bound_max)
        .field("target", r.target)
        .field("solver_residual", r.solver_residual)
        .field("solver_iterations", r.solver_iterations);
    if (r.model == "minimal")
        w.field("theta_sum_slack", r.theta_sum_slack).field("formula_gap", r.formula_gap);
    w.end_object();

    w.field("oracle_route_discrepancy", r.oracle_route_discrepancy);
    write_moment(w, "x", r.x, r.mc_enabled);
    write_moment(w, "y", r.y, r.mc_enabled);
    write_moment(w, "xy", r.xy, r.mc_enabled);

    w.field("born_table", r.born_table).field("analytic_table", r.analytic_table);

    w.key("mc").begin_object().field("enabled", r.mc_enabled);
    if (r.mc_enabled) {
        w.field("samples", r.mc.samples)
            .field("seed", r.mc.seed)
            .field("chunk", r.mc.chunk)
            .field("table", r.mc_table)
            .field("table_stderr", r.mc_table_stderr)
            .field("max_z", r.max_mc_z);
    }
    w.end_object();

    if (r.locality_included) {
        w.key("locality").begin_object()
            .field("phi", r.phi)
            .field("defect", r.locality_defect)
            .field("sup_over_b", r.locality_sup)
            .field("local", r.locality_local);
        w.key("pairs").begin_array();
        for (const auto& [axis, defect] : r.locality_pairs)
            w.begin_object().field("b", axis).field("defect", defect).end_object();
        w.end_array();
        w.end_object();
    }

    w.key("checks").begin_object()
        .field("analytic_tolerance", r.analytic_tolerance)
        .field("mc_sigma", r.mc_sigma)
        .field("max_moment_error", r.max_moment_error)
        .field("max_table_error", r.max_table_error)
        .field("analytic_pass", r.analytic_pass)
        .field("mc_pass", r.mc_pass)
        .field("pass", r.pass)
        .end_object();

    w.end_object();
    os << "\n";
}

void write_csv(const VerificationReport& r, std::ostream& os) {
    os << "model,mu1,phi,xi,chi,gamma,oracle_x,oracle_y,oracle_xy,analytic_x,analytic_y,"
          "analytic_xy,mc_x,mc_y,mc_xy,max_moment_error,max_table_error,max_mc_z,pass\n";
    os << r.model << ',' << format_double(r.mu1) << ',' << format_double(r.phi) << ','
       << format_double(r.xi) << ',' << format_double(r.chi) << ',' << format_double(r.gamma) << ','
       << format_double(r.x.oracle) << ',' << format_double(r.y.oracle) << ','
       << format_double(r.xy.oracle) << ',' << format_double(r.x.analytic) << ','
       << format_double(r.y.analytic) << ',' << format_double(r.xy.analytic) << ','
       << format_double(r.x.mc) << ',' << format_double(r.y.mc) << ',' << format_double(r.xy.mc)
       << ',' << format_double(r.max_moment_error) << ',' << format_double(r.max_table_error)
       << ',' << format_double(r.max_mc_z) << ',' << (r.pass ? 1 : 0) << "\n";
}

void write_json(const LocalityReport& r, std::ostream& os) {
    JsonWriter w(os);
    w.begin_object();
    w.field("schema", 1).field("kind", std::string("locality"));
    w.field("phi", r.phi)
        .field("sup_defect", r.sup_defect)
        .field("closed_form_sup", r.closed_form_sup)
        .field("local", r.local);
    w.key("pairs").begin_array();
    for (const auto& p : r.pairs) {
        w.begin_object().field("b", p.b).field("defect", p.defect).end_object();
    }
    w.end_array();
    w.end_object();
    os << "\n";
}

void write_json(const ViolationReport& r, std::ostream& os) {
    JsonWriter w(os);
    w.begin_object();
    w.field("schema", 1).field("kind", std::string("product_rule"));
    w.field("a_dot_b", r.a_dot_b).field("xi", r.xi).field("gamma", r.gamma);
    w.key("single_context_lab_axis").begin_object()
        .field("angle", r.angle_lab)
        .field("angle_over_pi", r.angle_over_pi_lab)
        .field("analytic_measure", r.analytic_lab)
        .field("mc_measure", r.mc_lab)
        .field("mc_stderr", r.mc_lab_stderr)
        .end_object();
    w.key("single_context_rotated_axis").begin_object()
        .field("angle", r.angle_rot)
        .field("angle_over_pi", r.angle_over_pi_rot)
        .field("analytic_measure", r.analytic_rot)
        .field("mc_measure", r.mc_rot)
        .field("mc_stderr", r.mc_rot_stderr)
        .end_object();
    w.key("mc").begin_object()
        .field("samples", r.mc.samples)
        .field("seed", r.mc.seed)
        .field("chunk", r.mc.chunk)
        .end_object();
    w.end_object();
    os << "\n";
}

void write_csv(const ViolationReport& r, std::ostream& os) {
    os << "a_dot_b,xi,gamma,angle_lab,angle_over_pi_lab,analytic_lab,mc_lab,mc_lab_stderr,"
          "angle_rot,angle_over_pi_rot,analytic_rot,mc_rot,mc_rot_stderr\n";
    os << format_double(r.a_dot_b) << ',' << format_double(r.xi) << ',' << format_double(r.gamma)
       << ',' << format_double(r.angle_lab) << ',' << format_double(r.angle_over_pi_lab) << ','
       << format_double(r.analytic_lab) << ',' << format_double(r.mc_lab) << ','
       << format_double(r.mc_lab_stderr) << ',' << format_double(r.angle_rot) << ','
       << format_double(r.angle_over_pi_rot) << ',' << format_double(r.analytic_rot) << ','
       << format_double(r.mc_rot) << ',' << format_double(r.mc_rot_stderr) << "\n";
}

void write_json(const PeresSquareReport& r, std::ostream& os) {
    JsonWriter w(os);
    w.begin_object();
    w.field("schema", 1).field("kind", std::string("peres_square"));
    w.key("operators").begin_array();
    for (const auto& row : r.labels) {
        w.begin_array();
        for (const auto& label : row) w.value(label);
        w.end_array();
    }
    w.end_array();
    w.key("row_signs").begin_array();
    for (int s : r.row_signs) w.value(s);
    w.end_array();
    w.key("col_signs").begin_array();
    for (int s : r.col_signs) w.value(s);
    w.end_array();
    w.field("products_ok", r.products_ok)
        .field("consistent_assignments", r.consistent_assignments);
    w.key("model_on_singlet").begin_object()
        .field("samples", r.mc.samples)
        .field("seed", r.mc.seed);
    w.key("row_violation_fraction").begin_array();
    for (double f : r.row_violation_fraction) w.value(f);
    w.end_array();
    w.key("col_violation_fraction").begin_array();
    for (double f : r.col_violation_fraction) w.value(f);
    w.end_array();
    w.field("any_violation_fraction", r.any_violation_fraction);
    w.end_object();
    w.end_object();
    os << "\n";
}

void write_csv(const PeresSquareReport& r, std::ostream& os) {
    os << "products_ok,consistent_assignments,row_sign_1,row_sign_2,row_sign_3,col_sign_1,"
          "col_sign_2,col_sign_3,row_violation_1,row_violation_2,row_violation_3,col_violation_1,"
          "col_violation_2,col_violation_3,any_violation_fraction\n";
    os << (r.products_ok ? 1 : 0) << ',' << r.consistent_assignments;
    for (int s : r.row_signs) os << ',' << s;
    for (int s : r.col_signs) os << ',' << s;
    for (double f : r.row_violation_fraction) os << ',' << format_double(f);
    for (double f : r.col_violation_fraction) os << ',' << format_double(f);
    os << ',' << format_double(r.any_violation_fraction) << "\n";
}

}  // namespace hv2q

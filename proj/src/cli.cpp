#include "hv2q/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "hv2q/bell.hpp"
#include "hv2q/contextuality.hpp"
#include "hv2q/dynamics.hpp"
#include "hv2q/errors.hpp"
#include "hv2q/general.hpp"
#include "hv2q/json_io.hpp"
#include "hv2q/minimal.hpp"
#include "hv2q/report.hpp"

namespace hv2q {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CommonOptions {
    std::string state_arg;
    std::string obs_x_arg;
    std::string obs_y_arg;
    std::string model = "general";
    uint64_t samples = 1000000;
    uint64_t seed = 1;
    uint64_t chunk = 65536;
    std::string format = "json";
    std::string out_path;
    double analytic_tol = 1e-8;
    double mc_sigma = 5.0;
    bool timing = false;
};

void add_common(CLI::App* cmd, CommonOptions& o, uint64_t default_samples) {
    o.samples = default_samples;
    cmd->add_option("--state", o.state_arg, "state JSON (inline or file path); default: singlet");
    cmd->add_option("--obs-x", o.obs_x_arg, "first-party observable JSON (inline or file path)");
    cmd->add_option("--obs-y", o.obs_y_arg, "second-party observable JSON (inline or file path)");
    cmd->add_option("--model", o.model, "hidden-variable model")
        ->check(CLI::IsMember({"bell", "general", "minimal"}));
    cmd->add_option("--samples", o.samples, "Monte Carlo sample count (0 disables sampling)");
    cmd->add_option("--seed", o.seed, "Monte Carlo seed");
    cmd->add_option("--chunk", o.chunk, "Monte Carlo chunk size");
    cmd->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", o.out_path, "write the report to this path instead of stdout");
    cmd->add_option("--analytic-tol", o.analytic_tol, "analytic agreement tolerance");
    cmd->add_option("--mc-sigma", o.mc_sigma, "Monte Carlo z-score threshold");
    cmd->add_flag("--timing", o.timing, "print wall time to stderr");
}

TwoQubitState load_state(const CommonOptions& o) {
    if (o.state_arg.empty()) return singlet();
    return parse_state_json(load_inline_or_file(o.state_arg));
}

LocalObservable load_observable(const std::string& arg) {
    if (arg.empty()) return canonicalize_observable(0.0, 1.0, axis_z());
    return parse_observable_json(load_inline_or_file(arg));
}

VerifySettings settings_of(const CommonOptions& o) {
    VerifySettings s;
    s.mc.samples = o.samples;
    s.mc.seed = o.seed;
    s.mc.chunk = o.chunk;
    s.analytic_tolerance = o.analytic_tol;
    s.mc_sigma = o.mc_sigma;
    return s;
}

ModelKind model_kind(const std::string& name) {
    if (name == "bell") return ModelKind::bell;
    if (name == "minimal") return ModelKind::minimal;
    return ModelKind::general;
}

VerificationReport run_model(const std::string& model, const TwoQubitState& psi,
                             const LocalObservable& x, const LocalObservable& y,
                             const VerifySettings& s) {
    if (model == "bell") return verify_bell(psi, x, y, s);
    if (model == "minimal") return verify_minimal(psi, x, y, s);
    return verify_general(psi, x, y, s);
}

/// Output sink: stdout unless --out was given.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw std::invalid_argument("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : fallback_; }

private:
    std::ostream& fallback_;
    std::unique_ptr<std::ofstream> file_;
};

struct SweepRow {
    double parameter = 0.0;
    double oracle_xy = 0.0;
    double model_xy = 0.0;
    double mc_xy = 0.0;
    double mc_stderr = 0.0;
    double z = 0.0;
    double defect = 0.0;
    double sup_defect = 0.0;
};

void write_sweep(const std::string& param, const std::vector<SweepRow>& rows,
                 const std::string& format, std::ostream& os) {
    if (format == "csv") {
        os << "parameter,oracle_xy,model_xy,mc_xy,mc_stderr,defect,sup_defect\n";
        for (const auto& r : rows)
            os << format_double(r.parameter) << ',' << format_double(r.oracle_xy) << ','
               << format_double(r.model_xy) << ',' << format_double(r.mc_xy) << ','
               << format_double(r.mc_stderr) << ',' << format_double(r.defect) << ','
               << format_double(r.sup_defect) << "\n";
        return;
    }
    os << "{\"schema\":1,\"kind\":\"sweep\",\"param\":\"" << param << "\",\"rows\":[";
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (i) os << ",";
        os << "{\"parameter\":" << format_double(r.parameter)
           << ",\"oracle_xy\":" << format_double(r.oracle_xy)
           << ",\"model_xy\":" << format_double(r.model_xy)
           << ",\"mc_xy\":" << format_double(r.mc_xy)
           << ",\"mc_stderr\":" << format_double(r.mc_stderr)
           << ",\"defect\":" << format_double(r.defect)
           << ",\"sup_defect\":" << format_double(r.sup_defect) << "}";
    }
    os << "]}\n";
}

void write_timeline(const Timeline& tl, const std::string& model, const std::string& format,
                    std::ostream& os) {
    if (format == "csv") {
        os << "t,mu1,phi,xi,chi,gamma,oracle_xy,analytic_xy,max_moment_error,max_table_error,pass\n";
        for (const auto& s : tl.steps) {
            const auto& v = s.verification;
            os << format_double(s.t) << ',' << format_double(s.mu1) << ','
               << format_double(s.frame.phi) << ',' << format_double(v.xi) << ','
               << format_double(v.chi) << ',' << format_double(v.gamma) << ','
               << format_double(v.xy.oracle) << ',' << format_double(v.xy.analytic) << ','
               << format_double(v.max_moment_error) << ',' << format_double(v.max_table_error)
               << ',' << (s.pass ? 1 : 0) << "\n";
        }
        return;
    }
    os << "{\"schema\":1,\"kind\":\"timeline\",\"model\":\"" << model
       << "\",\"all_pass\":" << (tl.all_pass ? "true" : "false") << ",\"steps\":[";
    for (size_t i = 0; i < tl.steps.size(); ++i) {
        const auto& s = tl.steps[i];
        const auto& v = s.verification;
        if (i) os << ",";
        os << "{\"t\":" << format_double(s.t) << ",\"mu1\":" << format_double(s.mu1)
           << ",\"phi\":" << format_double(s.frame.phi) << ",\"n\":[" << format_double(s.frame.n.x)
           << "," << format_double(s.frame.n.y) << "," << format_double(s.frame.n.z) << "]"
           << ",\"xi\":" << format_double(v.xi) << ",\"chi\":" << format_double(v.chi)
           << ",\"gamma\":" << format_double(v.gamma)
           << ",\"oracle_xy\":" << format_double(v.xy.oracle)
           << ",\"analytic_xy\":" << format_double(v.xy.analytic)
           << ",\"max_moment_error\":" << format_double(v.max_moment_error)
           << ",\"max_table_error\":" << format_double(v.max_table_error)
           << ",\"pass\":" << (s.pass ? "true" : "false") << "}";
    }
    os << "]}\n";
}

struct Range {
    double start = 0.0, stop = 0.0;
    int count = 0;
};

Range parse_range(const std::string& text) {
    Range r;
    char extra = 0;
    const int got = std::sscanf(text.c_str(), "%lf:%lf:%d%c", &r.start, &r.stop, &r.count, &extra);
    if (got != 3 || r.count < 1)
        throw std::invalid_argument("range: expected start:stop:count with count >= 1");
    if (r.count > 1 && r.stop < r.start)
        throw std::invalid_argument("range: stop must not precede start");
    return r;
}

double range_value(const Range& r, int i) {
    if (r.count == 1) return r.start;
    return r.start + (r.stop - r.start) * static_cast<double>(i) / (r.count - 1);
}

int cmd_verify(const CommonOptions& o, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    const TwoQubitState psi = load_state(o);
    const LocalObservable x = load_observable(o.obs_x_arg);
    const LocalObservable y = load_observable(o.obs_y_arg);
    const VerificationReport report = run_model(o.model, psi, x, y, settings_of(o));

    Sink sink(o.out_path, out);
    if (o.format == "csv")
        write_csv(report, sink.stream());
    else
        write_json(report, sink.stream());
    if (o.timing) {
        const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
        err << "verify: " << dt.count() << " s\n";
    }
    return report.pass ? 0 : 1;
}

int cmd_sweep(const CommonOptions& o, const std::string& param, const std::string& range_text,
              const std::string& hamiltonian_arg, std::ostream& out, std::ostream& err) {
    const Range range = parse_range(range_text);
    const LocalObservable x = load_observable(o.obs_x_arg);
    const LocalObservable y = load_observable(o.obs_y_arg);
    const VerifySettings settings = settings_of(o);

    CMat4 hamiltonian;
    TwoQubitState base = load_state(o);
    if (param == "t") {
        if (hamiltonian_arg.empty())
            throw std::invalid_argument("sweep over t requires --hamiltonian");
        hamiltonian = parse_hamiltonian_json(load_inline_or_file(hamiltonian_arg));
    }

    std::vector<SweepRow> rows;
    bool all_pass = true;
    for (int i = 0; i < range.count; ++i) {
        const double value = range_value(range, i);
        TwoQubitState psi = base;
        LocalObservable xv = x;
        VerifySettings step = settings;
        step.mc.seed = settings.mc.seed + static_cast<uint64_t>(i);

        if (param == "theta") {
            // First-party axis at angle theta from b inside a fixed plane.
            const Vec3 perp = orthogonal_unit(y.axis);
            xv = canonicalize_observable(
                x.alpha1, x.alpha2, std::cos(value) * y.axis + std::sin(value) * perp);
        } else if (param == "phi") {
            const double mu1 = 0.5 * (1.0 + std::sin(2.0 * value));
            Ket4 k;
            k[0] = cplx{std::sqrt(mu1), 0.0};
            k[3] = cplx{std::sqrt(1.0 - mu1), 0.0};
            psi = make_state(k);
        } else if (param == "t") {
            psi = evolve(base, hamiltonian, value);
        } else {
            throw std::invalid_argument("sweep: unknown parameter '" + param + "'");
        }

        const VerificationReport rep = run_model(o.model, psi, xv, y, step);
        const CanonicalFrame frame = frame_of(psi);
        SweepRow row;
        row.parameter = value;
        row.oracle_xy = rep.xy.oracle;
        row.model_xy = rep.xy.analytic;
        row.mc_xy = rep.xy.mc;
        row.mc_stderr = rep.xy.mc_stderr;
        row.z = rep.xy.z;
        row.defect = factorization_defect(frame, xv, y);
        row.sup_defect = factorization_defect_sup(frame, xv);
        rows.push_back(row);
        all_pass = all_pass && rep.pass;
    }

    Sink sink(o.out_path, out);
    write_sweep(param, rows, o.format, sink.stream());
    if (o.timing) err << "sweep: " << rows.size() << " grid points\n";
    return all_pass ? 0 : 1;
}

int cmd_evolve(const CommonOptions& o, const std::string& hamiltonian_arg, double t_max, int steps,
               std::ostream& out, std::ostream& err) {
    if (hamiltonian_arg.empty()) throw std::invalid_argument("evolve requires --hamiltonian");
    if (steps < 1) throw std::invalid_argument("evolve: steps must be >= 1");
    if (t_max < 0.0) throw std::invalid_argument("evolve: t-max must be >= 0");
    const CMat4 hamiltonian = parse_hamiltonian_json(load_inline_or_file(hamiltonian_arg));
    const TwoQubitState psi = load_state(o);
    const LocalObservable x = load_observable(o.obs_x_arg);
    const LocalObservable y = load_observable(o.obs_y_arg);

    std::vector<double> times;
    for (int i = 0; i < steps; ++i)
        times.push_back(steps == 1 ? 0.0 : t_max * static_cast<double>(i) / (steps - 1));

    const Timeline tl = frame_timeline(psi, hamiltonian, times, x, y, model_kind(o.model),
                                       settings_of(o));
    Sink sink(o.out_path, out);
    write_timeline(tl, o.model, o.format, sink.stream());
    if (o.timing) err << "evolve: " << tl.steps.size() << " steps\n";
    return tl.all_pass ? 0 : 1;
}

int cmd_contextuality(const CommonOptions& o, const std::string& demo, std::ostream& out,
                      std::ostream& err) {
    Sink sink(o.out_path, out);
    if (demo == "peres") {
        const PeresSquareReport rep = peres_square(o.samples, o.seed);
        if (o.format == "csv")
            write_csv(rep, sink.stream());
        else
            write_json(rep, sink.stream());
        const bool ok = rep.products_ok && rep.consistent_assignments == 0;
        return ok ? 0 : 1;
    }
    // product-rule
    const TwoQubitState psi = load_state(o);
    const LocalObservable x = load_observable(o.obs_x_arg);
    const LocalObservable y = load_observable(o.obs_y_arg);
    McSettings mc;
    mc.samples = o.samples;
    mc.seed = o.seed;
    mc.chunk = o.chunk;
    const ViolationReport rep = product_rule_violation(psi, x, y, mc);
    if (o.format == "csv")
        write_csv(rep, sink.stream());
    else
        write_json(rep, sink.stream());
    if (o.timing) err << "contextuality: done\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"hidden-variable models for two-qubit correlations"};
    app.require_subcommand(1);

    CommonOptions vo, so, eo, co;
    std::string sweep_param, sweep_range, sweep_hamiltonian;
    std::string evolve_hamiltonian;
    double evolve_t_max = 1.0;
    int evolve_steps = 10;
    std::string demo = "peres";

    CLI::App* verify = app.add_subcommand("verify", "check one model against the exact averages");
    add_common(verify, vo, 1000000);

    CLI::App* sweep = app.add_subcommand("sweep", "grid sweep with CSV/JSON output");
    add_common(sweep, so, 100000);
    sweep->add_option("--param", sweep_param, "swept parameter")
        ->required()
        ->check(CLI::IsMember({"theta", "phi", "t"}));
    sweep->add_option("--range", sweep_range, "start:stop:count")->required();
    sweep->add_option("--hamiltonian", sweep_hamiltonian, "Hamiltonian JSON (for t sweeps)");

    CLI::App* evolve_cmd = app.add_subcommand("evolve", "verify the model along a trajectory");
    add_common(evolve_cmd, eo, 0);
    evolve_cmd->add_option("--hamiltonian", evolve_hamiltonian, "Hamiltonian JSON (inline or file)");
    evolve_cmd->add_option("--t-max", evolve_t_max, "final time");
    evolve_cmd->add_option("--steps", evolve_steps, "number of sampled instants");

    CLI::App* ctx = app.add_subcommand("contextuality", "contextuality demonstrations");
    add_common(ctx, co, 1000000);
    ctx->add_option("--demo", demo, "which demonstration")
        ->check(CLI::IsMember({"peres", "product-rule"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(vo, out, err);
        if (sweep->parsed())
            return cmd_sweep(so, sweep_param, sweep_range, sweep_hamiltonian, out, err);
        if (evolve_cmd->parsed())
            return cmd_evolve(eo, evolve_hamiltonian, evolve_t_max, evolve_steps, out, err);
        if (ctx->parsed()) return cmd_contextuality(co, demo, out, err);
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace hv2q

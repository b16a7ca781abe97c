// hpds: generate, reduce, simulate and analyze homogeneous polynomial dynamical systems.

#include "hpds/analysis.hpp"
#include "hpds/errors.hpp"
#include "hpds/generators.hpp"
#include "hpds/io.hpp"
#include "hpds/reduction.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace {

using nlohmann::json;
using namespace hpds;

constexpr const char* kToolVersion = "0.1.0";

enum Exit : int { ok = 0, input_error = 2, precondition_error = 3, numerical_error = 4 };

struct Common {
    std::string out;
    std::string format = "json";
};

json to_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

// NaN / inf are not representable in JSON.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

Vector parse_vector(const std::string& text, const char* what) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InputError(std::string("cannot parse ") + what + " entry '" + item + "'");
        }
    }
    if (values.empty()) throw InputError(std::string(what) + " is empty");
    return Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void require_dim(const Vector& v, std::size_t n, const char* what) {
    if (static_cast<std::size_t>(v.size()) != n)
        throw InputError(std::string(what) + " has " + std::to_string(v.size()) + " entries, model dimension is " + std::to_string(n));
}

class Reporter {
public:
    Reporter(std::string command, std::vector<std::string> argv)
        : command_(std::move(command)), argv_(std::move(argv)), start_(std::chrono::steady_clock::now()) {}

    void emit(const json& result, const std::string& path) const {
        json doc;
        std::string echo = "hpds";
        for (const auto& a : argv_) echo += " " + a;
        doc["command"] = command_;
        doc["argv"] = argv_;
        doc["command_line"] = echo;
        doc["tool"] = {{"name", "hpds"}, {"version", kToolVersion}};
        doc["result"] = result;
        doc["wall_clock_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        const std::string text = doc.dump(2) + "\n";
        if (path.empty() || path == "-")
            std::cout << text;
        else
            write_text(path, text);
    }

private:
    std::string command_;
    std::vector<std::string> argv_;
    std::chrono::steady_clock::time_point start_;
};

json model_summary(const InputOutputHpds& m) {
    return {{"n", m.n()}, {"k", m.k()}, {"m", m.m()}, {"l", m.l()}, {"params", param_count(m.n(), m.k(), m.m(), m.l())}};
}

json trajectory_json(const Trajectory& tr) {
    json states = json::array();
    for (const Vector& x : tr.states) states.push_back(to_json(x));
    json doc = {{"times", tr.times}, {"states", std::move(states)}};
    if (!tr.outputs.empty()) {
        json outputs = json::array();
        for (const Vector& y : tr.outputs) outputs.push_back(to_json(y));
        doc["outputs"] = std::move(outputs);
    }
    return doc;
}

json trajectory_summary(const Trajectory& tr) {
    return {{"steps", tr.times.empty() ? 0 : tr.times.size() - 1},
            {"t_final", tr.times.empty() ? 0.0 : tr.times.back()},
            {"initial_norm", tr.states.empty() ? 0.0 : tr.states.front().norm()},
            {"final_norm", tr.states.empty() ? 0.0 : tr.states.back().norm()},
            {"final_state", tr.states.empty() ? json(nullptr) : to_json(tr.states.back())},
            {"diverged", tr.diverged_at.has_value()},
            {"diverged_at", tr.diverged_at ? json(*tr.diverged_at) : json(nullptr)}};
}

ControlSignal read_control(const std::string& constant, const std::string& table_path, std::size_t m) {
    if (!constant.empty() && !table_path.empty()) throw InputError("use either --u or --u-table, not both");
    if (!constant.empty()) return ControlSignal::constant(parse_vector(constant, "--u"));
    if (!table_path.empty()) {
        std::vector<ControlSignal::Breakpoint> table;
        std::stringstream text(read_text(table_path));
        std::string line;
        while (std::getline(text, line)) {
            if (line.empty() || line[0] == '#' || line[0] == 't') continue;
            const Vector row = parse_vector(line, "--u-table row");
            if (row.size() < 2) throw InputError("--u-table rows need a time and at least one input value");
            table.push_back({row(0), row.tail(row.size() - 1)});
        }
        return ControlSignal::piecewise_constant(std::move(table));
    }
    return ControlSignal::zero(m);
}

int run_gen(const std::string& kind, std::size_t n, std::size_t k, std::optional<std::size_t> r, std::size_t m, std::size_t l,
            std::optional<std::uint64_t> seed, bool stable_only, const Common& c, const Reporter& rep) {
    ModelFile file = [&]() -> ModelFile {
        if (kind == "example1") return generate_example1();
        if (!seed) throw InputError("--seed is required for generator '" + kind + "'");
        if (kind == "example2") return generate_example2(*seed);
        if (kind == "almost_symmetric") return generate_almost_symmetric(n, k, m, l, *seed);
        if (kind == "odeco") {
            OdecoSpec spec;
            spec.n = n;
            spec.k = k;
            spec.r = r.value_or(n);
            spec.m = m;
            spec.l = l;
            spec.negative_only = stable_only;
            return generate_odeco(spec, *seed);
        }
        throw InputError("unknown generator kind '" + kind + "'");
    }();
    const std::string text = serialize_model(file);
    if (c.out.empty() || c.out == "-") {
        std::cout << text;
    } else {
        write_text(c.out, text);
        rep.emit({{"written", c.out}, {"model", model_summary(file.model)}, {"generator", file.metadata.generator}}, "-");
    }
    return ok;
}

int run_reduce(const std::string& model_path, std::optional<double> tol, std::optional<std::size_t> rank, double last_tol,
               const std::string& report_path, const Common& c, const Reporter& rep) {
    if (tol && rank) throw InputError("use either --tol or --rank, not both");
    const ModelFile in = read_model(model_path);
    const ReductionCriterion crit = rank ? ReductionCriterion(FixedRank{*rank}) : ReductionCriterion(RelativeTolerance{tol.value_or(1e-8)});
    const Reduction red = reduce(in.model, crit, last_tol);
    const ReductionReport& r = red.report;

    ModelFile out{red.reduced.model, in.metadata, red.reduced.V, red.reduced.Vk};
    out.metadata.name = (in.metadata.name.empty() ? std::string("model") : in.metadata.name) + "-reduced";
    out.metadata.generator = "reduce";
    if (!c.out.empty()) write_model(c.out, out);

    json result = {{"input", model_path},
                   {"criterion", rank ? json{{"rank", *rank}} : json{{"tol", tol.value_or(1e-8)}}},
                   {"n", r.n},
                   {"k", r.k},
                   {"m", r.m},
                   {"l", r.l},
                   {"r", r.r},
                   {"r_k", r.r_k},
                   {"sigma_retained", r.sigma_retained},
                   {"sigma_discarded", r.sigma_discarded},
                   {"sigma_k_retained", r.sigma_k_retained},
                   {"sigma_k_discarded", r.sigma_k_discarded},
                   {"residual", r.residual},
                   {"exact", r.exact},
                   {"last_factor_shared", r.last_factor_shared},
                   {"params_before", r.params_before},
                   {"params_after", r.params_after}};
    if (!c.out.empty()) result["reduced_model"] = c.out;
    rep.emit(result, report_path);
    return ok;
}

int run_simulate(const std::string& model_path, const std::string& x0_text, const std::string& u_const,
                 const std::string& u_table, double t0, double tmax, double dt, const std::string& method,
                 double bound, const std::string& report_path, const Common& c, const Reporter& rep) {
    const ModelFile in = read_model(model_path);
    const Vector x0 = parse_vector(x0_text, "--x0");
    require_dim(x0, in.model.n(), "--x0");
    SimulationOptions o;
    o.t0 = t0;
    o.t1 = tmax;
    o.dt = dt;
    o.divergence_bound = bound;
    if (method == "rk4")
        o.method = Integrator::rk4;
    else if (method == "euler")
        o.method = Integrator::euler;
    else
        throw InputError("--method must be rk4 or euler");
    const Trajectory tr = simulate(in.model, x0, read_control(u_const, u_table, in.model.m()), o);

    if (c.out.empty() || c.out == "-") {
        if (c.format == "csv")
            write_trajectory_csv(std::cout, tr);
        else
            std::cout << trajectory_json(tr).dump() << "\n";
    } else if (c.format == "csv") {
        write_trajectory_csv(c.out, tr);
    } else {
        write_text(c.out, trajectory_json(tr).dump() + "\n");
    }
    if (!c.out.empty() && c.out != "-") {
        json result = trajectory_summary(tr);
        result["input"] = model_path;
        result["output"] = c.out;
        result["method"] = method;
        result["dt"] = dt;
        rep.emit(result, report_path.empty() ? "-" : report_path);
    } else if (!report_path.empty()) {
        rep.emit(trajectory_summary(tr), report_path);
    }
    return ok;
}

int run_compare(const std::string& model_path, const std::string& reduced_path, const std::string& x0_text, double tmax,
                double dt, const Common& c, const Reporter& rep) {
    const ModelFile full = read_model(model_path);
    const ModelFile small = read_model(reduced_path);
    if (!small.V) throw InputError("reduced model file carries no projection V");
    const Matrix& V = *small.V;
    if (static_cast<std::size_t>(V.rows()) != full.model.n())
        throw InputError("projection V rows do not match the original model dimension");
    const Vector x0 = parse_vector(x0_text, "--x0");
    require_dim(x0, full.model.n(), "--x0");
    const Vector z0 = project_state(V, x0);
    SimulationOptions o;
    o.t1 = tmax;
    o.dt = dt;
    const Trajectory tx = simulate(full.model, x0, ControlSignal::zero(full.model.m()), o);
    const Trajectory tz = simulate(small.model, z0, ControlSignal::zero(small.model.m()), o);
    const std::size_t steps = std::min(tx.states.size(), tz.states.size());
    double state_err = 0.0;
    double output_err = 0.0;
    bool have_outputs = !tx.outputs.empty() && !tz.outputs.empty();
    for (std::size_t i = 0; i < steps; ++i) {
        state_err = std::max(state_err, (tx.states[i] - lift_state(V, tz.states[i])).norm());
        if (have_outputs) output_err = std::max(output_err, (tx.outputs[i] - tz.outputs[i]).norm());
    }
    json result = {{"model", model_path},
                   {"reduced", reduced_path},
                   {"x0", to_json(x0)},
                   {"z0", to_json(z0)},
                   {"max_state_error", state_err},
                   {"x0_projection_residual", (x0 - lift_state(V, z0)).norm()},
                   {"original", trajectory_summary(tx)},
                   {"reduced_trajectory", trajectory_summary(tz)}};
    if (have_outputs) result["max_output_error"] = output_err;
    rep.emit(result, c.out);
    return ok;
}

int run_stability(const std::string& model_path, const std::string& x0_text, double odeco_tol, const Common& c, const Reporter& rep) {
    const ModelFile in = read_model(model_path);
    const Vector x0 = parse_vector(x0_text, "--x0");
    require_dim(x0, in.model.n(), "--x0");
    const StabilityVerdict v = stability_classify(in.model.A(), x0, odeco_tol);
    json result = {{"model", model_path},
                   {"verdict", std::string(to_string(v.classification))},
                   {"lambdas", v.lambdas},
                   {"alphas", v.alphas},
                   {"terms", v.terms},
                   {"zero_terms", v.zero_terms},
                   {"origin_unique", v.origin_unique},
                   {"odeco_tol", odeco_tol}};
    rep.emit(result, c.out);
    return ok;
}

int run_controllability(const std::string& model_path, std::optional<std::size_t> max_level, double rank_tol, std::size_t cap,
                        bool no_stop, const std::string& reduced_path, const Common& c, const Reporter& rep) {
    const ModelFile in = read_model(model_path);
    if (!in.model.B()) throw InputError("model has no input matrix");
    if (in.model.k() % 2 != 0)
        throw PreconditionError("strong controllability test requires even tensor order; k = " + std::to_string(in.model.k()) +
                                " only admits an accessibility statement");
    ControllabilityOptions o;
    o.max_level = max_level;
    o.rank_tol = rank_tol;
    o.column_cap = cap;
    o.stop_on_saturation = !no_stop;
    const ControllabilityResult r = controllability_matrix(in.model.A(), *in.model.B(), o);
    json result = {{"model", model_path},
                   {"n", in.model.n()},
                   {"rank", r.rank},
                   {"rank_tol", r.rank_tol},
                   {"levels_used", r.levels_used},
                   {"columns", r.R.cols()},
                   {"level_columns", r.level_columns},
                   {"truncated_by_cap", r.truncated_by_cap},
                   {"strongly_controllable", r.is_strongly_controllable}};
    if (!reduced_path.empty()) {
        const ModelFile red = read_model(reduced_path);
        if (!red.V) throw InputError("reduced model file carries no projection V");
        const ReducedModel rm{red.model, *red.V, red.Vk.value_or(*red.V), red.model.n()};
        const PreservationCheck chk = check_controllability_preservation(in.model, rm, o);
        result["preservation"] = {{"reduced", reduced_path},
                                  {"r", chk.r},
                                  {"residual", number(*chk.residual_controllability)},
                                  {"reference_norm", chk.reference_norm},
                                  {"exact_reduction", chk.exact_reduction},
                                  {"within_tolerance", chk.within_tolerance},
                                  {"rank_reduced_aligned", chk.rank_reduced},
                                  {"rank_reduced", chk.rank_reduced_independent},
                                  {"implication_holds", chk.implication_holds}};
    }
    rep.emit(result, c.out);
    return ok;
}

int run_observability(const std::string& model_path, const std::string& x_text, std::optional<std::size_t> max_level,
                      double rank_tol, double size_cap, bool stop_on_stagnation, const std::string& reduced_path,
                      const Common& c, const Reporter& rep) {
    const ModelFile in = read_model(model_path);
    if (!in.model.C()) throw InputError("model has no output matrix");
    const Vector x = parse_vector(x_text, "--x");
    require_dim(x, in.model.n(), "--x");
    ObservabilityOptions o;
    o.max_level = max_level;
    o.rank_tol = rank_tol;
    o.size_cap = size_cap;
    o.stop_on_stagnation = stop_on_stagnation;
    const ObservabilityResult r = observability_matrix(in.model.A(), *in.model.C(), x, o);
    json result = {{"model", model_path},
                   {"x", to_json(x)},
                   {"n", in.model.n()},
                   {"rank", r.rank},
                   {"rank_tol", r.rank_tol},
                   {"levels_used", r.levels_used},
                   {"rows", r.O.rows()},
                   {"size_capped", r.size_capped},
                   {"verdict", std::string(to_string(r.verdict))},
                   {"locally_weakly_observable",
                    r.verdict == Observability::observable ? json("yes")
                    : r.verdict == Observability::not_observable ? json("no")
                                                                 : json("inconclusive")}};
    if (!reduced_path.empty()) {
        const ModelFile red = read_model(reduced_path);
        if (!red.V) throw InputError("reduced model file carries no projection V");
        const ReducedModel rm{red.model, *red.V, red.Vk.value_or(*red.V), red.model.n()};
        const PreservationCheck chk = check_observability_preservation(in.model, rm, x, o);
        result["preservation"] = {{"reduced", reduced_path},
                                  {"r", chk.r},
                                  {"residual", number(*chk.residual_observability)},
                                  {"reference_norm", chk.reference_norm},
                                  {"exact_reduction", chk.exact_reduction},
                                  {"within_tolerance", chk.within_tolerance},
                                  {"rank_reduced_aligned", chk.rank_reduced},
                                  {"rank_reduced", chk.rank_reduced_independent},
                                  {"implication_holds", chk.implication_holds}};
    }
    rep.emit(result, c.out);
    return ok;
}

int run_info(const std::string& model_path, const Common& c, const Reporter& rep) {
    const ModelFile in = read_model(model_path);
    const InputOutputHpds& m = in.model;
    json result = model_summary(m);
    result["model"] = model_path;
    const bool symmetric = is_symmetric(m.A());
    result["symmetric"] = symmetric;
    result["almost_symmetric"] = is_almost_symmetric(m.A());
    result["odeco"] = symmetric && is_odeco(m.A());
    result["frobenius_norm"] = frobenius_norm(m.A());
    result["has_projection"] = in.V.has_value();
    result["metadata"] = {{"name", in.metadata.name},
                          {"generator", in.metadata.generator},
                          {"seed", in.metadata.seed ? json(*in.metadata.seed) : json(nullptr)},
                          {"rng", in.metadata.rng}};
    rep.emit(result, c.out);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tensor-based model reduction and analysis of homogeneous polynomial dynamical systems"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out,-o", common.out, "Output path ('-' for stdout)");
        sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    };

    // gen
    std::string kind;
    std::size_t gen_n = 2, gen_k = 4, gen_m = 0, gen_l = 0;
    std::optional<std::size_t> gen_r;
    std::optional<std::uint64_t> seed;
    bool stable_only = false;
    auto* gen = app.add_subcommand("gen", "Generate a model file");
    gen->add_option("kind", kind, "odeco | almost_symmetric | example1 | example2")
        ->required()
        ->check(CLI::IsMember({"odeco", "almost_symmetric", "example1", "example2"}));
    gen->add_option("-n", gen_n, "State dimension");
    gen->add_option("-k", gen_k, "Tensor order");
    gen->add_option("-r", gen_r, "Number of nonzero odeco eigenvalues");
    gen->add_option("-m", gen_m, "Input dimension");
    gen->add_option("-l", gen_l, "Output dimension");
    gen->add_option("--seed", seed, "Random seed");
    gen->add_flag("--stable-only", stable_only, "odeco: draw only negative eigenvalues");
    add_common(gen);

    // reduce
    std::string model_path, reduced_path, report_path;
    std::optional<double> tol;
    std::optional<std::size_t> rank;
    double last_tol = 1e-8;
    auto* red = app.add_subcommand("reduce", "HOSVD-based model reduction");
    red->add_option("model", model_path)->required()->check(CLI::ExistingFile);
    red->add_option("--tol", tol, "Relative singular value tolerance (default 1e-8)");
    red->add_option("--rank", rank, "Fixed reduced dimension r");
    red->add_option("--last-mode-tol", last_tol, "Tolerance for the last-mode rank");
    red->add_option("--report", report_path, "Report path (default stdout)");
    add_common(red);

    // simulate
    std::string x0_text, u_const, u_table, method = "rk4";
    double t0 = 0.0, tmax = 10.0, dt = 1e-3, bound = 1e6;
    auto* sim = app.add_subcommand("simulate", "Fixed-step simulation");
    sim->add_option("model", model_path)->required()->check(CLI::ExistingFile);
    sim->add_option("--x0", x0_text, "Initial state, comma separated")->required();
    sim->add_option("--u", u_const, "Constant input, comma separated");
    sim->add_option("--u-table", u_table, "Piecewise-constant input CSV: t,u_1,...,u_m")->check(CLI::ExistingFile);
    sim->add_option("--t0", t0, "Start time");
    sim->add_option("--tmax", tmax, "End time");
    sim->add_option("--dt", dt, "Step size");
    sim->add_option("--method", method, "rk4 | euler");
    sim->add_option("--divergence-bound", bound, "Norm at which the run is declared divergent");
    sim->add_option("--report", report_path, "Summary path");
    add_common(sim);

    // compare
    auto* cmp = app.add_subcommand("compare", "Simulate original and reduced models from consistent initial states");
    cmp->add_option("model", model_path)->required()->check(CLI::ExistingFile);
    cmp->add_option("reduced", reduced_path)->required()->check(CLI::ExistingFile);
    cmp->add_option("--x0", x0_text, "Initial state of the original model")->required();
    cmp->add_option("--tmax", tmax, "End time");
    cmp->add_option("--dt", dt, "Step size");
    add_common(cmp);

    // stability
    double odeco_tol = kOdecoTol;
    auto* stab = app.add_subcommand("stability", "Sign test for odeco systems");
    stab->add_option("model", model_path)->required()->check(CLI::ExistingFile);
    stab->add_option("--x0", x0_text, "Initial state")->required();
    stab->add_option("--tol", odeco_tol, "Odeco off-diagonal tolerance");
    add_common(stab);

    // controllability
    std::optional<std::size_t> max_level;
    double rank_tol = kRankTol;
    std::size_t column_cap = ControllabilityOptions{}.column_cap;
    bool no_early_stop = false;
    auto* ctrl = app.add_subcommand("controllability", "Strong controllability rank test");
    ctrl->add_option("model", model_path)->required()->check(CLI::ExistingFile);
    ctrl->add_option("--max-level", max_level, "Highest level j (default n-1)");
    ctrl->add_option("--rank-tol", rank_tol, "Relative rank tolerance");
    ctrl->add_option("--column-cap", column_cap, "Maximum number of columns");
    ctrl->add_flag("--no-early-stop", no_early_stop, "Keep adding levels after the rank saturates");
    ctrl->add_option("--reduced", reduced_path, "Reduced model to check preservation against")->check(CLI::ExistingFile);
    add_common(ctrl);

    // observability
    std::string x_text;
    double size_cap = ObservabilityOptions{}.size_cap;
    bool stop_on_stagnation = false;
    auto* obs = app.add_subcommand("observability", "Local weak observability rank test at a state");
    obs->add_option("model", model_path)->required()->check(CLI::ExistingFile);
    obs->add_option("--x", x_text, "State, comma separated")->required();
    obs->add_option("--max-level", max_level, "Highest level j (default n-1)");
    obs->add_option("--rank-tol", rank_tol, "Relative rank tolerance");
    obs->add_option("--size-cap", size_cap, "Maximum entries of the dense row chain");
    obs->add_flag("--stop-on-stagnation", stop_on_stagnation, "Stop when a level adds no rank");
    obs->add_option("--reduced", reduced_path, "Reduced model to check preservation against")->check(CLI::ExistingFile);
    add_common(obs);

    auto* info = app.add_subcommand("info", "Summarize a model file");
    info->add_option("model", model_path)->required()->check(CLI::ExistingFile);
    add_common(info);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : input_error;
    }

    std::vector<std::string> args(argv + 1, argv + argc);
    const std::string command = app.get_subcommands().front()->get_name();
    const Reporter rep(command, args);
    try {
        if (gen->parsed()) return run_gen(kind, gen_n, gen_k, gen_r, gen_m, gen_l, seed, stable_only, common, rep);
        if (red->parsed()) return run_reduce(model_path, tol, rank, last_tol, report_path, common, rep);
        if (sim->parsed())
            return run_simulate(model_path, x0_text, u_const, u_table, t0, tmax, dt, method, bound, report_path, common, rep);
        if (cmp->parsed()) return run_compare(model_path, reduced_path, x0_text, tmax, dt, common, rep);
        if (stab->parsed()) return run_stability(model_path, x0_text, odeco_tol, common, rep);
        if (ctrl->parsed())
            return run_controllability(model_path, max_level, rank_tol, column_cap, no_early_stop, reduced_path, common, rep);
        if (obs->parsed())
            return run_observability(model_path, x_text, max_level, rank_tol, size_cap, stop_on_stagnation, reduced_path,
                                     common, rep);
        if (info->parsed()) return run_info(model_path, common, rep);
    } catch (const NotOdeco& e) {
        std::cerr << "hpds " << command << ": precondition violated (stability test needs an odeco tensor): " << e.what() << "\n";
        return precondition_error;
    } catch (const PreconditionError& e) {
        std::cerr << "hpds " << command << ": precondition violated: " << e.what() << "\n";
        return precondition_error;
    } catch (const NumericalError& e) {
        std::cerr << "hpds " << command << ": numerical failure: " << e.what() << "\n";
        return numerical_error;
    } catch (const InputError& e) {
        std::cerr << "hpds " << command << ": " << e.what() << "\n";
        return input_error;
    } catch (const std::exception& e) {
        std::cerr << "hpds " << command << ": " << e.what() << "\n";
        return numerical_error;
    }
    return input_error;
}

#include "sodkit/cli.hpp"

#include "sodkit/analysis.hpp"
#include "sodkit/errors.hpp"
#include "sodkit/io.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <sstream>

namespace sodkit::cli {

namespace {

using nlohmann::json;

void emit(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty()) {
        out << content;
    } else {
        io::write_atomic(path, content);
    }
}

std::string dump(const json& doc) {
    return doc.dump(2) + "\n";
}

std::string csv_number(double x) {
    return std::isnan(x) ? std::string() : io::format_double(x);
}

EventMetric build_metric(const RunConfig& c) {
    if (c.metric == "vr") {
        return VanRossumMetric{{c.alpha}};
    }
    if (c.metric == "vp") {
        return VictorPurpuraMetric{{c.s, parse_vp_mode(c.vp_mode)}};
    }
    if (c.metric == "schreiber") {
        SchreiberParams p;
        if (c.kernel == "gauss") {
            p.kernel = SchreiberKernel::gaussian;
        } else if (c.kernel != "exp") {
            throw DomainError("--kernel: expected exp|gauss, got '" + c.kernel + "'");
        }
        if (c.h == "arccos") {
            p.h = SchreiberDistance::arccos;
        } else if (c.h != "one_minus_s") {
            throw DomainError("--h-fn: expected one_minus_s|arccos, got '" + c.h + "'");
        }
        p.alpha = c.alpha;
        p.sigma = c.sigma;
        return SchreiberMetric{p};
    }
    return parse_norm(c.metric);
}

bool integer_amplitudes(const EventSequence& e) {
    for (const double v : e.values()) {
        if (v != std::floor(v)) {
            return false;
        }
    }
    return true;
}

// theta-pure input divided by its common magnitude; other input unchanged.
std::pair<EventSequence, double> to_units(const EventSequence& e) {
    if (e.empty() || integer_amplitudes(e)) {
        return {e, 1.0};
    }
    const auto mag = common_magnitude(e);
    if (!mag) {
        return {e, 1.0};
    }
    return {normalize(e, *mag), *mag};
}

json events_json(const EventSequence& e) {
    return {{"times", std::vector<double>(e.times().begin(), e.times().end())},
            {"values", std::vector<double>(e.values().begin(), e.values().end())}};
}

json dense_json(const DenseEvents& d) {
    return {{"times", d.times}, {"values", d.values}};
}

std::vector<double> theta_list(const RunConfig& c, double fallback) {
    if (!c.thetas.empty()) {
        return c.thetas;
    }
    return {c.theta.value_or(fallback)};
}

int cmd_sample(const RunConfig& c, std::ostream& out) {
    const Signal f = io::read_signal(c.input);
    const EventSequence eta = sample(f, Threshold(c.theta.value_or(1.0)), parse_scheme(c.scheme));
    if (c.output.empty()) {
        out << io::events_to_csv(eta);
    } else {
        io::write_events(c.output, eta);
    }
    return ok;
}

int cmd_norm(const RunConfig& c, std::ostream& out) {
    const EventSequence eta = io::read_events(c.events, c.horizon);
    const NormKind kind = parse_norm(c.norm);
    double value;
    if (c.bruteforce) {
        if (kind != NormKind::discrepancy) {
            throw DomainError("--bruteforce is only available for --kind D");
        }
        value = discrepancy_bruteforce(eta);
    } else {
        value = norm(kind, eta);
    }
    out << io::format_double(value) << "\n";
    return ok;
}

int cmd_distance(const RunConfig& c, std::ostream& out) {
    EventSequence a = io::read_events(c.events, c.horizon);
    EventSequence b = io::read_events(c.events_b, c.horizon);
    const EventMetric metric = build_metric(c);
    if (std::holds_alternative<VictorPurpuraMetric>(metric) && !(integer_amplitudes(a) && integer_amplitudes(b))) {
        // theta-pure pairs sharing one theta are compared in units of theta
        double theta = 0.0;
        bool shared = true;
        for (const EventSequence* e : {&a, &b}) {
            if (e->empty()) {
                continue;
            }
            const auto m = common_magnitude(*e);
            shared = shared && m && (theta == 0.0 || theta == *m);
            theta = m ? *m : theta;
        }
        if (shared && theta > 0.0) {
            a = normalize(a, theta);
            b = normalize(b, theta);
        }
    }
    out << io::format_double(distance(metric, a, b)) << "\n";
    return ok;
}

int cmd_decompose(const RunConfig& c, std::ostream& out) {
    const auto [eta, theta] = to_units(io::read_events(c.events, c.horizon));
    json doc;
    doc["theta"] = theta;
    doc["discrepancy"] = discrepancy_norm(eta);
    if (c.what == "mmd") {
        json rows = json::array();
        for (const auto& iv : mmd_intervals(eta).intervals) {
            rows.push_back({{"a", iv.a}, {"b", iv.b}, {"first", iv.first}, {"last", iv.last}, {"sum", iv.partial_sum}});
        }
        doc["intervals"] = rows;
    } else if (c.what == "chain") {
        json stages = json::array();
        const auto chain = chain_decompose(eta);
        for (std::size_t k = 0; k < chain.stages.size(); ++k) {
            json s = dense_json(chain.stages[k]);
            s["k"] = k;
            stages.push_back(s);
        }
        doc["stages"] = stages;
    } else if (c.what == "pi") {
        doc["pi"] = dense_json(pi_map(eta));
    } else {
        throw DomainError("--what: expected mmd|chain|pi, got '" + c.what + "'");
    }
    emit(c.output, dump(doc), out);
    return ok;
}

int cmd_emdm(const RunConfig& c, std::ostream& out) {
    const EventMetric metric = build_metric(c);
    json doc;
    std::ostringstream csv;
    if (c.mode == "sweep") {
        const Signal f = io::read_signal(c.input);
        const auto thetas = theta_list(c, 1.0);
        const auto rep = emdm_sweep(f, metric, thetas);
        json rows = json::array();
        csv << "theta,value,stabilized,eps,events_at,events_above\n";
        for (const auto& r : rep.rows) {
            rows.push_back({{"theta", r.theta},
                            {"value", r.value},
                            {"stabilized", r.stabilized},
                            {"eps", r.eps},
                            {"events_at", r.events_at},
                            {"events_above", r.events_above}});
            csv << io::format_double(r.theta) << ',' << io::format_double(r.value) << ',' << (r.stabilized ? 1 : 0)
                << ',' << io::format_double(r.eps) << ',' << r.events_at << ',' << r.events_above << "\n";
        }
        doc = {{"mode", "sweep"},   {"metric", rep.metric},     {"lambda", rep.lambda},
               {"argmax_theta", rep.argmax_theta}, {"eps_grid", rep.eps_grid}, {"rows", rows}};
    } else if (c.mode == "characterize") {
        const std::vector<double> horizons = c.horizons.empty() ? std::vector<double>{10.0, 20.0, 40.0} : c.horizons;
        const std::vector<double> spacings = c.spacings.empty() ? std::vector<double>{0.5, 1.0} : c.spacings;
        const auto rep = emdm_characterize(metric, c.n_max, horizons, spacings);
        json rows = json::array();
        csv << "n,horizon,spacing,value,lower,upper\n";
        for (const auto& r : rep.growth) {
            rows.push_back({{"n", r.n},
                            {"horizon", r.horizon},
                            {"spacing", r.spacing},
                            {"value", r.value},
                            {"lower", r.lower},
                            {"upper", r.upper}});
            csv << r.n << ',' << io::format_double(r.horizon) << ',' << io::format_double(r.spacing) << ','
                << io::format_double(r.value) << ',' << csv_number(r.lower) << ',' << csv_number(r.upper) << "\n";
        }
        doc = {{"mode", "characterize"}, {"metric", rep.metric}, {"value", rep.value}, {"n_max", rep.n_max},
               {"growth", rows}};
    } else {
        throw DomainError("--mode: expected sweep|characterize, got '" + c.mode + "'");
    }
    if (!c.csv.empty()) {
        io::write_atomic(c.csv, csv.str());
    }
    emit(c.output, dump(doc), out);
    return ok;
}

int cmd_qi(const RunConfig& c, std::ostream& out) {
    const NormKind kind = parse_norm(c.norm);
    if (c.trials == 0) {
        throw DomainError("--trials must be positive");
    }
    const double horizon = c.horizon.value_or(1.0);
    const auto corpus = random_corpus(c.seed, c.trials, horizon);
    json reports = json::array();
    std::ostringstream csv;
    csv << "theta,index,dx,dy,lower,upper,violated\n";
    std::size_t violations = 0;
    for (const double theta : theta_list(c, 0.1)) {
        const QiReport r = qi_verify(corpus, Threshold(theta), kind);
        violations += r.violations;
        json env = json::array();
        for (const auto& p : r.envelope) {
            env.push_back({p.dx, p.rho1, p.rho2});
        }
        reports.push_back({{"theta", r.theta},
                           {"bounds_apply", r.bounds_apply},
                           {"violations", r.violations},
                           {"A", r.a},
                           {"B", r.b},
                           {"B_at_unit_A", r.b_at_unit_a},
                           {"C", r.c},
                           {"envelope", env}});
        for (const auto& t : r.rows) {
            csv << io::format_double(t.theta) << ',' << t.index << ',' << io::format_double(t.dx) << ','
                << io::format_double(t.dy) << ',' << csv_number(t.lower) << ',' << csv_number(t.upper) << ','
                << (t.violated ? 1 : 0) << "\n";
        }
    }
    json doc = {{"norm", std::string(norm_name(kind))},
                {"seed", c.seed},
                {"trials", c.trials},
                {"horizon", horizon},
                {"violations", violations},
                {"reports", reports}};
    if (!c.csv.empty()) {
        io::write_atomic(c.csv, csv.str());
    }
    emit(c.output, dump(doc), out);
    return violations > 0 ? assertion_failure : ok;
}

json condition_json(const ConditionResult& r) {
    json w = {{"family", r.witness.family},
              {"events", events_json(r.witness.sequence)},
              {"norm", r.witness.norm_value},
              {"value", r.witness.value}};
    if (r.witness.sweep) {
        const auto& s = *r.witness.sweep;
        w["sweep"] = {{"value", s.value}, {"first", s.first}, {"last", s.last}, {"m", s.m}, {"n", s.n}};
    }
    return {{"name", r.name}, {"holds", r.holds}, {"estimate", r.estimate}, {"ladder", r.ladder}, {"witness", w}};
}

int cmd_certify(const RunConfig& c, std::ostream& out) {
    FamilyConfig fc;
    fc.sizes = c.sizes;
    fc.seed = c.seed;
    fc.random_per_size = c.random_per_size;
    const auto rep = certify_norm(parse_norm(c.norm), fc);
    json doc = {{"norm", rep.norm},
                {"equivalent", rep.equivalent},
                {"verdict", rep.equivalent ? "EQUIVALENT" : "NOT"},
                {"sizes", fc.sizes},
                {"conditions", {condition_json(rep.alt), condition_json(rep.same_sign), condition_json(rep.sweep)}}};
    emit(c.output, dump(doc), out);
    return ok;
}

int cmd_probe(const RunConfig& c, std::ostream& out) {
    const Signal f = io::read_signal(c.input);
    const auto rep = left_continuity_probe(f, Threshold(c.theta.value_or(1.0)), c.steps);
    std::ostringstream csv;
    csv << "side,n,theta,k,t\n";
    auto steps = [&](const std::vector<ProbeStep>& v, const char* side) {
        json a = json::array();
        for (const auto& s : v) {
            a.push_back({{"n", s.n}, {"theta", s.theta}, {"count", s.times.size()}, {"times", s.times}});
            for (std::size_t k = 0; k < s.times.size(); ++k) {
                csv << side << ',' << s.n << ',' << io::format_double(s.theta) << ',' << k << ','
                    << io::format_double(s.times[k]) << "\n";
            }
        }
        return a;
    };
    json doc = {{"theta0", rep.theta0},
                {"reference_times", rep.reference_times},
                {"stabilized_at", rep.stabilized_at ? json(*rep.stabilized_at) : json(nullptr)},
                {"monotone", rep.monotone},
                {"from_below", rep.from_below},
                {"final_gap", rep.final_gap},
                {"converges", rep.converges},
                {"control_count", rep.control_count},
                {"control_drop", rep.control_drop}};
    doc["below"] = steps(rep.below, "below");
    doc["above"] = steps(rep.above, "above");
    if (!c.csv.empty()) {
        io::write_atomic(c.csv, csv.str());
    }
    emit(c.output, dump(doc), out);
    return ok;
}

int cmd_generate(const RunConfig& c, std::ostream& out) {
    const double horizon = c.horizon.value_or(1.0);
    Signal f = Signal::zero(1.0);
    if (c.kind == "ramp_plateau") {
        f = generate::ramp_plateau(horizon);
    } else if (c.kind == "sine_pwl") {
        f = generate::sine_pwl(horizon, c.resolution);
    } else if (c.kind == "random_walk") {
        f = generate::random_walk(c.seed, c.breaks, c.amplitude, horizon);
    } else if (c.kind == "local_max") {
        f = local_max_signal();
    } else {
        throw DomainError("--kind: expected ramp_plateau|sine_pwl|random_walk|local_max, got '" + c.kind + "'");
    }
    emit(c.output, io::signal_to_json(f), out);
    return ok;
}

void add_metric_options(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--alpha", c.alpha, "van Rossum / causal Schreiber decay rate")->check(CLI::NonNegativeNumber);
    cmd->add_option("--s", c.s, "Victor-Purpura shift cost per unit time")->check(CLI::NonNegativeNumber);
    cmd->add_option("--sigma", c.sigma, "Gaussian Schreiber kernel width")->check(CLI::PositiveNumber);
    cmd->add_option("--kernel", c.kernel, "Schreiber kernel: exp|gauss");
    cmd->add_option("--h-fn", c.h, "Schreiber distance: one_minus_s|arccos");
    cmd->add_option("--vp-mode", c.vp_mode, "Victor-Purpura signed extension: split|combined");
}

void add_theta(CLI::App* cmd, RunConfig& c) {
    cmd->add_option_function<double>(
           "--theta", [&c](const double& v) { c.theta = v; }, "threshold")
        ->check(CLI::PositiveNumber);
}

void add_horizon(CLI::App* cmd, RunConfig& c) {
    cmd->add_option_function<double>(
           "--horizon", [&c](const double& v) { c.horizon = v; }, "horizon T")
        ->check(CLI::PositiveNumber);
}

} // namespace

ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Send-on-delta sampling, event metrics and their analysis"};
    app.name("sodkit");
    app.require_subcommand(1);

    auto* sample = app.add_subcommand("sample", "Sample a signal into events");
    sample->add_option("--input", c.input, "signal JSON")->required();
    add_theta(sample, c);
    sample->add_option("--scheme", c.scheme, "sod|lc|if");
    sample->add_option("--out", c.output, "events CSV (stdout when omitted)");

    auto* norm_cmd = app.add_subcommand("norm", "Evaluate an event-sequence norm");
    norm_cmd->add_option("--events", c.events, "events CSV")->required();
    norm_cmd->add_option("--kind", c.norm, "D|A|M");
    norm_cmd->add_flag("--bruteforce", c.bruteforce, "O(n^2) discrepancy");
    add_horizon(norm_cmd, c);

    auto* dist = app.add_subcommand("distance", "Distance between two event sequences");
    dist->add_option("--a", c.events, "first events CSV")->required();
    dist->add_option("--b", c.events_b, "second events CSV")->required();
    dist->add_option("--metric", c.metric, "vr|schreiber|vp|D|A|M");
    add_metric_options(dist, c);
    add_horizon(dist, c);

    auto* dec = app.add_subcommand("decompose", "MMD intervals, chain decomposition or the Pi map");
    dec->add_option("--events", c.events, "events CSV")->required();
    dec->add_option("--what", c.what, "mmd|chain|pi");
    dec->add_option("--out", c.output, "report JSON");
    add_horizon(dec, c);

    auto* emdm = app.add_subcommand("emdm", "Discontinuity measure: per-signal sweep or characterization");
    emdm->add_option("--mode", c.mode, "sweep|characterize");
    emdm->add_option("--input", c.input, "signal JSON (sweep)");
    emdm->add_option("--metric", c.metric, "D|A|M|vr|vp|schreiber");
    add_theta(emdm, c);
    emdm->add_option("--thetas", c.thetas, "threshold grid")->delimiter(',')->check(CLI::PositiveNumber);
    emdm->add_option("--n-max", c.n_max, "largest alternating family (characterize)")->check(CLI::PositiveNumber);
    emdm->add_option("--horizons", c.horizons, "horizons (characterize)")->delimiter(',')->check(CLI::PositiveNumber);
    emdm->add_option("--spacings", c.spacings, "train spacings (characterize)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    emdm->add_option("--out", c.output, "report JSON");
    emdm->add_option("--csv", c.csv, "per-row CSV");
    add_metric_options(emdm, c);

    auto* qi = app.add_subcommand("qi-check", "Quasi-isometry campaign on random signal pairs");
    qi->add_option("--trials", c.trials, "pairs")->check(CLI::PositiveNumber);
    add_theta(qi, c);
    qi->add_option("--thetas", c.thetas, "threshold list")->delimiter(',')->check(CLI::PositiveNumber);
    qi->add_option("--norm", c.norm, "D|A|M");
    qi->add_option("--seed", c.seed, "corpus seed");
    add_horizon(qi, c);
    qi->add_option("--out", c.output, "report JSON");
    qi->add_option("--csv", c.csv, "per-trial CSV");

    auto* cert = app.add_subcommand("certify", "Check the norm-equivalence conditions");
    cert->add_option("--norm", c.norm, "D|A|M");
    cert->add_option("--sizes", c.sizes, "family size ladder")->delimiter(',');
    cert->add_option("--seed", c.seed, "seed of the random family");
    cert->add_option("--random-per-size", c.random_per_size, "random sequences per size");
    cert->add_option("--out", c.output, "report JSON");

    auto* probe = app.add_subcommand("probe-continuity", "Left-continuity probe in the threshold");
    probe->add_option("--input", c.input, "signal JSON")->required();
    add_theta(probe, c);
    probe->add_option("--steps", c.steps, "number of approximation steps")->check(CLI::Range(1, 60));
    probe->add_option("--out", c.output, "report JSON");
    probe->add_option("--csv", c.csv, "per-event CSV");

    auto* gen = app.add_subcommand("generate", "Write a generated signal");
    gen->add_option("--kind", c.kind, "ramp_plateau|sine_pwl|random_walk|local_max");
    add_horizon(gen, c);
    gen->add_option("--resolution", c.resolution, "sine_pwl points per period");
    gen->add_option("--seed", c.seed, "random_walk seed");
    gen->add_option("--breaks", c.breaks, "random_walk interior breakpoints");
    gen->add_option("--amplitude", c.amplitude, "random_walk step bound");
    gen->add_option("--out", c.output, "signal JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return {std::nullopt, code == 0 ? ok : validation_error};
    }
    c.command = app.get_subcommands().front()->get_name();
    return {c, ok};
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        if (c.command == "sample") {
            return cmd_sample(c, out);
        }
        if (c.command == "norm") {
            return cmd_norm(c, out);
        }
        if (c.command == "distance") {
            return cmd_distance(c, out);
        }
        if (c.command == "decompose") {
            return cmd_decompose(c, out);
        }
        if (c.command == "emdm") {
            return cmd_emdm(c, out);
        }
        if (c.command == "qi-check") {
            return cmd_qi(c, out);
        }
        if (c.command == "certify") {
            return cmd_certify(c, out);
        }
        if (c.command == "probe-continuity") {
            return cmd_probe(c, out);
        }
        if (c.command == "generate") {
            return cmd_generate(c, out);
        }
        err << "error: unknown command '" << c.command << "'\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return validation_error;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    auto parsed = parse_args(argc, argv, out, err);
    if (!parsed.config) {
        return parsed.exit_code;
    }
    return run(*parsed.config, out, err);
}

} // namespace sodkit::cli

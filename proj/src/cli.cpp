#include "gsds/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "gsds/continuous.hpp"
#include "gsds/dynamics.hpp"
#include "gsds/infer.hpp"
#include "gsds/io.hpp"
#include "gsds/translate.hpp"

namespace gsds::cli {

namespace {

/// Raised after the validation report has been written.
struct InvalidModel {};

struct Options {
    std::string model;
    std::string series;
    std::string csv;
    std::string thresholds;
    std::string rates;
    std::string state;
    std::string initial;
    std::string schedule;
    std::string display;
    std::string output;
    std::string json_out;
    std::string dot_out;
    std::string attractor_dot_out;
    std::string events_out;
    std::string preference = "sparsest";
    std::vector<std::string> members;
    std::size_t steps = 1;
    std::uint64_t limit = PortraitOptions{}.state_limit;
    int workers = 0;
    double t_end = 10.0;
    std::size_t max_events = HybridOptions{}.max_events;
    bool collapse = false;
    bool extend_last = false;
    bool json = false;
};

void emit(const std::string &path, const std::string &content, std::ostream &out) {
    if (path == "-") {
        out << content;
    } else {
        io::write_file(path, content);
    }
}

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> out;
    std::string cur;
    for (const char ch : text) {
        if (ch == ',' || ch == ' ' || ch == ';') {
            if (!cur.empty()) {
                out.push_back(cur);
            }
            cur.clear();
        } else if (ch != '(' && ch != ')' && ch != '[' && ch != ']') {
            cur += ch;
        }
    }
    if (!cur.empty()) {
        out.push_back(cur);
    }
    return out;
}

long long parse_integer(const std::string &token) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(token, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != token.size() || token.empty()) {
        throw Error("\"" + token + "\" is not an integer");
    }
    return v;
}

/// "0,1,2", "(0,1,2)", "0 1 2", or "012" for single-digit codes.
State parse_state(const std::string &text, const Field &field, std::size_t n, Encoding enc) {
    auto tokens = split_list(text);
    if (tokens.size() == 1 && n > 1 && tokens[0].size() == n &&
        std::all_of(tokens[0].begin(), tokens[0].end(), [](char c) { return c >= '0' && c <= '9'; })) {
        const std::string digits = tokens[0];
        tokens.clear();
        for (const char c : digits) {
            tokens.emplace_back(1, c);
        }
    }
    if (tokens.size() != n) {
        throw Error("state \"" + text + "\" needs " + std::to_string(n) + " values");
    }
    State s;
    for (const auto &t : tokens) {
        s.push_back(field.encode(parse_integer(t), enc));
    }
    return s;
}

std::vector<double> parse_reals(const std::string &text, std::size_t n) {
    std::vector<double> out;
    for (const auto &t : split_list(text)) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != t.size()) {
            throw Error("\"" + t + "\" is not a number");
        }
        out.push_back(v);
    }
    if (out.size() != n) {
        throw Error("expected " + std::to_string(n) + " initial concentrations");
    }
    return out;
}

Encoding parse_display(const std::string &name) {
    if (name == "balanced") {
        return Encoding::balanced;
    }
    if (name == "canonical") {
        return Encoding::canonical;
    }
    throw Error("display must be canonical or balanced");
}

/// Schedule entries are gene names, or 1-based positions when no gene has
/// that name.
Schedule parse_schedule(const std::string &text, const DependencyGraph &graph) {
    Schedule s;
    for (const auto &t : split_list(text)) {
        const auto &names = graph.vertices();
        if (std::find(names.begin(), names.end(), t) != names.end()) {
            s.word.push_back(graph.index_of(t));
            continue;
        }
        const long long k = parse_integer(t);
        if (k < 1 || static_cast<std::size_t>(k) > graph.size()) {
            throw Error("schedule entry \"" + t + "\" is not a gene");
        }
        s.word.push_back(static_cast<std::size_t>(k - 1));
    }
    return s;
}

GsdsModel load_model(const Options &o, std::ostream &err) {
    GsdsModel m = io::parse_model(io::read_file(o.model));
    if (!o.schedule.empty()) {
        m = m.with_schedule(parse_schedule(o.schedule, m.graph()));
    }
    if (!o.display.empty()) {
        m = m.with_display(parse_display(o.display));
    }
    const auto report = validate_model(m);
    if (!report.valid()) {
        err << report.to_string();
        throw InvalidModel{};
    }
    return m;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

int cmd_validate(const Options &o, std::ostream &out, std::ostream &err) {
    const auto m = load_model(o, err);
    out << "valid: " << m.size() << " genes, " << m.states().size() << " states, schedule length "
        << m.schedule().word.size() << "\n";
    return ok;
}

int cmd_simulate(const Options &o, std::ostream &out, std::ostream &err) {
    const auto m = load_model(o, err);
    const State x = parse_state(o.state, m.field(), m.size(), m.display());
    if (!m.states().contains(x)) {
        throw StateError("state " + format_state(m.field(), x, m.display()) + " is outside the state space");
    }
    const auto traj = trajectory(m, x, o.steps);
    if (o.json) {
        io::StateSeries s{m.field(), m.display(), m.graph().vertices(), traj};
        out << io::write_series(s);
    } else {
        for (const auto &s : traj) {
            out << format_state(m.field(), s, m.display()) << "\n";
        }
    }
    return ok;
}

int cmd_portrait(const Options &o, std::ostream &out, std::ostream &err) {
    const auto m = load_model(o, err);
    const auto p = phase_portrait(m, PortraitOptions{o.limit, o.workers});
    const auto sizes = p.basin_sizes();
    out << "states: " << p.size() << "\n";
    out << "attractors: " << p.attractors().size() << "\n";
    for (std::size_t a = 0; a < p.attractors().size(); ++a) {
        const auto &cycle = p.attractors()[a];
        out << "  #" << a << " length " << cycle.size() << ", basin " << sizes[a] << ":";
        for (const auto s : cycle) {
            out << " " << format_state(m.field(), p.state(s), m.display());
        }
        out << "\n";
    }
    out << "max transient: " << p.max_transient() << "\n";
    if (!o.json_out.empty()) {
        emit(o.json_out, portrait_json(p, m.graph().vertices(), m.display()), out);
    }
    if (!o.dot_out.empty()) {
        emit(o.dot_out, portrait_dot(p, m.display()), out);
    }
    if (!o.attractor_dot_out.empty()) {
        emit(o.attractor_dot_out, attractor_dot(p, m.display()), out);
    }
    return ok;
}

struct Discretized {
    Field field{2};
    Encoding encoding = Encoding::canonical;
    std::vector<std::string> genes;
    std::vector<State> states;
};

Discretized discretized_csv(const Options &o) {
    if (o.thresholds.empty()) {
        throw Error("--thresholds is required with CSV input");
    }
    const auto series = io::parse_csv(io::read_file(o.csv));
    const auto th = io::parse_thresholds(io::read_file(o.thresholds));
    if (th.map.size() != series.genes.size()) {
        throw ArityError("thresholds cover " + std::to_string(th.map.size()) + " genes, CSV has " +
                         std::to_string(series.genes.size()));
    }
    return {th.map.field(), th.encoding, series.genes, discretize_series(th.map, series.samples, o.collapse)};
}

int cmd_infer(const Options &o, std::ostream &out, std::ostream &) {
    Discretized d;
    if (!o.series.empty()) {
        const auto s = io::parse_series(io::read_file(o.series));
        d = {s.field, s.encoding, s.genes, s.states};
    } else if (!o.csv.empty()) {
        d = discretized_csv(o);
    } else {
        throw Error("infer needs a series file or --csv with --thresholds");
    }
    if (d.states.size() < 2) {
        throw Error("inference needs a series of at least two states");
    }
    if (d.encoding == Encoding::balanced && !d.field.supports_balanced()) {
        d.encoding = Encoding::canonical;
    }
    InferenceOptions opts;
    if (o.preference == "canonical") {
        opts.preference = Preference::canonical;
    } else if (o.preference != "sparsest") {
        throw Error("preference must be sparsest or canonical");
    }
    opts.names = d.genes;
    opts.display = d.encoding;
    const auto data = TransitionData::from_series(d.field, d.states);
    const auto result = infer_network(data, opts);
    const auto &names = d.genes;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto &c = result.coordinates[i];
        out << names[i] << ": " << c.polynomial.render(d.encoding) << "  (dimension " << c.dimension << ", inputs";
        if (c.inputs.empty()) {
            out << " none";
        }
        for (const auto j : c.inputs) {
            out << " " << names[j];
        }
        out << ")\n";
    }
    out << "edges:";
    if (result.model.graph().edges().empty()) {
        out << " none";
    }
    for (const auto &[from, to] : result.model.graph().edges()) {
        out << " " << names[from] << "->" << names[to];
    }
    out << "\n";
    bool all_members = true;
    if (!o.members.empty()) {
        if (o.members.size() != names.size()) {
            throw ArityError("--member needs one polynomial per gene");
        }
        for (std::size_t i = 0; i < names.size(); ++i) {
            const SolutionSpace space(data, i);
            const bool member = space.contains(parse_poly(o.members[i], names.size(), d.field));
            all_members = all_members && member;
            out << "member " << names[i] << ": " << (member ? "yes" : "no") << "\n";
        }
    }
    if (!o.output.empty()) {
        emit(o.output, io::write_model(result.model), out);
    }
    return all_members ? ok : incompatible;
}

int cmd_fit(const Options &o, std::ostream &out, std::ostream &) {
    const auto series = io::parse_csv(io::read_file(o.csv));
    const auto mode = o.extend_last ? OutsideMode::extend_last : OutsideMode::zero;
    std::vector<SectionalLinear> fits;
    for (std::size_t g = 0; g < series.genes.size(); ++g) {
        std::vector<double> values;
        for (const auto &row : series.samples) {
            values.push_back(row[g]);
        }
        fits.push_back(fit_from_samples(series.times, values, mode));
        out << series.genes[g] << ":";
        const auto &bp = fits.back().breakpoints();
        const auto &segs = fits.back().segments();
        for (std::size_t k = 0; k < segs.size(); ++k) {
            out << " [" << fmt(bp[k]) << "," << fmt(bp[k + 1]) << "] " << fmt(segs[k].slope) << "*t + "
                << fmt(segs[k].intercept) << (k + 1 < segs.size() ? ";" : "");
        }
        out << "\n";
    }
    if (!o.json_out.empty()) {
        nlohmann::ordered_json j;
        j["format_version"] = io::format_version;
        j["outside"] = o.extend_last ? "extend_last" : "zero";
        nlohmann::ordered_json genes = nlohmann::ordered_json::array();
        for (std::size_t g = 0; g < fits.size(); ++g) {
            nlohmann::ordered_json segs = nlohmann::ordered_json::array();
            for (const auto &s : fits[g].segments()) {
                segs.push_back({{"slope", s.slope}, {"intercept", s.intercept}});
            }
            genes.push_back({{"name", series.genes[g]}, {"breakpoints", fits[g].breakpoints()}, {"segments", segs}});
        }
        j["genes"] = std::move(genes);
        emit(o.json_out, j.dump(2) + "\n", out);
    }
    return ok;
}

int cmd_discretize(const Options &o, std::ostream &out, std::ostream &) {
    const auto d = discretized_csv(o);
    for (const auto &s : d.states) {
        out << format_state(d.field, s, d.encoding) << "\n";
    }
    if (!o.output.empty()) {
        emit(o.output, io::write_series({d.field, d.encoding, d.genes, d.states}), out);
    }
    return ok;
}

int cmd_check(const Options &o, std::ostream &out, std::ostream &err) {
    const auto m = load_model(o, err);
    if (o.thresholds.empty() || o.csv.empty()) {
        throw Error("check needs --csv and --thresholds");
    }
    const auto series = io::parse_csv(io::read_file(o.csv));
    const auto th = io::parse_thresholds(io::read_file(o.thresholds));
    if (th.map.field() != m.field()) {
        throw FieldMismatchError("thresholds and model use different fields");
    }
    const auto result = check_translated(global_map(m), series.samples, th.map);
    out << result.passed << "/" << result.pairs << " pairs translated\n";
    for (const auto &c : result.counterexamples) {
        out << "pair " << c.pair_index << " (t=" << fmt(series.times[c.pair_index]) << " -> t="
            << fmt(series.times[c.pair_index + 1]) << "): observed " << format_state(m.field(), c.observed, m.display())
            << ", predicted " << format_state(m.field(), c.predicted, m.display()) << "\n";
    }
    return result.compatible() ? ok : incompatible;
}

int cmd_hybrid(const Options &o, std::ostream &out, std::ostream &err) {
    const auto m = load_model(o, err);
    if (o.rates.empty() || o.thresholds.empty() || o.initial.empty()) {
        throw Error("hybrid needs --rates, --thresholds and --initial");
    }
    const auto rates = io::parse_rates(io::read_file(o.rates));
    const auto th = io::parse_thresholds(io::read_file(o.thresholds));
    const auto c0 = parse_reals(o.initial, m.size());
    const auto r = hybrid_simulate(m, rates, th.map, c0, o.t_end, HybridOptions{o.max_events});
    const auto &genes = m.graph().vertices();
    for (std::size_t k = 0; k < r.interval_states.size(); ++k) {
        out << "[" << fmt(r.times[k]) << ", " << fmt(r.times[k + 1]) << "] "
            << format_state(m.field(), r.interval_states[k], m.display()) << "\n";
    }
    out << "events: " << r.events.size() << "\n";
    if (!o.output.empty()) {
        emit(o.output, io::trajectory_csv(r, genes), out);
    }
    if (!o.events_out.empty()) {
        emit(o.events_out, io::events_csv(r, genes, m.field(), m.display()), out);
    }
    if (!o.json_out.empty()) {
        emit(o.json_out, io::hybrid_json(r, genes, m.field(), m.display()), out);
    }
    return ok;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Genetic sequential dynamical systems over finite fields", "gsds"};
    app.require_subcommand(1);
    Options o;

    auto model_commands = [&](CLI::App *sub) {
        sub->add_option("model", o.model, "model JSON file")->required()->check(CLI::ExistingFile);
        sub->add_option("--schedule", o.schedule, "override the schedule word (gene names or 1-based positions)");
        sub->add_option("--display", o.display, "override the display encoding")
            ->check(CLI::IsMember({"canonical", "balanced"}));
    };

    auto *validate = app.add_subcommand("validate", "check locality, range and schedule of a model");
    model_commands(validate);

    auto *simulate = app.add_subcommand("simulate", "iterate the global update map");
    model_commands(simulate);
    simulate->add_option("--state", o.state, "initial state, in the display encoding")->required();
    simulate->add_option("--steps", o.steps, "number of steps T");
    simulate->add_flag("--json", o.json, "write the trajectory as a series JSON document");

    auto *portrait = app.add_subcommand("portrait", "attractors, basins and transients of the global map");
    model_commands(portrait);
    portrait->add_option("--json", o.json_out, "JSON report file ('-' for standard output)");
    portrait->add_option("--dot", o.dot_out, "DOT transition digraph file ('-' for standard output)");
    portrait->add_option("--attractor-dot", o.attractor_dot_out, "DOT attractor summary file");
    portrait->add_option("--limit", o.limit, "maximum number of states");
    portrait->add_option("--workers", o.workers, "worker threads (0: all available)")->check(CLI::NonNegativeNumber);

    auto *infer = app.add_subcommand("infer", "infer a polynomial network from a state series");
    infer->add_option("series", o.series, "series JSON file")->check(CLI::ExistingFile);
    infer->add_option("--csv", o.csv, "concentration CSV, discretized with --thresholds")->check(CLI::ExistingFile);
    infer->add_option("--thresholds", o.thresholds, "thresholds JSON file")->check(CLI::ExistingFile);
    infer->add_option("--preference", o.preference, "sparsest or canonical")
        ->check(CLI::IsMember({"sparsest", "canonical"}));
    infer->add_option("--member", o.members, "polynomial to test for membership, one per gene in order");
    infer->add_flag("--collapse", o.collapse, "merge consecutive repeated states");
    infer->add_option("-o,--output", o.output, "write the inferred model here");

    auto *fit = app.add_subcommand("fit", "sectional linear fit through CSV samples");
    fit->add_option("csv", o.csv, "concentration CSV")->required()->check(CLI::ExistingFile);
    fit->add_flag("--extend-last", o.extend_last, "continue the last segment past the final sample");
    fit->add_option("--json", o.json_out, "write the fit as JSON");

    auto *discretize_cmd = app.add_subcommand("discretize", "map concentrations to discrete states");
    discretize_cmd->add_option("csv", o.csv, "concentration CSV")->required()->check(CLI::ExistingFile);
    discretize_cmd->add_option("--thresholds", o.thresholds, "thresholds JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    discretize_cmd->add_flag("--collapse", o.collapse, "merge consecutive repeated states");
    discretize_cmd->add_option("-o,--output", o.output, "write a series JSON file");

    auto *check = app.add_subcommand("check", "test that thresholds translate samples into the model's map");
    model_commands(check);
    check->add_option("--csv", o.csv, "concentration CSV")->required()->check(CLI::ExistingFile);
    check->add_option("--thresholds", o.thresholds, "thresholds JSON file")->required()->check(CLI::ExistingFile);

    auto *hybrid = app.add_subcommand("hybrid", "event-driven piecewise linear simulation");
    model_commands(hybrid);
    hybrid->add_option("--rates", o.rates, "rates JSON file")->required()->check(CLI::ExistingFile);
    hybrid->add_option("--thresholds", o.thresholds, "thresholds JSON file")->required()->check(CLI::ExistingFile);
    hybrid->add_option("--initial", o.initial, "initial concentrations, comma separated")->required();
    hybrid->add_option("--t-end", o.t_end, "simulation horizon");
    hybrid->add_option("--max-events", o.max_events, "abort after this many events");
    hybrid->add_option("-o,--output", o.output, "trajectory CSV at event times");
    hybrid->add_option("--events", o.events_out, "event log CSV");
    hybrid->add_option("--json", o.json_out, "full result as JSON");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : failure;
    }

    try {
        if (validate->parsed()) {
            return cmd_validate(o, out, err);
        }
        if (simulate->parsed()) {
            return cmd_simulate(o, out, err);
        }
        if (portrait->parsed()) {
            return cmd_portrait(o, out, err);
        }
        if (infer->parsed()) {
            return cmd_infer(o, out, err);
        }
        if (fit->parsed()) {
            return cmd_fit(o, out, err);
        }
        if (discretize_cmd->parsed()) {
            return cmd_discretize(o, out, err);
        }
        if (check->parsed()) {
            return cmd_check(o, out, err);
        }
        if (hybrid->parsed()) {
            return cmd_hybrid(o, out, err);
        }
    } catch (const InvalidModel &) {
        return invalid_model;
    } catch (const ContradictoryDataError &e) {
        err << "contradictory data: " << e.what() << "\n";
        return contradictory_data;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return failure;
    }
    return failure;
}

} // namespace gsds::cli

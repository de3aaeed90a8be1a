#include "gsds/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "gsds/dynamics.hpp"
#include "json.hpp"

namespace gsds::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
}

void require_version(const json &j) {
    if (!j.is_object()) {
        throw FormatError("expected a JSON object");
    }
    if (!j.contains("format_version")) {
        throw FormatError("missing format_version");
    }
    if (j["format_version"] != format_version) {
        throw FormatError("unsupported format_version " + j["format_version"].dump());
    }
}

template <class T> T get(const json &j, const char *key) {
    if (!j.contains(key)) {
        throw FormatError(std::string("missing field \"") + key + "\"");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &) {
        throw FormatError(std::string("field \"") + key + "\" has the wrong type");
    }
}

Encoding parse_encoding(const json &j, const char *key) {
    if (!j.contains(key)) {
        return Encoding::canonical;
    }
    const auto name = get<std::string>(j, key);
    if (name == "canonical") {
        return Encoding::canonical;
    }
    if (name == "balanced") {
        return Encoding::balanced;
    }
    throw FormatError("unknown encoding \"" + name + "\"");
}

const char *encoding_name(Encoding e) { return e == Encoding::balanced ? "balanced" : "canonical"; }

Field field_of(const json &j) {
    const auto q = get<long long>(j, "field");
    if (q < 2 || q > 257) {
        throw FormatError("unsupported field order " + std::to_string(q));
    }
    return Field(static_cast<unsigned>(q));
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

std::vector<long long> decoded(const Field &field, const State &s, Encoding enc) {
    std::vector<long long> out;
    for (const auto v : s) {
        out.push_back(field.decode(v, enc));
    }
    return out;
}

State encoded(const Field &field, const std::vector<long long> &values, Encoding enc) {
    State s;
    for (const auto v : values) {
        s.push_back(field.encode(v, enc));
    }
    return s;
}

} // namespace

GsdsModel parse_model(std::string_view text) {
    const json j = parse_json(text);
    require_version(j);
    const Field field = field_of(j);
    const auto genes = get<std::vector<std::string>>(j, "genes");
    if (genes.empty()) {
        throw FormatError("model has no genes");
    }
    DependencyGraph graph(genes);
    const std::size_t n = genes.size();

    std::vector<std::vector<Elem>> subsets(n, field.elements());
    if (j.contains("states")) {
        const auto &st = j["states"];
        auto read_subset = [&](const json &arr, std::size_t g) {
            std::vector<Elem> s;
            for (const auto &v : arr) {
                if (!v.is_number_integer() || !field.contains(v.get<long long>())) {
                    throw FormatError("state value of gene " + genes[g] + " is not a canonical code");
                }
                s.push_back(static_cast<Elem>(v.get<long long>()));
            }
            if (s.empty()) {
                throw FormatError("state set of gene " + genes[g] + " is empty");
            }
            subsets[g] = std::move(s);
        };
        if (st.is_array()) {
            if (st.size() != n) {
                throw FormatError("states lists " + std::to_string(st.size()) + " genes");
            }
            for (std::size_t g = 0; g < n; ++g) {
                read_subset(st[g], g);
            }
        } else if (st.is_object()) {
            for (const auto &[name, arr] : st.items()) {
                read_subset(arr, graph.index_of(name));
            }
        } else {
            throw FormatError("states must be an object or an array");
        }
    }

    if (j.contains("edges")) {
        for (const auto &e : j["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
                throw FormatError("edges must be [from, to] name pairs");
            }
            graph.add_edge(e[0].get<std::string>(), e[1].get<std::string>());
        }
    }

    const auto locals_json = get<std::map<std::string, std::string>>(j, "locals");
    std::vector<Polynomial> locals;
    for (const auto &g : genes) {
        const auto it = locals_json.find(g);
        if (it == locals_json.end()) {
            throw ModelError("no local function for gene " + g);
        }
        locals.push_back(parse_poly(it->second, n, field));
    }
    for (const auto &[name, _] : locals_json) {
        (void)graph.index_of(name);
    }

    Schedule schedule;
    if (j.contains("schedule")) {
        for (const auto &name : get<std::vector<std::string>>(j, "schedule")) {
            schedule.word.push_back(graph.index_of(name));
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            schedule.word.push_back(i);
        }
    }

    UpdateMode mode = UpdateMode::sequential;
    if (j.contains("update")) {
        const auto u = get<std::string>(j, "update");
        if (u == "parallel") {
            mode = UpdateMode::parallel;
        } else if (u != "sequential") {
            throw FormatError("unknown update mode \"" + u + "\"");
        }
    }
    return {std::move(graph), make_state_space(field, std::move(subsets)), std::move(locals), std::move(schedule),
            mode, parse_encoding(j, "display")};
}

std::string write_model(const GsdsModel &m) {
    const auto &names = m.graph().vertices();
    ordered_json j;
    j["format_version"] = format_version;
    j["field"] = m.field().order();
    j["genes"] = names;
    if (!m.states().is_full()) {
        ordered_json st;
        for (std::size_t g = 0; g < names.size(); ++g) {
            st[names[g]] = m.states().factors()[g];
        }
        j["states"] = std::move(st);
    }
    ordered_json edges = ordered_json::array();
    for (const auto &[from, to] : m.graph().edges()) {
        edges.push_back({names[from], names[to]});
    }
    j["edges"] = std::move(edges);
    ordered_json locals;
    for (std::size_t g = 0; g < names.size(); ++g) {
        locals[names[g]] = m.locals()[g].render(m.display());
    }
    j["locals"] = std::move(locals);
    ordered_json schedule = ordered_json::array();
    for (const auto v : m.schedule().word) {
        schedule.push_back(names.at(v));
    }
    j["schedule"] = std::move(schedule);
    j["display"] = encoding_name(m.display());
    j["update"] = m.mode() == UpdateMode::parallel ? "parallel" : "sequential";
    return j.dump(2) + "\n";
}

StateSeries parse_series(std::string_view text) {
    const json j = parse_json(text);
    require_version(j);
    StateSeries s;
    s.field = field_of(j);
    s.encoding = parse_encoding(j, "encoding");
    s.genes = get<std::vector<std::string>>(j, "genes");
    for (const auto &row : get<std::vector<std::vector<long long>>>(j, "states")) {
        if (row.size() != s.genes.size()) {
            throw FormatError("state " + std::to_string(s.states.size()) + " does not have " +
                              std::to_string(s.genes.size()) + " entries");
        }
        s.states.push_back(encoded(s.field, row, s.encoding));
    }
    return s;
}

std::string write_series(const StateSeries &s) {
    ordered_json j;
    j["format_version"] = format_version;
    j["field"] = s.field.order();
    j["encoding"] = encoding_name(s.encoding);
    j["genes"] = s.genes;
    ordered_json states = ordered_json::array();
    for (const auto &st : s.states) {
        states.push_back(decoded(s.field, st, s.encoding));
    }
    j["states"] = std::move(states);
    return j.dump(2) + "\n";
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) {
            return out;
        }
        start = comma + 1;
    }
}

double parse_number(std::string_view cell, std::size_t line) {
    double v = 0;
    const auto *first = cell.data();
    if (!cell.empty() && cell.front() == '+') {
        ++first;
    }
    const auto res = std::from_chars(first, cell.data() + cell.size(), v);
    if (cell.empty() || res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
        throw FormatError("line " + std::to_string(line) + ": \"" + std::string(cell) + "\" is not a number");
    }
    return v;
}

} // namespace

TimeSeries parse_csv(std::string_view text) {
    TimeSeries s;
    bool header = true;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const auto line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto cells = split(line);
        if (header) {
            if (cells.size() < 2 || cells.front() != "t") {
                throw FormatError("CSV header must be t,g1,...,gn");
            }
            for (std::size_t k = 1; k < cells.size(); ++k) {
                s.genes.emplace_back(cells[k]);
            }
            header = false;
            continue;
        }
        if (cells.size() != s.genes.size() + 1) {
            throw FormatError("line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                              " columns, expected " + std::to_string(s.genes.size() + 1));
        }
        s.times.push_back(parse_number(cells[0], line_no));
        Concentrations row;
        for (std::size_t k = 1; k < cells.size(); ++k) {
            row.push_back(parse_number(cells[k], line_no));
        }
        s.samples.push_back(std::move(row));
    }
    if (header) {
        throw FormatError("CSV is empty");
    }
    return s;
}

std::string write_csv(const TimeSeries &s) {
    std::string out = "t";
    for (const auto &g : s.genes) {
        out += "," + g;
    }
    out += "\n";
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        out += format_double(s.times[k]);
        for (const auto v : s.samples[k]) {
            out += "," + format_double(v);
        }
        out += "\n";
    }
    return out;
}

ThresholdFile parse_thresholds(std::string_view text) {
    const json j = parse_json(text);
    require_version(j);
    const Field field = field_of(j);
    const Encoding enc = parse_encoding(j, "encoding");
    const double eps = j.contains("epsilon") ? get<double>(j, "epsilon") : ThresholdMap::default_epsilon;
    std::vector<std::string> names;
    std::vector<GeneThresholds> genes;
    if (!j.contains("genes") || !j["genes"].is_array()) {
        throw FormatError("thresholds need a \"genes\" array");
    }
    for (const auto &g : j["genes"]) {
        names.push_back(get<std::string>(g, "name"));
        GeneThresholds gt;
        if (!g.contains("thresholds") || !g["thresholds"].is_array()) {
            throw FormatError("gene " + names.back() + " needs a \"thresholds\" array");
        }
        for (const auto &t : g["thresholds"]) {
            Threshold th{get<double>(t, "threshold"), field.encode(get<long long>(t, "below_level"), enc), {}};
            if (t.contains("equal_level")) {
                th.equal = field.encode(get<long long>(t, "equal_level"), enc);
            }
            gt.thresholds.push_back(th);
        }
        gt.top = field.encode(get<long long>(g, "top_level"), enc);
        genes.push_back(std::move(gt));
    }
    return {std::move(names), ThresholdMap(field, std::move(genes), eps), enc};
}

std::string write_thresholds(const ThresholdMap &delta, const std::vector<std::string> &genes, Encoding encoding) {
    const Field &f = delta.field();
    ordered_json j;
    j["format_version"] = format_version;
    j["field"] = f.order();
    j["encoding"] = encoding_name(encoding);
    j["epsilon"] = delta.epsilon();
    ordered_json arr = ordered_json::array();
    for (std::size_t g = 0; g < delta.size(); ++g) {
        ordered_json entry;
        entry["name"] = g < genes.size() ? genes[g] : "g" + std::to_string(g + 1);
        ordered_json ts = ordered_json::array();
        for (const auto &t : delta.genes()[g].thresholds) {
            ordered_json th;
            th["threshold"] = t.value;
            th["below_level"] = f.decode(t.below, encoding);
            if (t.equal) {
                th["equal_level"] = f.decode(*t.equal, encoding);
            }
            ts.push_back(std::move(th));
        }
        entry["thresholds"] = std::move(ts);
        entry["top_level"] = f.decode(delta.genes()[g].top, encoding);
        arr.push_back(std::move(entry));
    }
    j["genes"] = std::move(arr);
    return j.dump(2) + "\n";
}

RatePolicy parse_rates(std::string_view text) {
    const json j = parse_json(text);
    require_version(j);
    const Field field = field_of(j);
    const Encoding enc = parse_encoding(j, "encoding");
    const bool floor = j.contains("floor_at_zero") ? get<bool>(j, "floor_at_zero") : true;
    if (!j.contains("genes") || !j["genes"].is_array()) {
        throw FormatError("rates need a \"genes\" array");
    }
    std::vector<std::vector<std::optional<double>>> table;
    for (const auto &g : j["genes"]) {
        std::vector<std::optional<double>> row(field.order());
        for (const auto &[key, slope] : get<std::map<std::string, double>>(g, "rates")) {
            long long level = 0;
            const auto res = std::from_chars(key.data(), key.data() + key.size(), level);
            if (res.ec != std::errc{} || res.ptr != key.data() + key.size()) {
                throw FormatError("rate level \"" + key + "\" is not an integer");
            }
            row[field.encode(level, enc)] = slope;
        }
        table.push_back(std::move(row));
    }
    return {field, std::move(table), floor};
}

std::string trajectory_csv(const HybridResult &r, const std::vector<std::string> &genes) {
    TimeSeries s;
    s.genes = genes;
    s.times = r.times;
    for (const double t : r.times) {
        s.samples.push_back(r.at(t));
    }
    return write_csv(s);
}

std::string events_csv(const HybridResult &r, const std::vector<std::string> &genes, const Field &field,
                       Encoding display) {
    std::string out = "time,gene,kind,threshold,before,after\n";
    for (const auto &e : r.events) {
        out += format_double(e.time) + "," + genes.at(e.gene) + "," + to_string(e.kind) + "," +
               format_double(e.threshold) + ",\"" + format_state(field, e.before, display) + "\",\"" +
               format_state(field, e.after, display) + "\"\n";
    }
    return out;
}

std::string hybrid_json(const HybridResult &r, const std::vector<std::string> &genes, const Field &field,
                        Encoding display) {
    ordered_json j;
    j["format_version"] = format_version;
    j["genes"] = genes;
    j["times"] = r.times;
    ordered_json intervals = ordered_json::array();
    for (std::size_t k = 0; k < r.interval_states.size(); ++k) {
        ordered_json iv;
        iv["start"] = r.times[k];
        iv["end"] = r.times[k + 1];
        iv["state"] = decoded(field, r.interval_states[k], display);
        intervals.push_back(std::move(iv));
    }
    j["intervals"] = std::move(intervals);
    ordered_json events = ordered_json::array();
    for (const auto &e : r.events) {
        ordered_json ev;
        ev["time"] = e.time;
        ev["gene"] = genes.at(e.gene);
        ev["kind"] = to_string(e.kind);
        ev["threshold"] = e.threshold;
        ev["before"] = decoded(field, e.before, display);
        ev["after"] = decoded(field, e.after, display);
        events.push_back(std::move(ev));
    }
    j["events"] = std::move(events);
    ordered_json traj = ordered_json::array();
    for (std::size_t g = 0; g < r.trajectories.size(); ++g) {
        ordered_json segs = ordered_json::array();
        for (const auto &s : r.trajectories[g].segments()) {
            segs.push_back({{"slope", s.slope}, {"intercept", s.intercept}});
        }
        traj.push_back({{"gene", genes.at(g)}, {"breakpoints", r.trajectories[g].breakpoints()}, {"segments", segs}});
    }
    j["trajectories"] = std::move(traj);
    return j.dump(2) + "\n";
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string &path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path);
    }
    out << content;
    if (!out) {
        throw Error("failed writing " + path);
    }
}

} // namespace gsds::io

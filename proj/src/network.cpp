#include "gsds/network.hpp"

#include <algorithm>
#include <sstream>

namespace gsds {

StateSpace make_state_space(const Field &field, std::vector<std::vector<Elem>> subsets) {
    for (auto &s : subsets) {
        std::sort(s.begin(), s.end());
    }
    return {field, std::move(subsets)};
}

DependencyGraph::DependencyGraph(std::vector<std::string> vertices) : vertices_(std::move(vertices)) {
    std::vector<std::string> sorted = vertices_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ModelError("duplicate gene name");
    }
}

std::size_t DependencyGraph::index_of(const std::string &name) const {
    const auto it = std::find(vertices_.begin(), vertices_.end(), name);
    if (it == vertices_.end()) {
        throw ModelError("unknown gene '" + name + "'");
    }
    return static_cast<std::size_t>(it - vertices_.begin());
}

void DependencyGraph::add_edge(std::size_t from, std::size_t to) {
    if (from >= vertices_.size() || to >= vertices_.size()) {
        throw ModelError("edge endpoint is not a declared vertex");
    }
    edges_.emplace(from, to);
}

void DependencyGraph::add_edge(const std::string &from, const std::string &to) {
    add_edge(index_of(from), index_of(to));
}

bool DependencyGraph::has_edge(std::size_t from, std::size_t to) const { return edges_.contains({from, to}); }

std::vector<std::size_t> DependencyGraph::neighborhood(std::size_t a) const {
    std::set<std::size_t> n{a};
    for (const auto &[from, to] : edges_) {
        if (from == a) {
            n.insert(to);
        }
        if (to == a) {
            n.insert(from);
        }
    }
    return {n.begin(), n.end()};
}

GsdsModel::GsdsModel(DependencyGraph graph, StateSpace states, std::vector<Polynomial> locals, Schedule schedule,
                     UpdateMode mode, Encoding display)
    : graph_(std::move(graph)), states_(std::move(states)), locals_(std::move(locals)),
      schedule_(std::move(schedule)), mode_(mode), display_(display) {
    const std::size_t n = graph_.size();
    if (states_.n_vars() != n) {
        throw ModelError("state space has " + std::to_string(states_.n_vars()) + " genes, graph has " +
                         std::to_string(n));
    }
    if (locals_.size() != n) {
        throw ModelError("expected exactly one local function per gene (" + std::to_string(n) + "), got " +
                         std::to_string(locals_.size()));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (locals_[i].field() != states_.field()) {
            throw ModelError("local function of gene " + graph_.vertices()[i] + " is over a different field");
        }
        if (locals_[i].n_vars() != n) {
            throw ModelError("local function of gene " + graph_.vertices()[i] + " has wrong arity");
        }
    }
    if (display_ == Encoding::balanced && !states_.field().supports_balanced()) {
        throw ModelError("balanced display needs an odd prime field");
    }
}

GsdsModel GsdsModel::with_schedule(Schedule schedule) const {
    GsdsModel copy = *this;
    copy.schedule_ = std::move(schedule);
    return copy;
}

GsdsModel GsdsModel::with_display(Encoding display) const {
    return {graph_, states_, locals_, schedule_, mode_, display};
}

std::string ValidationReport::to_string() const {
    if (violations.empty()) {
        return "valid\n";
    }
    std::ostringstream os;
    for (const auto &v : violations) {
        switch (v.kind) {
        case Violation::Kind::locality:
            os << "locality";
            break;
        case Violation::Kind::range:
            os << "range";
            break;
        case Violation::Kind::schedule:
            os << "schedule";
            break;
        }
        os << ": " << v.detail << '\n';
    }
    return os.str();
}

namespace {

std::string render_state(const Field &f, std::span<const Elem> s, Encoding enc) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += std::to_string(f.decode(s[i], enc));
    }
    return out + ")";
}

} // namespace

ValidationReport validate_model(const GsdsModel &m) {
    ValidationReport report;
    const auto &names = m.graph().vertices();
    const std::size_t n = m.size();
    for (std::size_t pos = 0; pos < m.schedule().word.size(); ++pos) {
        if (m.schedule().word[pos] >= n) {
            report.violations.push_back({Violation::Kind::schedule, pos,
                                         "schedule entry " + std::to_string(pos + 1) +
                                             " references unknown vertex " + std::to_string(m.schedule().word[pos])});
        }
    }
    const auto &space = m.states();
    const bool full = space.is_full();
    for (std::size_t i = 0; i < n; ++i) {
        const auto &poly = m.locals()[i];
        const auto deps = support_vars(poly, space);
        const auto hood = m.graph().neighborhood(i);
        for (const auto j : deps) {
            if (!std::binary_search(hood.begin(), hood.end(), j)) {
                report.violations.push_back({Violation::Kind::locality, i,
                                             "local function of " + names[i] + " depends on " + names[j] +
                                                 ", which is outside its 1-neighborhood"});
            }
        }
        if (full) {
            continue;
        }
        const CompiledPoly kernel(poly);
        const auto &allowed = space.factors()[i];
        State x(n);
        for (std::uint64_t k = 0; k < space.size(); ++k) {
            space.point(k, x);
            const Elem v = kernel.eval(x);
            if (!std::binary_search(allowed.begin(), allowed.end(), v)) {
                report.violations.push_back(
                    {Violation::Kind::range, i,
                     "local function of " + names[i] + " takes value " +
                         std::to_string(m.field().decode(v, m.display())) + " outside its state set at " +
                         render_state(m.field(), x, m.display())});
                break;
            }
        }
    }
    return report;
}

CompiledPoly::CompiledPoly(const Polynomial &p) : order_(p.field().order()), field_(p.field()) {
    const unsigned q = order_;
    pow_table_.resize(static_cast<std::size_t>(q) * q);
    for (unsigned v = 0; v < q; ++v) {
        for (unsigned e = 0; e < q; ++e) {
            pow_table_[static_cast<std::size_t>(v) * q + e] = field_.pow(static_cast<Elem>(v), e);
        }
    }
    offsets_.push_back(0);
    for (const auto &[exps, c] : p.terms()) {
        coeffs_.push_back(c);
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] != 0) {
                factors_.push_back({static_cast<std::uint32_t>(i), exps[i]});
            }
        }
        offsets_.push_back(static_cast<std::uint32_t>(factors_.size()));
    }
}

Elem CompiledPoly::eval(std::span<const Elem> x) const noexcept {
    Elem acc = 0;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        Elem term = coeffs_[k];
        for (std::uint32_t f = offsets_[k]; f < offsets_[k + 1] && term != 0; ++f) {
            term = field_.mul(term, pow_table_[static_cast<std::size_t>(x[factors_[f].var]) * order_ + factors_[f].exp]);
        }
        acc = field_.add(acc, term);
    }
    return acc;
}

GlobalMap::GlobalMap(StateSpace domain, std::vector<std::pair<std::size_t, Polynomial>> steps)
    : domain_(std::move(domain)), parallel_(false), steps_(std::move(steps)) {
    for (const auto &[v, p] : steps_) {
        if (v >= domain_.n_vars() || p.n_vars() != domain_.n_vars() || p.field() != domain_.field()) {
            throw ModelError("global map step does not match the state space");
        }
        step_vertex_.push_back(v);
        kernels_.emplace_back(p);
    }
}

GlobalMap::GlobalMap(StateSpace domain, std::vector<Polynomial> coordinates)
    : domain_(std::move(domain)), parallel_(true) {
    if (coordinates.size() != domain_.n_vars()) {
        throw ModelError("parallel map needs one coordinate function per gene");
    }
    for (std::size_t i = 0; i < coordinates.size(); ++i) {
        if (coordinates[i].n_vars() != domain_.n_vars() || coordinates[i].field() != domain_.field()) {
            throw ModelError("coordinate function does not match the state space");
        }
        step_vertex_.push_back(i);
        kernels_.emplace_back(coordinates[i]);
        steps_.emplace_back(i, std::move(coordinates[i]));
    }
}

void GlobalMap::apply(std::span<const Elem> in, std::span<Elem> out) const noexcept {
    if (parallel_) {
        for (std::size_t i = 0; i < kernels_.size(); ++i) {
            out[i] = kernels_[i].eval(in);
        }
        return;
    }
    std::copy(in.begin(), in.end(), out.begin());
    for (std::size_t k = 0; k < kernels_.size(); ++k) {
        out[step_vertex_[k]] = kernels_[k].eval(out);
    }
}

State GlobalMap::apply_unchecked(std::span<const Elem> state) const {
    if (state.size() != size()) {
        throw ArityError("state has " + std::to_string(state.size()) + " coordinates, map has " +
                         std::to_string(size()));
    }
    for (const auto v : state) {
        if (!domain_.field().contains(v)) {
            throw StateError("state coordinate outside the field");
        }
    }
    State out(size());
    apply(state, out);
    return out;
}

State GlobalMap::operator()(std::span<const Elem> state) const {
    if (!domain_.contains(state)) {
        throw StateError("state outside the state space");
    }
    State out(size());
    apply(state, out);
    return out;
}

std::vector<Polynomial> GlobalMap::compose_symbolic() const {
    const std::size_t n = size();
    const Field &f = domain_.field();
    std::vector<Polynomial> current;
    current.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        current.push_back(Polynomial::variable(f, n, i));
    }
    if (parallel_) {
        std::vector<Polynomial> out;
        for (const auto &[v, p] : steps_) {
            out.push_back(p);
        }
        return out;
    }
    for (const auto &[v, p] : steps_) {
        current[v] = p.substitute(current);
    }
    return current;
}

std::vector<Polynomial> GlobalMap::coordinate_polynomials(std::uint64_t table_limit) const {
    const std::size_t n = size();
    const Field &f = domain_.field();
    const auto full = ProductDomain::full(f, n);
    if (n > 0 && full.size() > table_limit) {
        return compose_symbolic();
    }
    std::vector<std::vector<Elem>> tables(n, std::vector<Elem>(full.size()));
    State x(n);
    State y(n);
    for (std::uint64_t k = 0; k < full.size(); ++k) {
        full.point(k, x);
        apply(x, y);
        for (std::size_t i = 0; i < n; ++i) {
            tables[i][k] = y[i];
        }
    }
    std::vector<Polynomial> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(interpolate_table(f, n, tables[i]));
    }
    return out;
}

GlobalMap global_map(const GsdsModel &m, const Schedule &word) {
    if (m.mode() == UpdateMode::parallel && word.word.empty()) {
        return {m.states(), m.locals()};
    }
    std::vector<std::pair<std::size_t, Polynomial>> steps;
    steps.reserve(word.word.size());
    for (const auto v : word.word) {
        if (v >= m.size()) {
            throw ModelError("schedule references unknown vertex " + std::to_string(v));
        }
        steps.emplace_back(v, m.locals()[v]);
    }
    return {m.states(), std::move(steps)};
}

GlobalMap global_map(const GsdsModel &m) {
    const auto report = validate_model(m);
    if (!report.valid()) {
        throw ModelError("model is invalid:\n" + report.to_string());
    }
    if (m.mode() == UpdateMode::parallel) {
        return {m.states(), m.locals()};
    }
    return global_map(m, m.schedule());
}

State apply_local(const GsdsModel &m, std::size_t vertex, std::span<const Elem> state) {
    if (vertex >= m.size()) {
        throw ModelError("unknown vertex " + std::to_string(vertex));
    }
    if (!m.states().contains(state)) {
        throw StateError("state outside the state space");
    }
    State out(state.begin(), state.end());
    out[vertex] = m.locals()[vertex].eval(state);
    return out;
}

State step(const GsdsModel &m, std::span<const Elem> state) { return global_map(m)(state); }

std::vector<State> trajectory(const GsdsModel &m, std::span<const Elem> state, std::size_t steps) {
    const auto F = global_map(m);
    if (!m.states().contains(state)) {
        throw StateError("state outside the state space");
    }
    std::vector<State> out;
    out.reserve(steps + 1);
    out.emplace_back(state.begin(), state.end());
    for (std::size_t t = 0; t < steps; ++t) {
        State next(m.size());
        F.apply(out.back(), next);
        out.push_back(std::move(next));
    }
    return out;
}

GsdsModel parallel_to_sequential(const std::vector<Polynomial> &coordinates, std::vector<std::string> names) {
    if (coordinates.empty()) {
        throw ModelError("parallel map has no coordinates");
    }
    const std::size_t n = coordinates.size();
    const Field f = coordinates.front().field();
    if (names.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            names.push_back("g" + std::to_string(i + 1));
        }
    }
    if (names.size() != n) {
        throw ModelError("need one name per coordinate");
    }
    std::vector<std::string> vertices = names;
    for (std::size_t i = 0; i < n; ++i) {
        vertices.push_back(names[i] + "_copy");
    }
    DependencyGraph graph(vertices);
    std::vector<std::size_t> to_shadow(n);
    for (std::size_t j = 0; j < n; ++j) {
        to_shadow[j] = n + j;
    }
    std::vector<Polynomial> locals;
    locals.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (coordinates[i].field() != f || coordinates[i].n_vars() != n) {
            throw ModelError("coordinate functions must share field and arity");
        }
        locals.push_back(coordinates[i].remap(2 * n, to_shadow));
        for (const auto j : coordinates[i].support()) {
            graph.add_edge(n + j, i);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        locals.push_back(Polynomial::variable(f, 2 * n, i));
        graph.add_edge(i, n + i);
    }
    Schedule word;
    for (std::size_t i = 0; i < n; ++i) {
        word.word.push_back(n + i);
    }
    for (std::size_t i = 0; i < n; ++i) {
        word.word.push_back(i);
    }
    return {std::move(graph), ProductDomain::full(f, 2 * n), std::move(locals), std::move(word)};
}

} // namespace gsds

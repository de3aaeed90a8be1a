#include "gsds/dynamics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gsds {

namespace {

constexpr std::uint32_t unset = 0xFFFFFFFFU;

std::uint64_t checked_size(const StateSpace &space, std::uint64_t limit) {
    const std::uint64_t hard = std::uint64_t{unset};
    if (space.size() > limit || space.size() >= hard) {
        throw LimitError("state space has " + std::to_string(space.size()) + " states, limit is " +
                         std::to_string(std::min(limit, hard - 1)));
    }
    return space.size();
}

} // namespace

namespace kernels {

void successors_serial(const GlobalMap &map, std::span<StateIndex> successor) {
    const auto &space = map.domain();
    State x(map.size());
    State y(map.size());
    for (std::uint64_t k = 0; k < successor.size(); ++k) {
        space.point(k, x);
        map.apply(x, y);
        successor[k] = static_cast<StateIndex>(space.index_of(y));
    }
}

void successors_parallel(const GlobalMap &map, std::span<StateIndex> successor, int workers) {
    const auto &space = map.domain();
    const auto total = static_cast<std::int64_t>(successor.size());
    bool outside = false;
#ifdef _OPENMP
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel num_threads(threads) reduction(|| : outside)
#endif
    {
        State x(map.size());
        State y(map.size());
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::int64_t k = 0; k < total; ++k) {
            space.point(static_cast<std::uint64_t>(k), x);
            map.apply(x, y);
            if (space.contains(y)) {
                successor[k] = static_cast<StateIndex>(space.index_of(y));
            } else {
                outside = true;
            }
        }
    }
    (void)workers;
    if (outside) {
        throw StateError("global map leaves the state space");
    }
}

void successors(const GlobalMap &map, std::span<StateIndex> out, int workers) {
    if (workers == 1) {
        successors_serial(map, out);
    } else {
        successors_parallel(map, out, workers);
    }
}

} // namespace kernels

PhasePortrait::PhasePortrait(StateSpace space, std::vector<StateIndex> successor)
    : space_(std::move(space)), successor_(std::move(successor)) {
    const std::size_t total = successor_.size();
    // color: 0 unvisited, 1 on the current walk, 2 finished
    std::vector<std::uint8_t> color(total, 0);
    transient_.assign(total, unset);
    basin_.assign(total, unset);
    std::vector<std::vector<StateIndex>> found;
    std::vector<StateIndex> path;
    for (std::size_t start = 0; start < total; ++start) {
        if (color[start] != 0) {
            continue;
        }
        path.clear();
        StateIndex s = static_cast<StateIndex>(start);
        while (color[s] == 0) {
            color[s] = 1;
            path.push_back(s);
            s = successor_[s];
        }
        std::size_t tail_end = path.size();
        if (color[s] == 1) {
            // s closes a new cycle inside the current walk
            const auto at = static_cast<std::size_t>(std::find(path.begin(), path.end(), s) - path.begin());
            const auto id = static_cast<std::uint32_t>(found.size());
            found.emplace_back(path.begin() + static_cast<std::ptrdiff_t>(at), path.end());
            for (std::size_t k = at; k < path.size(); ++k) {
                transient_[path[k]] = 0;
                basin_[path[k]] = id;
                color[path[k]] = 2;
            }
            tail_end = at;
        }
        for (std::size_t k = tail_end; k-- > 0;) {
            const StateIndex v = path[k];
            const StateIndex next = successor_[v];
            transient_[v] = transient_[next] + 1;
            basin_[v] = basin_[next];
            color[v] = 2;
        }
    }
    for (auto &cycle : found) {
        const auto min_it = std::min_element(cycle.begin(), cycle.end());
        std::rotate(cycle.begin(), min_it, cycle.end());
    }
    std::vector<std::uint32_t> order(found.size());
    std::iota(order.begin(), order.end(), 0U);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return found[a].front() < found[b].front(); });
    std::vector<std::uint32_t> rename(found.size());
    for (std::uint32_t k = 0; k < order.size(); ++k) {
        rename[order[k]] = k;
        attractors_.push_back(std::move(found[order[k]]));
    }
    for (auto &b : basin_) {
        b = rename[b];
    }
}

std::uint32_t PhasePortrait::max_transient() const noexcept {
    return transient_.empty() ? 0 : *std::max_element(transient_.begin(), transient_.end());
}

std::vector<std::uint64_t> PhasePortrait::basin_sizes() const {
    std::vector<std::uint64_t> sizes(attractors_.size(), 0);
    for (const auto b : basin_) {
        ++sizes[b];
    }
    return sizes;
}

std::vector<std::uint64_t> PhasePortrait::transient_histogram() const {
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(max_transient()) + 1, 0);
    for (const auto t : transient_) {
        ++hist[t];
    }
    return hist;
}

PhasePortrait phase_portrait(const GlobalMap &map, const PortraitOptions &options) {
    const auto total = checked_size(map.domain(), options.state_limit);
    std::vector<StateIndex> successor(total);
    kernels::successors(map, successor, options.workers);
    return {map.domain(), std::move(successor)};
}

PhasePortrait phase_portrait(const GsdsModel &m, const PortraitOptions &options) {
    return phase_portrait(global_map(m), options);
}

std::vector<State> fixed_points(const GsdsModel &m, const PortraitOptions &options) {
    const auto p = phase_portrait(m, options);
    std::vector<State> out;
    for (const auto &cycle : p.attractors()) {
        if (cycle.size() == 1) {
            out.push_back(p.state(cycle.front()));
        }
    }
    return out;
}

std::vector<std::vector<State>> cycles(const GsdsModel &m, const PortraitOptions &options) {
    const auto p = phase_portrait(m, options);
    std::vector<std::vector<State>> out;
    for (const auto &cycle : p.attractors()) {
        std::vector<State> states;
        for (const auto s : cycle) {
            states.push_back(p.state(s));
        }
        out.push_back(std::move(states));
    }
    return out;
}

namespace {

std::vector<StateIndex> table_for(const GsdsModel &m, const Schedule &word, const PortraitOptions &options) {
    const auto map = global_map(m, word);
    const auto total = checked_size(map.domain(), options.state_limit);
    std::vector<StateIndex> table(total);
    kernels::successors(map, table, options.workers);
    return table;
}

} // namespace

ScheduleComparison compare_schedules(const GsdsModel &m, const Schedule &a, const Schedule &b,
                                     const PortraitOptions &options) {
    const auto ta = table_for(m, a, options);
    const auto tb = table_for(m, b, options);
    const auto [ia, ib] = std::mismatch(ta.begin(), ta.end(), tb.begin());
    if (ia == ta.end()) {
        return {true, std::nullopt};
    }
    return {false, m.states().point(static_cast<std::uint64_t>(ia - ta.begin()))};
}

std::vector<ScheduleClass> schedule_scan(const GsdsModel &m, const std::vector<Schedule> &words,
                                         const PortraitOptions &options) {
    std::vector<ScheduleClass> classes;
    std::map<std::vector<StateIndex>, std::size_t> by_table;
    for (const auto &w : words) {
        auto table = table_for(m, w, options);
        const auto [it, inserted] = by_table.try_emplace(std::move(table), classes.size());
        if (inserted) {
            classes.push_back({w, {}});
        }
        classes[it->second].members.push_back(w);
    }
    return classes;
}

std::vector<ScheduleClass> schedule_scan_permutations(const GsdsModel &m, std::uint64_t permutation_limit,
                                                      const PortraitOptions &options) {
    std::uint64_t count = 1;
    for (std::uint64_t k = 2; k <= m.size(); ++k) {
        count *= k;
        if (count > permutation_limit) {
            throw LimitError(std::to_string(m.size()) + "! permutations exceed the limit of " +
                             std::to_string(permutation_limit));
        }
    }
    std::vector<std::size_t> perm(m.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<Schedule> words;
    do {
        words.push_back({perm});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return schedule_scan(m, words, options);
}

std::string format_state(const Field &field, std::span<const Elem> state, Encoding display) {
    std::string out = "(";
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += std::to_string(field.decode(state[i], display));
    }
    return out + ")";
}

std::string portrait_dot(const PhasePortrait &portrait, Encoding display) {
    const auto &f = portrait.space().field();
    std::ostringstream os;
    os << "digraph transitions {\n";
    for (std::uint64_t k = 0; k < portrait.size(); ++k) {
        const auto label = format_state(f, portrait.state(static_cast<StateIndex>(k)), display);
        os << "  s" << k << " [label=\"" << label << "\"";
        if (portrait.transient()[k] == 0) {
            os << ", shape=doublecircle";
        }
        os << "];\n";
    }
    for (std::uint64_t k = 0; k < portrait.size(); ++k) {
        os << "  s" << k << " -> s" << portrait.successor()[k] << ";\n";
    }
    os << "}\n";
    return os.str();
}

std::string attractor_dot(const PhasePortrait &portrait, Encoding display) {
    const auto &f = portrait.space().field();
    const auto sizes = portrait.basin_sizes();
    std::ostringstream os;
    os << "digraph attractors {\n";
    for (std::size_t a = 0; a < portrait.attractors().size(); ++a) {
        os << "  a" << a << " [shape=box, label=\"";
        const auto &cycle = portrait.attractors()[a];
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            if (k) {
                os << " -> ";
            }
            os << format_state(f, portrait.state(cycle[k]), display);
        }
        os << "\\nlength " << cycle.size() << ", basin " << sizes[a] << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::string portrait_json(const PhasePortrait &portrait, const std::vector<std::string> &genes,
                          Encoding display) {
    using nlohmann::ordered_json;
    const auto &f = portrait.space().field();
    const auto sizes = portrait.basin_sizes();
    ordered_json j;
    j["format_version"] = 1;
    j["field"] = f.order();
    j["display"] = display == Encoding::balanced ? "balanced" : "canonical";
    j["genes"] = genes;
    j["state_count"] = portrait.size();
    ordered_json attractors = ordered_json::array();
    for (std::size_t a = 0; a < portrait.attractors().size(); ++a) {
        const auto &cycle = portrait.attractors()[a];
        ordered_json states = ordered_json::array();
        for (const auto s : cycle) {
            ordered_json st = ordered_json::array();
            for (const auto v : portrait.state(s)) {
                st.push_back(f.decode(v, display));
            }
            states.push_back(std::move(st));
        }
        ordered_json entry;
        entry["id"] = a;
        entry["length"] = cycle.size();
        entry["states"] = std::move(states);
        entry["basin_size"] = sizes[a];
        attractors.push_back(std::move(entry));
    }
    j["attractor_count"] = portrait.attractors().size();
    j["attractors"] = std::move(attractors);
    j["max_transient"] = portrait.max_transient();
    j["transient_histogram"] = portrait.transient_histogram();
    j["basin_sizes"] = sizes;
    return j.dump(2) + "\n";
}

} // namespace gsds

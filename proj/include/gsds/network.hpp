#pragma once

// Genetic sequential dynamical systems: genes with finite state sets, a
// dependency graph, one local update function per gene and a schedule word.

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gsds/ffield.hpp"
#include "gsds/polynomial.hpp"

namespace gsds {

using State = std::vector<Elem>;

/// Global state space B = B_1 x ... x B_n, indexed mixed-radix with gene 1
/// most significant and each B_j in ascending canonical order.
using StateSpace = ProductDomain;

/// Builds a StateSpace, sorting each B_j into canonical order.
[[nodiscard]] StateSpace make_state_space(const Field &field, std::vector<std::vector<Elem>> subsets);

class DependencyGraph {
  public:
    DependencyGraph() = default;
    explicit DependencyGraph(std::vector<std::string> vertices);

    [[nodiscard]] std::size_t size() const noexcept { return vertices_.size(); }
    [[nodiscard]] const std::vector<std::string> &vertices() const noexcept { return vertices_; }
    [[nodiscard]] const std::set<std::pair<std::size_t, std::size_t>> &edges() const noexcept { return edges_; }

    /// Throws ModelError for unknown names.
    [[nodiscard]] std::size_t index_of(const std::string &name) const;
    void add_edge(std::size_t from, std::size_t to);
    void add_edge(const std::string &from, const std::string &to);
    [[nodiscard]] bool has_edge(std::size_t from, std::size_t to) const;

    /// Undirected 1-neighborhood: {b : (a,b) or (b,a) is an edge} plus a itself.
    [[nodiscard]] std::vector<std::size_t> neighborhood(std::size_t a) const;

  private:
    std::vector<std::string> vertices_;
    std::set<std::pair<std::size_t, std::size_t>> edges_;
};

struct Schedule {
    std::vector<std::size_t> word;
};

enum class UpdateMode {
    sequential, ///< compose local functions along the schedule word
    parallel,   ///< locals are the coordinate functions of one map, applied at once
};

class GsdsModel {
  public:
    /// `locals[i]` is the coordinate polynomial of gene i's local function.
    /// Structural mismatches (arity, field, counts) throw ModelError; semantic
    /// problems are reported by validate_model.
    GsdsModel(DependencyGraph graph, StateSpace states, std::vector<Polynomial> locals, Schedule schedule,
              UpdateMode mode = UpdateMode::sequential, Encoding display = Encoding::canonical);

    [[nodiscard]] std::size_t size() const noexcept { return graph_.size(); }
    [[nodiscard]] const Field &field() const noexcept { return states_.field(); }
    [[nodiscard]] const DependencyGraph &graph() const noexcept { return graph_; }
    [[nodiscard]] const StateSpace &states() const noexcept { return states_; }
    [[nodiscard]] const std::vector<Polynomial> &locals() const noexcept { return locals_; }
    [[nodiscard]] const Schedule &schedule() const noexcept { return schedule_; }
    [[nodiscard]] UpdateMode mode() const noexcept { return mode_; }
    [[nodiscard]] Encoding display() const noexcept { return display_; }

    [[nodiscard]] GsdsModel with_schedule(Schedule schedule) const;
    [[nodiscard]] GsdsModel with_display(Encoding display) const;

  private:
    DependencyGraph graph_;
    StateSpace states_;
    std::vector<Polynomial> locals_;
    Schedule schedule_;
    UpdateMode mode_;
    Encoding display_;
};

struct Violation {
    enum class Kind { locality, range, schedule };
    Kind kind;
    /// Gene index for locality/range findings, word position for schedule ones.
    std::size_t where;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    [[nodiscard]] bool valid() const noexcept { return violations.empty(); }
    [[nodiscard]] std::string to_string() const;
};

[[nodiscard]] ValidationReport validate_model(const GsdsModel &m);

/// Polynomial compiled for repeated evaluation over one field.
class CompiledPoly {
  public:
    explicit CompiledPoly(const Polynomial &p);
    [[nodiscard]] Elem eval(std::span<const Elem> x) const noexcept;

  private:
    unsigned order_;
    Field field_;
    std::vector<Elem> pow_table_; // pow_table_[v * q + e] = v^e
    struct Factor {
        std::uint32_t var;
        std::uint16_t exp;
    };
    std::vector<Elem> coeffs_;
    std::vector<std::uint32_t> offsets_; // term k uses factors_[offsets_[k] .. offsets_[k+1])
    std::vector<Factor> factors_;
};

/// A total map B -> B, either a fold of local updates along a word or a
/// parallel coordinate map.
class GlobalMap {
  public:
    /// Sequential form.
    GlobalMap(StateSpace domain, std::vector<std::pair<std::size_t, Polynomial>> steps);
    /// Parallel form.
    GlobalMap(StateSpace domain, std::vector<Polynomial> coordinates);

    [[nodiscard]] const StateSpace &domain() const noexcept { return domain_; }
    [[nodiscard]] std::size_t size() const noexcept { return domain_.n_vars(); }
    [[nodiscard]] bool is_parallel() const noexcept { return parallel_; }

    /// Unchecked: writes F(in) to out. `in` and `out` must not overlap.
    void apply(std::span<const Elem> in, std::span<Elem> out) const noexcept;
    /// Checked against the domain.
    [[nodiscard]] State operator()(std::span<const Elem> state) const;
    /// F on any point of GF(q)^n, without a domain check.
    [[nodiscard]] State apply_unchecked(std::span<const Elem> state) const;

    /// Coordinate functions F_1 ... F_n as normalized polynomials, from the
    /// full GF(q)^n truth table (falls back to symbolic composition when the
    /// table would exceed `table_limit` entries).
    [[nodiscard]] std::vector<Polynomial> coordinate_polynomials(std::uint64_t table_limit = 1U << 22) const;
    /// Coordinate functions by symbolic substitution along the word.
    [[nodiscard]] std::vector<Polynomial> compose_symbolic() const;

  private:
    StateSpace domain_;
    bool parallel_;
    std::vector<std::pair<std::size_t, Polynomial>> steps_;
    std::vector<std::size_t> step_vertex_;
    std::vector<CompiledPoly> kernels_;
};

/// Throws ModelError when the model does not validate.
[[nodiscard]] GlobalMap global_map(const GsdsModel &m);
/// Composition along an arbitrary word for m's locals; throws ModelError for
/// unknown vertices. Ignores m.mode().
[[nodiscard]] GlobalMap global_map(const GsdsModel &m, const Schedule &word);

/// f_i applied to `state`: only coordinate i changes.
[[nodiscard]] State apply_local(const GsdsModel &m, std::size_t vertex, std::span<const Elem> state);

[[nodiscard]] State step(const GsdsModel &m, std::span<const Elem> state);
[[nodiscard]] std::vector<State> trajectory(const GsdsModel &m, std::span<const Elem> state, std::size_t steps);

/// Sequential model with 2n vertices realizing the parallel map given by
/// `coordinates`: vertices n..2n-1 copy x_1..x_n, then vertex i writes
/// F_i(copies). Restricted to vertices 0..n-1 its global map equals F.
[[nodiscard]] GsdsModel parallel_to_sequential(const std::vector<Polynomial> &coordinates,
                                               std::vector<std::string> names = {});

} // namespace gsds

#pragma once

// Phase-space analysis of a global map: the functional transition digraph,
// its attractors (fixed points and limit cycles), transients and basins.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gsds/network.hpp"

namespace gsds {

using StateIndex = std::uint32_t;

struct PortraitOptions {
    std::uint64_t state_limit = std::uint64_t{1} << 24;
    /// OpenMP thread count for successor enumeration; 0 keeps the runtime
    /// default, 1 runs the serial kernel.
    int workers = 0;
};

class PhasePortrait {
  public:
    PhasePortrait(StateSpace space, std::vector<StateIndex> successor);

    [[nodiscard]] const StateSpace &space() const noexcept { return space_; }
    [[nodiscard]] std::uint64_t size() const noexcept { return successor_.size(); }
    [[nodiscard]] const std::vector<StateIndex> &successor() const noexcept { return successor_; }
    /// Cycles in ascending order of their minimal state index, each rotated to
    /// start at that minimum.
    [[nodiscard]] const std::vector<std::vector<StateIndex>> &attractors() const noexcept { return attractors_; }
    [[nodiscard]] const std::vector<std::uint32_t> &transient() const noexcept { return transient_; }
    [[nodiscard]] const std::vector<std::uint32_t> &basin() const noexcept { return basin_; }

    [[nodiscard]] std::uint32_t max_transient() const noexcept;
    [[nodiscard]] std::vector<std::uint64_t> basin_sizes() const;
    /// histogram[k] = number of states with transient k.
    [[nodiscard]] std::vector<std::uint64_t> transient_histogram() const;

    [[nodiscard]] State state(StateIndex index) const { return space_.point(index); }

  private:
    StateSpace space_;
    std::vector<StateIndex> successor_;
    std::vector<std::vector<StateIndex>> attractors_;
    std::vector<std::uint32_t> transient_;
    std::vector<std::uint32_t> basin_;
};

namespace kernels {

/// successor[k] = index of F(state k), one state after another.
void successors_serial(const GlobalMap &map, std::span<StateIndex> successor);

/// Same result as successors_serial; the state range is split into
/// contiguous blocks across OpenMP threads.
void successors_parallel(const GlobalMap &map, std::span<StateIndex> successor, int workers);

/// Fills `out` with the successor array using the kernel selected by
/// `workers` (1 = serial).
void successors(const GlobalMap &map, std::span<StateIndex> out, int workers);

} // namespace kernels

[[nodiscard]] PhasePortrait phase_portrait(const GlobalMap &map, const PortraitOptions &options = {});
[[nodiscard]] PhasePortrait phase_portrait(const GsdsModel &m, const PortraitOptions &options = {});

[[nodiscard]] std::vector<State> fixed_points(const GsdsModel &m, const PortraitOptions &options = {});
[[nodiscard]] std::vector<std::vector<State>> cycles(const GsdsModel &m, const PortraitOptions &options = {});

struct ScheduleComparison {
    bool equal;
    /// Minimal-index state on which the two composed maps differ.
    std::optional<State> witness;
};

/// Throws ModelError for a word that references an unknown vertex.
[[nodiscard]] ScheduleComparison compare_schedules(const GsdsModel &m, const Schedule &a, const Schedule &b,
                                                   const PortraitOptions &options = {});

struct ScheduleClass {
    Schedule representative;
    std::vector<Schedule> members;
};

/// Groups words by composed map; classes are ordered by first occurrence.
[[nodiscard]] std::vector<ScheduleClass> schedule_scan(const GsdsModel &m, const std::vector<Schedule> &words,
                                                       const PortraitOptions &options = {});

/// All n! permutations of the vertices; LimitError when n! > permutation_limit.
[[nodiscard]] std::vector<ScheduleClass> schedule_scan_permutations(const GsdsModel &m,
                                                                    std::uint64_t permutation_limit = 40320,
                                                                    const PortraitOptions &options = {});

/// "(x,y,...)" in the display encoding.
[[nodiscard]] std::string format_state(const Field &field, std::span<const Elem> state, Encoding display);

/// Transition digraph in Graphviz DOT.
[[nodiscard]] std::string portrait_dot(const PhasePortrait &portrait, Encoding display);
/// One node per attractor, labeled with its cycle and basin size.
[[nodiscard]] std::string attractor_dot(const PhasePortrait &portrait, Encoding display);
/// JSON report: attractors, transient histogram, basin sizes.
[[nodiscard]] std::string portrait_json(const PhasePortrait &portrait, const std::vector<std::string> &genes,
                                        Encoding display);

} // namespace gsds

#pragma once

// Threshold discretization of real concentrations and the sample-based check
// that a discretization translates continuous dynamics into a discrete map.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gsds/network.hpp"

namespace gsds {

struct Threshold {
    double value;
    /// Level of the open band just below this threshold.
    Elem below;
    /// Level of values within epsilon of the threshold; defaults to the level
    /// of the band above.
    std::optional<Elem> equal;
};

struct GeneThresholds {
    std::vector<Threshold> thresholds; ///< strictly increasing values
    Elem top;                          ///< level above the last threshold
};

class ThresholdMap {
  public:
    static constexpr double default_epsilon = 1e-9;

    ThresholdMap(Field field, std::vector<GeneThresholds> genes, double epsilon = default_epsilon);

    [[nodiscard]] const Field &field() const noexcept { return field_; }
    [[nodiscard]] std::size_t size() const noexcept { return genes_.size(); }
    [[nodiscard]] double epsilon() const noexcept { return epsilon_; }
    [[nodiscard]] const std::vector<GeneThresholds> &genes() const noexcept { return genes_; }

    /// Index of the threshold within epsilon of c, if any.
    [[nodiscard]] std::optional<std::size_t> at_threshold(std::size_t gene, double c) const;
    /// Level of the open band containing c (thresholds never count as equal).
    [[nodiscard]] Elem band_level(std::size_t gene, double c) const;
    /// Level of the band just above (direction > 0) or below threshold k.
    [[nodiscard]] Elem side_level(std::size_t gene, std::size_t k, int direction) const;
    [[nodiscard]] Elem equal_level(std::size_t gene, std::size_t k) const;
    /// Full classification: equal level within epsilon of a threshold,
    /// enclosing band otherwise.
    [[nodiscard]] Elem level(std::size_t gene, double c) const;
    /// Position in band order: 0 below the first threshold, 2k+1 at threshold
    /// k, 2k+2 just above it.
    [[nodiscard]] std::size_t band_position(std::size_t gene, double c) const;

    friend bool operator==(const ThresholdMap &a, const ThresholdMap &b);

  private:
    Field field_;
    std::vector<GeneThresholds> genes_;
    double epsilon_;
};

inline bool operator==(const Threshold &a, const Threshold &b) {
    return a.value == b.value && a.below == b.below && a.equal == b.equal;
}
inline bool operator==(const GeneThresholds &a, const GeneThresholds &b) {
    return a.thresholds == b.thresholds && a.top == b.top;
}

using Concentrations = std::vector<double>;

[[nodiscard]] State discretize(const ThresholdMap &delta, std::span<const double> c);

/// Elementwise discretize; with `collapse`, consecutive duplicates are merged.
[[nodiscard]] std::vector<State> discretize_series(const ThresholdMap &delta,
                                                   const std::vector<Concentrations> &samples, bool collapse = false);

struct TranslationCounterexample {
    std::size_t pair_index;
    State observed;  ///< delta(c(t_{i+1}))
    State predicted; ///< f(delta(c(t_i)))
};

struct TranslationCheck {
    std::size_t pairs = 0;
    std::size_t passed = 0;
    std::vector<TranslationCounterexample> counterexamples;

    [[nodiscard]] bool compatible() const noexcept { return counterexamples.empty(); }
};

/// Tests delta(c(t_{i+1})) = f(delta(c(t_i))) for every pair.
[[nodiscard]] TranslationCheck check_translated(const GlobalMap &f,
                                                const std::vector<std::pair<Concentrations, Concentrations>> &pairs,
                                                const ThresholdMap &delta);
/// Consecutive pairs of a time series.
[[nodiscard]] TranslationCheck check_translated(const GlobalMap &f, const std::vector<Concentrations> &series,
                                                const ThresholdMap &delta);

struct ThresholdCandidate {
    double value;
    bool anchor; ///< observed value: samples on it take the equal level
};

/// Levels assigned to a single-threshold candidate.
struct LevelScheme {
    Elem below;
    Elem equal;
    Elem above;
};

/// (-1, 0, 1) for odd prime fields, (0, 1, 1) otherwise.
[[nodiscard]] LevelScheme default_levels(const Field &field);

struct CandidateGrid {
    enum class Mode { midpoints, explicit_list };
    Mode mode = Mode::midpoints;
    /// Per-gene candidates for explicit_list.
    std::vector<std::vector<ThresholdCandidate>> candidates;
    std::optional<LevelScheme> levels;
    /// Upper bound on the number of combinations tried.
    std::uint64_t combination_limit = 10'000'000;
    int workers = 0;
};

/// Default candidates for one gene: every distinct observed value as an
/// anchor, midpoints between consecutive distinct values, and one value on
/// either side of the observed range.
[[nodiscard]] std::vector<ThresholdCandidate> midpoint_candidates(std::vector<double> observed);

/// All single-threshold-per-gene maps from the grid under which the series
/// is translated by f. Ordered lexicographically by threshold vector.
[[nodiscard]] std::vector<ThresholdMap> search_compatible_thresholds(const std::vector<Concentrations> &series,
                                                                     const GlobalMap &f, const CandidateGrid &grid);

} // namespace gsds

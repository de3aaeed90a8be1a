#pragma once

// Sectional linear concentration functions and an event-driven simulator for
// finite-state control with linear production and decay.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gsds/network.hpp"
#include "gsds/translate.hpp"

namespace gsds {

enum class OutsideMode {
    zero,        ///< 0 before the first and after the last breakpoint
    extend_last, ///< last segment continues past the last breakpoint
};

struct Segment {
    double slope;
    double intercept;

    friend bool operator==(const Segment &, const Segment &) = default;
};

/// c(t) = a_i t + b_i on [t_i, t_{i+1}], continuous at interior breakpoints.
class SectionalLinear {
  public:
    static constexpr double continuity_tolerance = 1e-9;

    /// Throws ContinuityError on a gap larger than the tolerance and
    /// gsds::Error for non-increasing breakpoints or a count mismatch.
    SectionalLinear(std::vector<double> breakpoints, std::vector<Segment> segments,
                    OutsideMode outside = OutsideMode::zero);

    [[nodiscard]] const std::vector<double> &breakpoints() const noexcept { return breakpoints_; }
    [[nodiscard]] const std::vector<Segment> &segments() const noexcept { return segments_; }
    [[nodiscard]] OutsideMode outside() const noexcept { return outside_; }

    [[nodiscard]] double operator()(double t) const;
    /// Value of segment k at time t, ignoring its interval.
    [[nodiscard]] double segment_value(std::size_t k, double t) const;

  private:
    std::vector<double> breakpoints_;
    std::vector<Segment> segments_;
    OutsideMode outside_;
};

[[nodiscard]] SectionalLinear make_sectional_linear(std::vector<double> breakpoints, std::vector<Segment> segments,
                                                    OutsideMode outside = OutsideMode::zero);

/// Piecewise-linear interpolant through consecutive samples.
[[nodiscard]] SectionalLinear fit_from_samples(std::span<const double> times, std::span<const double> values,
                                               OutsideMode outside = OutsideMode::zero);

[[nodiscard]] double eval_sectional(const SectionalLinear &c, double t);

/// Production slope per gene and activity level.
class RatePolicy {
  public:
    RatePolicy(Field field, std::vector<std::vector<std::optional<double>>> slopes, bool floor_at_zero = true);

    /// Every gene gets the same slope table, indexed by canonical level.
    static RatePolicy uniform(Field field, std::size_t genes, std::vector<double> slope_by_level,
                              bool floor_at_zero = true);

    [[nodiscard]] std::size_t size() const noexcept { return slopes_.size(); }
    [[nodiscard]] bool floor_at_zero() const noexcept { return floor_; }
    /// Throws gsds::Error when no slope is defined for the level.
    [[nodiscard]] double slope(std::size_t gene, Elem level) const;
    [[nodiscard]] const std::vector<std::vector<std::optional<double>>> &table() const noexcept { return slopes_; }

    /// Throws ModelError unless a slope exists for every element of every B_j.
    void require_covers(const StateSpace &space) const;

  private:
    Field field_;
    std::vector<std::vector<std::optional<double>>> slopes_;
    bool floor_;
};

struct HybridEvent {
    enum class Kind {
        crossing, ///< passed through a threshold into the next band
        hold,     ///< stopped at a threshold because the next band reverses it
        release,  ///< left a threshold it was held at
        floor,    ///< reached zero while decreasing
    };
    double time;
    std::size_t gene;
    double threshold; ///< threshold value, 0 for floor events
    Kind kind;
    State before;
    State after;
};

[[nodiscard]] std::string to_string(HybridEvent::Kind kind);

struct HybridOptions {
    std::size_t max_events = 1'000'000;
};

struct HybridResult {
    std::vector<SectionalLinear> trajectories; ///< one per gene, on [0, t_end]
    std::vector<HybridEvent> events;
    /// Distinct event times, increasing; interval k is
    /// [times[k], times[k+1]] with times[0] = 0 and times.back() = t_end.
    std::vector<double> times;
    /// Discrete state on the open interval k.
    std::vector<State> interval_states;

    /// Midpoint of every interval.
    [[nodiscard]] std::vector<double> interval_midpoints() const;
    /// Concentrations of all genes at t.
    [[nodiscard]] Concentrations at(double t) const;
};

/// Each gene's concentration moves with slope rates(gene, F(s)_gene) where s
/// is the current discrete state; slopes change only at threshold events
/// whose times are solved in closed form.
[[nodiscard]] HybridResult hybrid_simulate(const GsdsModel &m, const RatePolicy &rates, const ThresholdMap &delta,
                                           std::span<const double> c0, double t_end,
                                           const HybridOptions &options = {});

} // namespace gsds

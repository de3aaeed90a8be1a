#include "gsds/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gsds {

SectionalLinear::SectionalLinear(std::vector<double> breakpoints, std::vector<Segment> segments, OutsideMode outside)
    : breakpoints_(std::move(breakpoints)), segments_(std::move(segments)), outside_(outside) {
    if (breakpoints_.size() < 2) {
        throw Error("a sectional linear function needs at least two breakpoints");
    }
    if (segments_.size() + 1 != breakpoints_.size()) {
        throw Error("expected " + std::to_string(breakpoints_.size() - 1) + " segments, got " +
                    std::to_string(segments_.size()));
    }
    for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
        if (!std::isfinite(breakpoints_[k])) {
            throw Error("breakpoint " + std::to_string(k) + " is not finite");
        }
        if (k > 0 && !(breakpoints_[k] > breakpoints_[k - 1])) {
            throw Error("breakpoints must be strictly increasing (index " + std::to_string(k) + ")");
        }
    }
    for (std::size_t k = 1; k + 1 < breakpoints_.size(); ++k) {
        const double t = breakpoints_[k];
        const double gap = std::abs(segment_value(k - 1, t) - segment_value(k, t));
        if (gap > continuity_tolerance) {
            std::ostringstream os;
            os << "continuity violated at breakpoint t=" << t << " (gap " << gap << ")";
            throw ContinuityError(os.str(), t, gap);
        }
    }
}

double SectionalLinear::segment_value(std::size_t k, double t) const {
    return segments_.at(k).slope * t + segments_[k].intercept;
}

double SectionalLinear::operator()(double t) const {
    if (t < breakpoints_.front()) {
        return 0.0;
    }
    if (t > breakpoints_.back()) {
        return outside_ == OutsideMode::zero ? 0.0 : segment_value(segments_.size() - 1, t);
    }
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    auto k = static_cast<std::size_t>(it - breakpoints_.begin());
    k = std::min(k == 0 ? 0 : k - 1, segments_.size() - 1);
    return segment_value(k, t);
}

SectionalLinear make_sectional_linear(std::vector<double> breakpoints, std::vector<Segment> segments,
                                      OutsideMode outside) {
    return {std::move(breakpoints), std::move(segments), outside};
}

SectionalLinear fit_from_samples(std::span<const double> times, std::span<const double> values,
                                 OutsideMode outside) {
    if (times.size() != values.size()) {
        throw ArityError("times and values differ in length");
    }
    if (times.size() < 2) {
        throw Error("fitting needs at least two samples");
    }
    std::vector<Segment> segments;
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        if (!(times[k + 1] > times[k])) {
            throw Error("sample times must be strictly increasing (duplicate or reversed at index " +
                        std::to_string(k + 1) + ")");
        }
        const double slope = (values[k + 1] - values[k]) / (times[k + 1] - times[k]);
        segments.push_back({slope, values[k] - slope * times[k]});
    }
    return {std::vector<double>(times.begin(), times.end()), std::move(segments), outside};
}

double eval_sectional(const SectionalLinear &c, double t) { return c(t); }

RatePolicy::RatePolicy(Field field, std::vector<std::vector<std::optional<double>>> slopes, bool floor_at_zero)
    : field_(field), slopes_(std::move(slopes)), floor_(floor_at_zero) {
    for (auto &row : slopes_) {
        if (row.size() > field_.order()) {
            throw Error("rate table has more levels than the field");
        }
        row.resize(field_.order());
        for (const auto &s : row) {
            if (s && !std::isfinite(*s)) {
                throw Error("rates must be finite");
            }
        }
    }
}

RatePolicy RatePolicy::uniform(Field field, std::size_t genes, std::vector<double> slope_by_level,
                               bool floor_at_zero) {
    std::vector<std::optional<double>> row(slope_by_level.begin(), slope_by_level.end());
    return {field, std::vector<std::vector<std::optional<double>>>(genes, row), floor_at_zero};
}

double RatePolicy::slope(std::size_t gene, Elem level) const {
    if (gene >= slopes_.size() || level >= slopes_[gene].size() || !slopes_[gene][level]) {
        throw Error("no rate defined for gene " + std::to_string(gene + 1) + " at level " + std::to_string(level));
    }
    return *slopes_[gene][level];
}

void RatePolicy::require_covers(const StateSpace &space) const {
    if (slopes_.size() != space.n_vars()) {
        throw ModelError("rate policy covers " + std::to_string(slopes_.size()) + " genes, model has " +
                         std::to_string(space.n_vars()));
    }
    for (std::size_t g = 0; g < slopes_.size(); ++g) {
        for (const auto v : space.factors()[g]) {
            if (!slopes_[g][v]) {
                throw ModelError("no rate for gene " + std::to_string(g + 1) + " at level " + std::to_string(v));
            }
        }
    }
}

std::string to_string(HybridEvent::Kind kind) {
    switch (kind) {
    case HybridEvent::Kind::crossing:
        return "crossing";
    case HybridEvent::Kind::hold:
        return "hold";
    case HybridEvent::Kind::release:
        return "release";
    case HybridEvent::Kind::floor:
        return "floor";
    }
    return "unknown";
}

std::vector<double> HybridResult::interval_midpoints() const {
    std::vector<double> mids;
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        mids.push_back((times[k] + times[k + 1]) / 2);
    }
    return mids;
}

Concentrations HybridResult::at(double t) const {
    Concentrations c;
    c.reserve(trajectories.size());
    for (const auto &traj : trajectories) {
        c.push_back(traj(t));
    }
    return c;
}

namespace {

constexpr double floor_tolerance = 1e-12;

int sign(double x) { return (x > 0) - (x < 0); }

class HybridSimulator {
  public:
    HybridSimulator(const GsdsModel &m, const RatePolicy &rates, const ThresholdMap &delta,
                    std::span<const double> c0)
        : map_(global_map(m)), rates_(rates), delta_(delta), n_(m.size()), c_(c0.begin(), c0.end()),
          held_(n_, false), dir_(n_, 0), slope_(n_, 0.0) {
        if (delta_.size() != n_ || c_.size() != n_ || rates_.size() != n_) {
            throw ArityError("rates, thresholds and initial concentrations must cover every gene");
        }
        if (delta_.field() != m.field()) {
            throw FieldMismatchError("threshold levels are over a different field than the model");
        }
        rates_.require_covers(m.states());
        for (const double v : c_) {
            if (!std::isfinite(v)) {
                throw Error("initial concentrations must be finite");
            }
        }
    }

    HybridResult run(double t_end, const HybridOptions &options) {
        if (!(t_end > 0)) {
            throw Error("t_end must be positive");
        }
        HybridResult result;
        std::vector<std::vector<double>> start_values(n_);
        std::vector<std::vector<double>> slopes(n_);
        double t = 0;
        std::vector<bool> arrived(n_, false);
        std::vector<bool> floored(n_, false);
        State previous = classify_all();
        for (std::size_t i = 0; i < n_; ++i) {
            if (delta_.at_threshold(i, c_[i])) {
                held_[i] = true;
            }
        }
        std::size_t event_count = 0;
        result.times.push_back(0.0);
        for (;;) {
            const std::vector<bool> was_held = held_;
            resolve();
            State current = classify_all();
            if (t > 0) {
                log_events(result, t, previous, current, arrived, floored, was_held);
            }
            result.interval_states.push_back(current);
            for (std::size_t i = 0; i < n_; ++i) {
                start_values[i].push_back(c_[i]);
                slopes[i].push_back(slope_[i]);
            }
            previous = std::move(current);

            const auto next = next_event();
            if (!next || t + next->dt >= t_end) {
                result.times.push_back(t_end);
                break;
            }
            if (++event_count > options.max_events) {
                throw ZenoError("more than " + std::to_string(options.max_events) + " events before t=" +
                                std::to_string(t_end) + "; last event at t=" + std::to_string(t));
            }
            const double dt = next->dt;
            const double t_next = t + dt;
            std::fill(arrived.begin(), arrived.end(), false);
            std::fill(floored.begin(), floored.end(), false);
            for (std::size_t i = 0; i < n_; ++i) {
                if (next->targets[i]) {
                    c_[i] = next->targets[i]->value;
                    (next->targets[i]->is_floor ? floored : arrived)[i] = true;
                } else {
                    c_[i] += slope_[i] * dt;
                }
            }
            if (t_next <= t) {
                // Interval vanished in floating point; keep the breakpoint list increasing.
                for (std::size_t i = 0; i < n_; ++i) {
                    start_values[i].pop_back();
                    slopes[i].pop_back();
                }
                result.interval_states.pop_back();
                t = t_next;
                continue;
            }
            t = t_next;
            result.times.push_back(t);
        }
        for (std::size_t i = 0; i < n_; ++i) {
            std::vector<Segment> segs;
            for (std::size_t k = 0; k < slopes[i].size(); ++k) {
                segs.push_back({slopes[i][k], start_values[i][k] - slopes[i][k] * result.times[k]});
            }
            result.trajectories.emplace_back(result.times, std::move(segs), OutsideMode::zero);
        }
        return result;
    }

  private:
    struct Target {
        double value;
        bool is_floor;
    };
    struct NextEvent {
        double dt;
        std::vector<std::optional<Target>> targets;
    };

    [[nodiscard]] Elem classify(std::size_t i, const std::vector<bool> &held, const std::vector<int> &dir) const {
        const auto k = delta_.at_threshold(i, c_[i]);
        if (!k) {
            return delta_.band_level(i, c_[i]);
        }
        if (held[i] || dir[i] == 0) {
            return delta_.equal_level(i, *k);
        }
        return delta_.side_level(i, *k, dir[i]);
    }

    [[nodiscard]] State classify_all() const {
        State s(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            s[i] = classify(i, held_, dir_);
        }
        return s;
    }

    [[nodiscard]] double raw_slope(std::size_t i, const State &activity) const {
        double s = rates_.slope(i, activity[i]);
        if (rates_.floor_at_zero() && s < 0 && c_[i] <= floor_tolerance) {
            s = 0;
        }
        return s;
    }

    // Settles which genes sitting on a threshold pass through, stay, or leave,
    // then fixes the slopes for the coming interval.
    void resolve() {
        const std::size_t max_rounds = 4 * n_ + 4;
        for (std::size_t round = 0; round < max_rounds; ++round) {
            const State sigma = classify_all();
            const State activity = map_.apply_unchecked(sigma);
            bool changed = false;
            for (std::size_t i = 0; i < n_; ++i) {
                slope_[i] = raw_slope(i, activity);
            }
            for (std::size_t i = 0; i < n_; ++i) {
                const auto k = delta_.at_threshold(i, c_[i]);
                if (!k) {
                    continue;
                }
                if (!held_[i]) {
                    if (sign(slope_[i]) != dir_[i]) {
                        held_[i] = true;
                        changed = true;
                    }
                    continue;
                }
                const int d = sign(slope_[i]);
                if (d == 0) {
                    continue;
                }
                State probe = sigma;
                probe[i] = delta_.side_level(i, *k, d);
                const State leave = map_.apply_unchecked(probe);
                if (sign(raw_slope(i, leave)) == d) {
                    held_[i] = false;
                    dir_[i] = d;
                    changed = true;
                }
            }
            if (!changed) {
                break;
            }
        }
        for (std::size_t i = 0; i < n_; ++i) {
            if (held_[i]) {
                slope_[i] = 0;
                dir_[i] = 0;
            } else {
                dir_[i] = sign(slope_[i]);
            }
        }
    }

    [[nodiscard]] std::optional<NextEvent> next_event() const {
        const double eps = delta_.epsilon();
        std::vector<std::optional<Target>> best(n_);
        std::vector<double> dts(n_, INFINITY);
        double dt_min = INFINITY;
        for (std::size_t i = 0; i < n_; ++i) {
            const double s = slope_[i];
            if (s == 0) {
                continue;
            }
            std::optional<Target> target;
            for (const auto &th : delta_.genes()[i].thresholds) {
                if (s > 0 && th.value > c_[i] + eps) {
                    target = Target{th.value, false};
                    break;
                }
                if (s < 0 && th.value < c_[i] - eps) {
                    target = Target{th.value, false};
                }
            }
            if (s < 0 && rates_.floor_at_zero() && c_[i] > floor_tolerance && (!target || target->value < 0)) {
                target = Target{0.0, true};
            }
            if (!target) {
                continue;
            }
            best[i] = target;
            dts[i] = (target->value - c_[i]) / s;
            dt_min = std::min(dt_min, dts[i]);
        }
        if (!std::isfinite(dt_min)) {
            return std::nullopt;
        }
        NextEvent ev{dt_min, std::vector<std::optional<Target>>(n_)};
        const double tol = 1e-12 * std::max(1.0, dt_min);
        for (std::size_t i = 0; i < n_; ++i) {
            if (best[i] && dts[i] - dt_min <= tol) {
                ev.targets[i] = best[i];
            }
        }
        return ev;
    }

    void log_events(HybridResult &result, double t, const State &before, const State &after,
                    const std::vector<bool> &arrived, const std::vector<bool> &floored,
                    const std::vector<bool> &was_held) const {
        for (std::size_t i = 0; i < n_; ++i) {
            std::optional<HybridEvent::Kind> kind;
            double threshold = 0;
            if (arrived[i]) {
                kind = held_[i] ? HybridEvent::Kind::hold : HybridEvent::Kind::crossing;
                threshold = c_[i];
            } else if (floored[i]) {
                kind = HybridEvent::Kind::floor;
            } else if (was_held[i] && !held_[i]) {
                kind = HybridEvent::Kind::release;
                threshold = c_[i];
            }
            if (kind) {
                result.events.push_back({t, i, threshold, *kind, before, after});
            }
        }
    }

    GlobalMap map_;
    const RatePolicy &rates_;
    const ThresholdMap &delta_;
    std::size_t n_;
    Concentrations c_;
    std::vector<bool> held_;
    std::vector<int> dir_;
    std::vector<double> slope_;
};

} // namespace

HybridResult hybrid_simulate(const GsdsModel &m, const RatePolicy &rates, const ThresholdMap &delta,
                             std::span<const double> c0, double t_end, const HybridOptions &options) {
    return HybridSimulator(m, rates, delta, c0).run(t_end, options);
}

} // namespace gsds

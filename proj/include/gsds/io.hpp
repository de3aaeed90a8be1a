#pragma once

// File formats. Every JSON document carries "format_version": 1.

#include <string>
#include <string_view>
#include <vector>

#include "gsds/continuous.hpp"
#include "gsds/infer.hpp"
#include "gsds/network.hpp"
#include "gsds/translate.hpp"

namespace gsds::io {

inline constexpr int format_version = 1;

/// Model file:
///   {"format_version": 1, "field": q, "genes": [...],
///    "states": {gene: [codes]} | [[codes], ...]   (optional, canonical codes),
///    "edges": [[from, to], ...], "locals": {gene: "polynomial"},
///    "schedule": [gene, ...], "display": "canonical" | "balanced",
///    "update": "sequential" | "parallel"}
[[nodiscard]] GsdsModel parse_model(std::string_view text);
[[nodiscard]] std::string write_model(const GsdsModel &m);

/// A sequence of discrete states with its field and gene names.
struct StateSeries {
    Field field{2};
    Encoding encoding = Encoding::canonical;
    std::vector<std::string> genes;
    std::vector<State> states; ///< canonical codes
};

/// {"format_version": 1, "field": q, "encoding": "canonical"|"balanced",
///  "genes": [...], "states": [[...], ...]} with values in the declared encoding.
[[nodiscard]] StateSeries parse_series(std::string_view text);
[[nodiscard]] std::string write_series(const StateSeries &s);

/// Samples of real concentrations, read from CSV with header t,g1,...,gn.
struct TimeSeries {
    std::vector<std::string> genes;
    std::vector<double> times;
    std::vector<Concentrations> samples;
};

[[nodiscard]] TimeSeries parse_csv(std::string_view text);
[[nodiscard]] std::string write_csv(const TimeSeries &s);

/// {"format_version": 1, "field": q, "encoding": ..., "epsilon": e,
///  "genes": [{"name": g, "thresholds": [{"threshold": v, "below_level": l,
///             "equal_level": l}], "top_level": l}]}
/// equal_level is optional.
struct ThresholdFile {
    std::vector<std::string> genes;
    ThresholdMap map;
    Encoding encoding;
};

[[nodiscard]] ThresholdFile parse_thresholds(std::string_view text);
[[nodiscard]] std::string write_thresholds(const ThresholdMap &delta, const std::vector<std::string> &genes,
                                           Encoding encoding);

/// {"format_version": 1, "field": q, "encoding": ..., "floor_at_zero": true,
///  "genes": [{"name": g, "rates": {"level": slope, ...}}]}
[[nodiscard]] RatePolicy parse_rates(std::string_view text);

/// Breakpoint rows t,g1,...,gn of a hybrid run.
[[nodiscard]] std::string trajectory_csv(const HybridResult &r, const std::vector<std::string> &genes);
/// time,gene,kind,threshold,before,after
[[nodiscard]] std::string events_csv(const HybridResult &r, const std::vector<std::string> &genes,
                                     const Field &field, Encoding display);
[[nodiscard]] std::string hybrid_json(const HybridResult &r, const std::vector<std::string> &genes,
                                      const Field &field, Encoding display);

[[nodiscard]] std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view content);

} // namespace gsds::io

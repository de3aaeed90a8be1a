#include "gsds/translate.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gsds {

ThresholdMap::ThresholdMap(Field field, std::vector<GeneThresholds> genes, double epsilon)
    : field_(field), genes_(std::move(genes)), epsilon_(epsilon) {
    if (!(epsilon_ >= 0.0)) {
        throw Error("threshold epsilon must be non-negative");
    }
    for (std::size_t g = 0; g < genes_.size(); ++g) {
        const auto &ts = genes_[g].thresholds;
        for (std::size_t k = 0; k < ts.size(); ++k) {
            if (!std::isfinite(ts[k].value)) {
                throw Error("threshold of gene " + std::to_string(g + 1) + " is not finite");
            }
            if (k > 0 && !(ts[k].value > ts[k - 1].value)) {
                throw Error("thresholds of gene " + std::to_string(g + 1) + " must be strictly increasing");
            }
            if (!field_.contains(ts[k].below) || (ts[k].equal && !field_.contains(*ts[k].equal))) {
                throw Error("threshold level outside the field");
            }
        }
        if (!field_.contains(genes_[g].top)) {
            throw Error("threshold level outside the field");
        }
    }
}

bool operator==(const ThresholdMap &a, const ThresholdMap &b) {
    return a.field_ == b.field_ && a.genes_ == b.genes_ && a.epsilon_ == b.epsilon_;
}

std::optional<std::size_t> ThresholdMap::at_threshold(std::size_t gene, double c) const {
    const auto &ts = genes_.at(gene).thresholds;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (std::abs(c - ts[k].value) <= epsilon_) {
            return k;
        }
    }
    return std::nullopt;
}

Elem ThresholdMap::band_level(std::size_t gene, double c) const {
    const auto &g = genes_.at(gene);
    for (const auto &t : g.thresholds) {
        if (c < t.value) {
            return t.below;
        }
    }
    return g.top;
}

Elem ThresholdMap::side_level(std::size_t gene, std::size_t k, int direction) const {
    const auto &g = genes_.at(gene);
    if (direction < 0) {
        return g.thresholds.at(k).below;
    }
    return k + 1 < g.thresholds.size() ? g.thresholds[k + 1].below : g.top;
}

Elem ThresholdMap::equal_level(std::size_t gene, std::size_t k) const {
    const auto &t = genes_.at(gene).thresholds.at(k);
    return t.equal ? *t.equal : side_level(gene, k, +1);
}

Elem ThresholdMap::level(std::size_t gene, double c) const {
    if (const auto k = at_threshold(gene, c)) {
        return equal_level(gene, *k);
    }
    return band_level(gene, c);
}

std::size_t ThresholdMap::band_position(std::size_t gene, double c) const {
    if (const auto k = at_threshold(gene, c)) {
        return 2 * *k + 1;
    }
    const auto &ts = genes_.at(gene).thresholds;
    std::size_t k = 0;
    while (k < ts.size() && c >= ts[k].value) {
        ++k;
    }
    return 2 * k;
}

State discretize(const ThresholdMap &delta, std::span<const double> c) {
    if (c.size() != delta.size()) {
        throw ArityError("concentration vector has " + std::to_string(c.size()) + " entries, threshold map covers " +
                         std::to_string(delta.size()) + " genes");
    }
    State s(c.size());
    for (std::size_t g = 0; g < c.size(); ++g) {
        s[g] = delta.level(g, c[g]);
    }
    return s;
}

std::vector<State> discretize_series(const ThresholdMap &delta, const std::vector<Concentrations> &samples,
                                     bool collapse) {
    std::vector<State> out;
    out.reserve(samples.size());
    for (const auto &row : samples) {
        auto s = discretize(delta, row);
        if (collapse && !out.empty() && out.back() == s) {
            continue;
        }
        out.push_back(std::move(s));
    }
    return out;
}

TranslationCheck check_translated(const GlobalMap &f,
                                  const std::vector<std::pair<Concentrations, Concentrations>> &pairs,
                                  const ThresholdMap &delta) {
    if (delta.size() != f.size()) {
        throw ArityError("threshold map covers " + std::to_string(delta.size()) + " genes, map has " +
                         std::to_string(f.size()));
    }
    TranslationCheck result;
    result.pairs = pairs.size();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto before = discretize(delta, pairs[i].first);
        auto observed = discretize(delta, pairs[i].second);
        auto predicted = f.apply_unchecked(before);
        if (observed == predicted) {
            ++result.passed;
        } else {
            result.counterexamples.push_back({i, std::move(observed), std::move(predicted)});
        }
    }
    return result;
}

TranslationCheck check_translated(const GlobalMap &f, const std::vector<Concentrations> &series,
                                  const ThresholdMap &delta) {
    std::vector<std::pair<Concentrations, Concentrations>> pairs;
    for (std::size_t i = 0; i + 1 < series.size(); ++i) {
        pairs.emplace_back(series[i], series[i + 1]);
    }
    return check_translated(f, pairs, delta);
}

LevelScheme default_levels(const Field &field) {
    if (field.supports_balanced()) {
        return {field.balanced_encode(-1), 0, 1};
    }
    return {0, 1, 1};
}

std::vector<ThresholdCandidate> midpoint_candidates(std::vector<double> observed) {
    std::sort(observed.begin(), observed.end());
    observed.erase(std::unique(observed.begin(), observed.end()), observed.end());
    std::vector<ThresholdCandidate> out;
    if (observed.empty()) {
        return out;
    }
    const double spread = observed.back() - observed.front();
    const double margin = spread > 0 ? spread / 2 : std::max(std::abs(observed.front()) / 2, 0.5);
    out.push_back({observed.front() - margin, false});
    for (std::size_t k = 0; k < observed.size(); ++k) {
        if (k > 0) {
            out.push_back({(observed[k - 1] + observed[k]) / 2, false});
        }
        out.push_back({observed[k], true});
    }
    out.push_back({observed.back() + margin, false});
    return out;
}

std::vector<ThresholdMap> search_compatible_thresholds(const std::vector<Concentrations> &series,
                                                       const GlobalMap &f, const CandidateGrid &grid) {
    if (series.size() < 2) {
        throw Error("threshold search needs at least two samples");
    }
    const std::size_t n = f.size();
    for (const auto &row : series) {
        if (row.size() != n) {
            throw ArityError("sample width does not match the map");
        }
    }
    const Field &field = f.domain().field();
    const LevelScheme levels = grid.levels.value_or(default_levels(field));

    std::vector<std::vector<ThresholdCandidate>> cands(n);
    for (std::size_t g = 0; g < n; ++g) {
        if (grid.mode == CandidateGrid::Mode::explicit_list) {
            if (grid.candidates.size() != n) {
                throw ArityError("explicit grid must list candidates for every gene");
            }
            cands[g] = grid.candidates[g];
        } else {
            std::vector<double> observed;
            for (const auto &row : series) {
                observed.push_back(row[g]);
            }
            cands[g] = midpoint_candidates(std::move(observed));
        }
        std::stable_sort(cands[g].begin(), cands[g].end(),
                         [](const auto &a, const auto &b) { return a.value < b.value; });
        if (cands[g].empty()) {
            throw Error("empty candidate grid for gene " + std::to_string(g + 1));
        }
    }

    auto gene_map = [&](const ThresholdCandidate &c) {
        GeneThresholds gt;
        gt.thresholds.push_back(
            {c.value, levels.below, c.anchor ? std::optional<Elem>(levels.equal) : std::optional<Elem>{}});
        gt.top = levels.above;
        return gt;
    };

    // levels[g][k][t]: discretized level of gene g at sample t under candidate k
    std::vector<std::vector<std::vector<Elem>>> seq(n);
    std::uint64_t combos = 1;
    for (std::size_t g = 0; g < n; ++g) {
        for (const auto &c : cands[g]) {
            const ThresholdMap single(field, {gene_map(c)});
            std::vector<Elem> s;
            for (const auto &row : series) {
                s.push_back(single.level(0, row[g]));
            }
            seq[g].push_back(std::move(s));
        }
        combos *= cands[g].size();
        if (combos > grid.combination_limit) {
            throw LimitError("threshold search exceeds " + std::to_string(grid.combination_limit) + " combinations");
        }
    }

    const auto total = static_cast<std::int64_t>(combos);
    const std::size_t T = series.size();
    std::vector<std::uint8_t> ok(static_cast<std::size_t>(total), 0);
#ifdef _OPENMP
    const int threads = grid.workers > 0 ? grid.workers : omp_get_max_threads();
#pragma omp parallel for num_threads(threads) schedule(dynamic, 64)
#endif
    for (std::int64_t idx = 0; idx < total; ++idx) {
        std::vector<std::size_t> pick(n);
        auto r = static_cast<std::uint64_t>(idx);
        for (std::size_t g = n; g-- > 0;) {
            pick[g] = static_cast<std::size_t>(r % cands[g].size());
            r /= cands[g].size();
        }
        State x(n);
        State y(n);
        State next(n);
        bool pass = true;
        for (std::size_t t = 0; t + 1 < T && pass; ++t) {
            for (std::size_t g = 0; g < n; ++g) {
                x[g] = seq[g][pick[g]][t];
                next[g] = seq[g][pick[g]][t + 1];
            }
            f.apply(x, y);
            pass = y == next;
        }
        ok[static_cast<std::size_t>(idx)] = pass ? 1 : 0;
    }

    std::vector<ThresholdMap> out;
    for (std::int64_t idx = 0; idx < total; ++idx) {
        if (!ok[static_cast<std::size_t>(idx)]) {
            continue;
        }
        auto r = static_cast<std::uint64_t>(idx);
        std::vector<GeneThresholds> genes(n);
        for (std::size_t g = n; g-- > 0;) {
            genes[g] = gene_map(cands[g][r % cands[g].size()]);
            r /= cands[g].size();
        }
        out.emplace_back(field, std::move(genes));
    }
    return out;
}

} // namespace gsds

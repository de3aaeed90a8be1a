#include "gsds/infer.hpp"

#include <algorithm>
#include <map>

namespace gsds {

namespace {

std::string state_text(const State &s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += (i ? "," : "") + std::to_string(s[i]);
    }
    return out + ")";
}

std::uint64_t full_size(const Field &field, std::size_t n, std::uint64_t limit) {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < n; ++i) {
        size *= field.order();
        if (size > limit) {
            return limit + 1;
        }
    }
    return size;
}

} // namespace

TransitionData::TransitionData(Field field, std::size_t n, std::vector<std::pair<State, State>> pairs)
    : field_(field), n_(n), pairs_(std::move(pairs)) {
    std::map<State, std::size_t> first_seen;
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
        const auto &[in, out] = pairs_[k];
        if (in.size() != n_ || out.size() != n_) {
            throw ArityError("transition " + std::to_string(k) + " does not have " + std::to_string(n_) + " genes");
        }
        for (const auto v : in) {
            if (!field_.contains(v)) {
                throw FieldMismatchError("transition " + std::to_string(k) + " has a value outside GF(" +
                                         std::to_string(field_.order()) + ")");
            }
        }
        for (const auto v : out) {
            if (!field_.contains(v)) {
                throw FieldMismatchError("transition " + std::to_string(k) + " has a value outside GF(" +
                                         std::to_string(field_.order()) + ")");
            }
        }
        const auto [it, inserted] = first_seen.try_emplace(in, k);
        if (inserted) {
            inputs_.push_back(in);
            images_.push_back(out);
        } else if (pairs_[it->second].second != out) {
            throw ContradictoryDataError("input " + state_text(in) + " maps to " +
                                             state_text(pairs_[it->second].second) + " in transition " +
                                             std::to_string(it->second) + " and to " + state_text(out) +
                                             " in transition " + std::to_string(k),
                                         it->second, k);
        }
    }
}

TransitionData TransitionData::from_series(Field field, const std::vector<State> &series) {
    if (series.empty()) {
        throw Error("state series is empty");
    }
    std::vector<std::pair<State, State>> pairs;
    for (std::size_t k = 0; k + 1 < series.size(); ++k) {
        pairs.emplace_back(series[k], series[k + 1]);
    }
    return {field, series.front().size(), std::move(pairs)};
}

std::vector<Elem> TransitionData::outputs(std::size_t coordinate) const {
    if (coordinate >= n_) {
        throw ArityError("coordinate " + std::to_string(coordinate) + " out of range");
    }
    std::vector<Elem> out;
    out.reserve(images_.size());
    for (const auto &img : images_) {
        out.push_back(img[coordinate]);
    }
    return out;
}

Polynomial interpolate(const TransitionData &data, std::size_t coordinate) {
    const auto outputs = data.outputs(coordinate);
    const Field &field = data.field();
    constexpr std::uint64_t dense_limit = 1U << 22;
    const std::uint64_t size = full_size(field, data.n(), dense_limit);
    if (size <= dense_limit) {
        const auto domain = ProductDomain::full(field, data.n());
        std::vector<Elem> table(size, 0);
        for (std::size_t k = 0; k < outputs.size(); ++k) {
            table[domain.index_of(data.inputs()[k])] = outputs[k];
        }
        return interpolate_table(field, data.n(), table);
    }
    Polynomial p(field, data.n());
    for (std::size_t k = 0; k < outputs.size(); ++k) {
        if (outputs[k] != 0) {
            p += indicator_poly(field, data.inputs()[k]).scale(outputs[k]);
        }
    }
    return p;
}

SolutionSpace::SolutionSpace(const TransitionData &data, std::size_t coordinate)
    : field_(data.field()), n_(data.n()), inputs_(data.inputs()), outputs_(data.outputs(coordinate)),
      particular_(interpolate(data, coordinate)) {
    const std::uint64_t cap = ~std::uint64_t{0} / field_.order();
    const std::uint64_t size = full_size(field_, n_, cap);
    if (size > cap) {
        throw LimitError("GF(" + std::to_string(field_.order()) + ")^" + std::to_string(n_) + " is too large");
    }
    dimension_ = size - inputs_.size();
}

std::vector<State> SolutionSpace::unspecified_points(std::uint64_t limit) const {
    if (dimension_ > limit) {
        throw LimitError(std::to_string(dimension_) + " unspecified points exceed the limit of " +
                         std::to_string(limit));
    }
    const auto domain = ProductDomain::full(field_, n_);
    std::vector<bool> specified(domain.size(), false);
    for (const auto &in : inputs_) {
        specified[domain.index_of(in)] = true;
    }
    std::vector<State> out;
    out.reserve(dimension_);
    for (std::uint64_t k = 0; k < domain.size(); ++k) {
        if (!specified[k]) {
            out.push_back(domain.point(k));
        }
    }
    return out;
}

std::vector<Polynomial> SolutionSpace::basis(std::uint64_t limit) const {
    std::vector<Polynomial> out;
    for (const auto &u : unspecified_points(limit)) {
        out.push_back(indicator_poly(field_, u));
    }
    return out;
}

bool SolutionSpace::contains(const Polynomial &p) const {
    if (p.field() != field_ || p.n_vars() != n_) {
        return false;
    }
    for (std::size_t k = 0; k < inputs_.size(); ++k) {
        if (p.eval(inputs_[k]) != outputs_[k]) {
            return false;
        }
    }
    return true;
}

namespace {

std::vector<std::size_t> checked_allowed(const TransitionData &data, std::vector<std::size_t> allowed) {
    std::sort(allowed.begin(), allowed.end());
    allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
    if (!allowed.empty() && allowed.back() >= data.n()) {
        throw ArityError("allowed variable x" + std::to_string(allowed.back() + 1) + " out of range");
    }
    return allowed;
}

/// Exponent vectors over the allowed variables, ascending degree, ties in
/// ascending lexicographic order.
std::vector<Exponents> monomials_over(const Field &field, std::size_t n, const std::vector<std::size_t> &allowed) {
    std::vector<Exponents> out{Exponents(n, 0)};
    for (const auto v : allowed) {
        std::vector<Exponents> next;
        next.reserve(out.size() * field.order());
        for (const auto &e : out) {
            for (unsigned d = 0; d < field.order(); ++d) {
                auto f = e;
                f[v] = static_cast<std::uint16_t>(d);
                next.push_back(std::move(f));
            }
        }
        out = std::move(next);
    }
    const GradedLexGreater greater;
    std::sort(out.begin(), out.end(), [&](const auto &a, const auto &b) { return greater(b, a); });
    return out;
}

} // namespace

std::optional<Polynomial> constrained_interpolate(const TransitionData &data, std::size_t coordinate,
                                                  const std::vector<std::size_t> &allowed_in) {
    const Field &field = data.field();
    const auto allowed = checked_allowed(data, allowed_in);
    const auto outputs = data.outputs(coordinate);
    const std::size_t rows = outputs.size();
    constexpr std::uint64_t entry_limit = 1U << 26;
    const std::uint64_t cols64 = full_size(field, allowed.size(), entry_limit);
    if (cols64 * std::max<std::size_t>(rows, 1) > entry_limit) {
        throw LimitError("constrained interpolation system is too large");
    }
    const auto monomials = monomials_over(field, data.n(), allowed);
    const std::size_t cols = monomials.size();

    // Augmented matrix, row-major, last column is the right-hand side.
    const std::size_t width = cols + 1;
    std::vector<Elem> a(rows * width);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto &x = data.inputs()[r];
        for (std::size_t c = 0; c < cols; ++c) {
            Elem v = 1;
            for (const auto j : allowed) {
                v = field.mul(v, field.pow(x[j], monomials[c][j]));
            }
            a[r * width + c] = v;
        }
        a[r * width + cols] = outputs[r];
    }

    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p * width + c] == 0) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        if (p != rank) {
            std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(p * width),
                             a.begin() + static_cast<std::ptrdiff_t>((p + 1) * width),
                             a.begin() + static_cast<std::ptrdiff_t>(rank * width));
        }
        const Elem inv = field.inv(a[rank * width + c]);
        for (std::size_t k = c; k < width; ++k) {
            a[rank * width + k] = field.mul(a[rank * width + k], inv);
        }
        for (std::size_t r = 0; r < rows; ++r) {
            const Elem factor = a[r * width + c];
            if (r == rank || factor == 0) {
                continue;
            }
            for (std::size_t k = c; k < width; ++k) {
                a[r * width + k] = field.sub(a[r * width + k], field.mul(factor, a[rank * width + k]));
            }
        }
        pivot_col.push_back(c);
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r) {
        if (a[r * width + cols] != 0) {
            return std::nullopt;
        }
    }
    Polynomial p(field, data.n());
    for (std::size_t r = 0; r < rank; ++r) {
        p.add_term(a[r * width + cols], monomials[pivot_col[r]]);
    }
    return p;
}

bool depends_only_on(const TransitionData &data, std::size_t coordinate, const std::vector<std::size_t> &allowed_in) {
    const auto allowed = checked_allowed(data, allowed_in);
    const auto outputs = data.outputs(coordinate);
    // Monomials in the allowed variables realize every function of those
    // variables, so feasibility is consistency of the projected data.
    std::map<State, Elem> seen;
    for (std::size_t k = 0; k < outputs.size(); ++k) {
        State key;
        key.reserve(allowed.size());
        for (const auto j : allowed) {
            key.push_back(data.inputs()[k][j]);
        }
        const auto [it, inserted] = seen.try_emplace(std::move(key), outputs[k]);
        if (!inserted && it->second != outputs[k]) {
            return false;
        }
    }
    return true;
}

namespace {

Polynomial sparsest_for(const TransitionData &data, std::size_t coordinate) {
    const std::size_t n = data.n();
    for (std::size_t size = 0; size <= n; ++size) {
        // Lexicographic enumeration of size-element subsets of {0..n-1}.
        std::vector<std::size_t> subset(size);
        for (std::size_t k = 0; k < size; ++k) {
            subset[k] = k;
        }
        for (;;) {
            if (depends_only_on(data, coordinate, subset)) {
                if (auto p = constrained_interpolate(data, coordinate, subset)) {
                    return *p;
                }
            }
            std::size_t k = size;
            while (k > 0 && subset[k - 1] == n - size + k - 1) {
                --k;
            }
            if (k == 0) {
                break;
            }
            ++subset[k - 1];
            for (std::size_t j = k; j < size; ++j) {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }
    // The full variable set is always feasible for deterministic data.
    return interpolate(data, coordinate);
}

} // namespace

InferenceResult infer_network(const TransitionData &data, const InferenceOptions &options) {
    const std::size_t n = data.n();
    if (data.pairs().empty()) {
        throw Error("inference needs at least two states");
    }
    if (options.preference == Preference::sparsest && n > options.sparsest_gene_limit) {
        throw LimitError("sparsest inference is limited to " + std::to_string(options.sparsest_gene_limit) +
                         " genes, data has " + std::to_string(n));
    }
    std::vector<std::string> names = options.names;
    if (names.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            names.push_back("g" + std::to_string(i + 1));
        }
    }
    if (names.size() != n) {
        throw ArityError("expected " + std::to_string(n) + " gene names");
    }
    const Field &field = data.field();
    const auto domain = ProductDomain::full(field, n);
    DependencyGraph graph(names);
    std::vector<InferredCoordinate> coords;
    std::vector<Polynomial> polys;
    for (std::size_t i = 0; i < n; ++i) {
        const SolutionSpace space(data, i);
        Polynomial p = options.preference == Preference::canonical ? space.particular() : sparsest_for(data, i);
        auto inputs = support_vars(p, domain);
        for (const auto j : inputs) {
            graph.add_edge(j, i);
        }
        coords.push_back({p, space.dimension(), std::move(inputs)});
        polys.push_back(std::move(p));
    }
    std::vector<std::size_t> word(n);
    for (std::size_t i = 0; i < n; ++i) {
        word[i] = i;
    }
    GsdsModel model(std::move(graph), domain, std::move(polys), Schedule{word}, UpdateMode::parallel,
                    options.display);
    return {std::move(model), std::move(coords)};
}

InferenceResult infer_network(const Field &field, const std::vector<State> &series, const InferenceOptions &options) {
    if (series.size() < 2) {
        throw Error("inference needs at least two states");
    }
    return infer_network(TransitionData::from_series(field, series), options);
}

} // namespace gsds

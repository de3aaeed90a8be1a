#pragma once

// Reverse engineering of polynomial networks from observed transitions.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsds/network.hpp"

namespace gsds {

/// A partially defined map GF(q)^n -> GF(q)^n given by observed pairs.
class TransitionData {
  public:
    /// Throws ArityError / FieldMismatchError for malformed states and
    /// ContradictoryDataError when one input has two different outputs.
    TransitionData(Field field, std::size_t n, std::vector<std::pair<State, State>> pairs);

    /// Consecutive pairs of a state sequence.
    static TransitionData from_series(Field field, const std::vector<State> &series);

    [[nodiscard]] const Field &field() const noexcept { return field_; }
    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] const std::vector<std::pair<State, State>> &pairs() const noexcept { return pairs_; }

    /// Distinct inputs in order of first appearance.
    [[nodiscard]] const std::vector<State> &inputs() const noexcept { return inputs_; }
    /// Output of coordinate i at each distinct input.
    [[nodiscard]] std::vector<Elem> outputs(std::size_t coordinate) const;

  private:
    Field field_;
    std::size_t n_;
    std::vector<std::pair<State, State>> pairs_;
    std::vector<State> inputs_;
    std::vector<State> images_;
};

/// The unique interpolant of coordinate i that vanishes on every unspecified
/// point of GF(q)^n.
[[nodiscard]] Polynomial interpolate(const TransitionData &data, std::size_t coordinate);

/// All polynomials agreeing with one coordinate of the data:
/// particular + span{indicator(u) : u unspecified}.
class SolutionSpace {
  public:
    SolutionSpace(const TransitionData &data, std::size_t coordinate);

    [[nodiscard]] const Polynomial &particular() const noexcept { return particular_; }
    [[nodiscard]] std::uint64_t dimension() const noexcept { return dimension_; }

    /// Points of GF(q)^n without data, in mixed-radix order.
    [[nodiscard]] std::vector<State> unspecified_points(std::uint64_t limit = 1U << 20) const;
    /// Indicator polynomials of the unspecified points, in the same order.
    [[nodiscard]] std::vector<Polynomial> basis(std::uint64_t limit = 1U << 16) const;

    /// p belongs to the space iff it takes the observed value at every input.
    [[nodiscard]] bool contains(const Polynomial &p) const;

  private:
    Field field_;
    std::size_t n_;
    std::vector<State> inputs_;
    std::vector<Elem> outputs_;
    Polynomial particular_;
    std::uint64_t dimension_;
};

/// A member of the solution space using only the variables in `allowed`
/// (0-based), found by Gaussian elimination over the monomials in those
/// variables. Pivots prefer monomials of lower degree; free unknowns are
/// set to zero. nullopt when no such member exists.
[[nodiscard]] std::optional<Polynomial> constrained_interpolate(const TransitionData &data, std::size_t coordinate,
                                                                const std::vector<std::size_t> &allowed);

/// True when the data of this coordinate is a function of the variables in
/// `allowed`, i.e. constrained_interpolate succeeds.
[[nodiscard]] bool depends_only_on(const TransitionData &data, std::size_t coordinate,
                                   const std::vector<std::size_t> &allowed);

enum class Preference {
    sparsest,  ///< fewest support variables, ties broken lexicographically
    canonical, ///< the interpolant vanishing off the data
};

struct InferredCoordinate {
    Polynomial polynomial;
    std::uint64_t dimension;
    std::vector<std::size_t> inputs; ///< support variables on the declared domain
};

struct InferenceResult {
    GsdsModel model; ///< parallel form, full field as state space
    std::vector<InferredCoordinate> coordinates;
};

struct InferenceOptions {
    Preference preference = Preference::sparsest;
    std::vector<std::string> names; ///< defaults to g1 ... gn
    Encoding display = Encoding::canonical;
    /// Sparsest search enumerates variable subsets; larger n is refused.
    std::size_t sparsest_gene_limit = 12;
};

[[nodiscard]] InferenceResult infer_network(const Field &field, const std::vector<State> &series,
                                            const InferenceOptions &options = {});
[[nodiscard]] InferenceResult infer_network(const TransitionData &data, const InferenceOptions &options = {});

} // namespace gsds

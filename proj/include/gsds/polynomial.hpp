#pragma once

// Reduced multivariate polynomials over GF(q).
//
// A Polynomial is always stored normalized: every exponent lies in [0, q-1]
// (via x^q = x), like monomials are merged and zero coefficients dropped. The
// normalized form is the unique representative of a function GF(q)^n -> GF(q).
// Variables are 0-based internally and rendered 1-based as x1 ... xn.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gsds/ffield.hpp"

namespace gsds {

using Exponents = std::vector<std::uint16_t>;

struct Monomial {
    Elem coefficient;
    Exponents exponents;
};

/// Descending graded lexicographic order: higher total degree first, ties
/// broken by comparing exponent vectors left to right, larger first.
struct GradedLexGreater {
    bool operator()(const Exponents &a, const Exponents &b) const noexcept;
};

class Polynomial {
  public:
    using TermMap = std::map<Exponents, Elem, GradedLexGreater>;

    /// Zero polynomial.
    Polynomial(Field field, std::size_t n_vars);

    static Polynomial constant(Field field, std::size_t n_vars, Elem value);
    /// x_{index+1}
    static Polynomial variable(Field field, std::size_t n_vars, std::size_t index);

    [[nodiscard]] const Field &field() const noexcept { return field_; }
    [[nodiscard]] std::size_t n_vars() const noexcept { return n_vars_; }
    [[nodiscard]] const TermMap &terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t term_count() const noexcept { return terms_.size(); }
    [[nodiscard]] unsigned total_degree() const noexcept;

    /// Coefficient of the monomial with the given (normalized) exponents.
    [[nodiscard]] Elem coefficient(const Exponents &exps) const;

    /// Unchecked evaluation on canonical codes; point.size() must equal n_vars.
    [[nodiscard]] Elem eval(std::span<const Elem> point) const;
    /// Checked evaluation: arity and field are verified.
    [[nodiscard]] FieldElement eval(const std::vector<FieldElement> &point) const;

    /// 0-based indices of the variables occurring in the normalized form.
    [[nodiscard]] std::vector<std::size_t> support() const;

    /// p(g_1, ..., g_n). All g_i must share a field and arity.
    [[nodiscard]] Polynomial substitute(const std::vector<Polynomial> &values) const;

    /// Same polynomial viewed in a ring with more variables; variable i maps to
    /// variable mapping[i].
    [[nodiscard]] Polynomial remap(std::size_t new_n_vars, const std::vector<std::size_t> &mapping) const;

    [[nodiscard]] Polynomial pow(unsigned long long e) const;
    [[nodiscard]] Polynomial scale(Elem c) const;

    /// Text in the parse_poly grammar. Balanced display writes negative
    /// coefficients with '-' (ignored for fields without a balanced form).
    [[nodiscard]] std::string render(Encoding display = Encoding::canonical) const;

    /// Adds c * x^exps, normalizing exponents first.
    void add_term(Elem c, Exponents exps);

    Polynomial &operator+=(const Polynomial &other);
    Polynomial &operator-=(const Polynomial &other);

    friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
    friend Polynomial operator-(const Polynomial &a);
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b);
    friend bool operator==(const Polynomial &, const Polynomial &) = default;

  private:
    void require_compatible(const Polynomial &other) const;

    Field field_;
    std::size_t n_vars_;
    TermMap terms_;
};

/// Reduced exponent: e > 0 becomes ((e - 1) mod (q - 1)) + 1.
[[nodiscard]] std::uint16_t reduce_exponent(const Field &field, unsigned long long e) noexcept;

/// Normalizes an arbitrary list of monomials (exponents unbounded,
/// coefficients possibly zero, repeats allowed).
[[nodiscard]] Polynomial normalize(const Field &field, std::size_t n_vars, std::span<const Monomial> raw);

/// Polynomial that is 1 at `point` and 0 elsewhere:
/// prod_j (1 - (x_j - a_j)^(q-1)).
[[nodiscard]] Polynomial indicator_poly(const Field &field, std::span<const Elem> point);

/// Mixed-radix enumeration of a product domain; variable 0 is most
/// significant and each factor is listed in the given order.
class ProductDomain {
  public:
    ProductDomain(Field field, std::vector<std::vector<Elem>> factors);
    /// Full domain GF(q)^n.
    static ProductDomain full(Field field, std::size_t n_vars);

    [[nodiscard]] const Field &field() const noexcept { return field_; }
    [[nodiscard]] std::size_t n_vars() const noexcept { return factors_.size(); }
    [[nodiscard]] const std::vector<std::vector<Elem>> &factors() const noexcept { return factors_; }
    [[nodiscard]] std::uint64_t size() const noexcept { return size_; }
    [[nodiscard]] bool is_full() const noexcept;

    void point(std::uint64_t index, std::span<Elem> out) const;
    [[nodiscard]] std::vector<Elem> point(std::uint64_t index) const;
    /// Throws StateError when the point lies outside the domain.
    [[nodiscard]] std::uint64_t index_of(std::span<const Elem> point) const;
    [[nodiscard]] bool contains(std::span<const Elem> point) const noexcept;

  private:
    Field field_;
    std::vector<std::vector<Elem>> factors_;
    std::vector<std::vector<std::int32_t>> position_; // per variable: code -> position or -1
    std::vector<std::uint64_t> stride_;
    std::uint64_t size_;
};

/// p evaluated at every point of GF(q)^n, in mixed-radix order.
[[nodiscard]] std::vector<Elem> truth_table(const Polynomial &p);
[[nodiscard]] std::vector<Elem> truth_table(const Polynomial &p, const ProductDomain &domain);

/// Inverse of truth_table: the unique normalized polynomial whose values on
/// GF(q)^n (mixed-radix order) are `values`. Runs a per-variable Lagrange
/// transform in O(n q^(n+1)).
[[nodiscard]] Polynomial interpolate_table(const Field &field, std::size_t n_vars, std::span<const Elem> values);

/// Variables the function depends on. With the full field as domain this is
/// the normalized support; with a restricted domain it is decided by
/// exhaustive two-point probing.
[[nodiscard]] std::vector<std::size_t> support_vars(const Polynomial &p);
[[nodiscard]] std::vector<std::size_t> support_vars(const Polynomial &p, const ProductDomain &domain);

/// Parses `text` in the grammar
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := integer | var | var '^' integer | '(' expr ')'
///   var    := 'x' index,  1 <= index <= n_vars
/// A leading '-' on a factor and '^' after a parenthesized expression are
/// also accepted. Integer literals are reduced mod q in prime fields; in
/// GF(4) they must be element codes 0..3.
[[nodiscard]] Polynomial parse_poly(std::string_view text, std::size_t n_vars, const Field &field);

} // namespace gsds

#pragma once

// Exact arithmetic in GF(p), p prime and p <= 257, and in GF(4).
//
// Elements use the canonical encoding {0, ..., q-1}. For GF(4) the codes
// 0, 1, 2, 3 are the bit pairs 00, 01, 10, 11 read as polynomials in alpha
// over GF(2), i.e. 0, 1, alpha, alpha + 1 = alpha^2, with alpha^2 = alpha + 1.
// Balanced encoding ({-(q-1)/2, ..., (q-1)/2}) is a presentation layer for
// odd prime fields only.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gsds/error.hpp"

namespace gsds {

/// Raw canonical element code. Hot paths carry these; the owning Field is
/// implied by context.
using Elem = std::uint16_t;

enum class FieldKind { prime, gf4 };

enum class Encoding { canonical, balanced };

class Field {
  public:
    static constexpr unsigned max_prime = 257;

    /// Throws gsds::Error unless `order` is a prime <= 257 or equals 4.
    explicit Field(unsigned order);

    [[nodiscard]] unsigned order() const noexcept { return order_; }
    [[nodiscard]] FieldKind kind() const noexcept { return kind_; }
    [[nodiscard]] unsigned characteristic() const noexcept { return kind_ == FieldKind::gf4 ? 2 : order_; }

    [[nodiscard]] bool contains(long long code) const noexcept { return code >= 0 && code < static_cast<long long>(order_); }

    [[nodiscard]] Elem add(Elem a, Elem b) const noexcept;
    [[nodiscard]] Elem sub(Elem a, Elem b) const noexcept;
    [[nodiscard]] Elem neg(Elem a) const noexcept;
    [[nodiscard]] Elem mul(Elem a, Elem b) const noexcept;
    [[nodiscard]] Elem inv(Elem a) const;
    [[nodiscard]] Elem div(Elem a, Elem b) const;
    /// 0^0 = 1.
    [[nodiscard]] Elem pow(Elem a, unsigned long long e) const noexcept;

    /// Image of an arbitrary integer under the ring map Z -> field
    /// (reduction mod the characteristic, then into the prime subfield).
    [[nodiscard]] Elem from_integer(long long x) const noexcept;

    [[nodiscard]] bool supports_balanced() const noexcept { return kind_ == FieldKind::prime && order_ > 2; }
    [[nodiscard]] Elem balanced_encode(long long x) const;
    [[nodiscard]] long long balanced_decode(Elem a) const;

    /// Element code from a display value in the given encoding.
    [[nodiscard]] Elem encode(long long x, Encoding enc) const;
    [[nodiscard]] long long decode(Elem a, Encoding enc) const;

    /// All elements in canonical order.
    [[nodiscard]] std::vector<Elem> elements() const;

    friend bool operator==(const Field &, const Field &) = default;

  private:
    unsigned order_;
    FieldKind kind_;
};

[[nodiscard]] bool is_prime(unsigned n) noexcept;

/// An element bundled with its field, for the checked public API.
class FieldElement {
  public:
    FieldElement(Field field, Elem value);

    [[nodiscard]] const Field &field() const noexcept { return field_; }
    [[nodiscard]] Elem value() const noexcept { return value_; }

    [[nodiscard]] FieldElement inv() const;
    [[nodiscard]] FieldElement pow(unsigned long long e) const;

    friend FieldElement operator+(const FieldElement &a, const FieldElement &b);
    friend FieldElement operator-(const FieldElement &a, const FieldElement &b);
    friend FieldElement operator*(const FieldElement &a, const FieldElement &b);
    friend FieldElement operator/(const FieldElement &a, const FieldElement &b);
    friend FieldElement operator-(const FieldElement &a);
    friend bool operator==(const FieldElement &, const FieldElement &) = default;

  private:
    Field field_;
    Elem value_;
};

[[nodiscard]] FieldElement balanced_encode(const Field &field, long long x);
[[nodiscard]] long long balanced_decode(const FieldElement &a);

// GF(4) conformance against the printed tables of the source model
// description, which are not the tables of a field.

struct TableDifference {
    char table;          ///< '+' or '*'
    Elem row;
    Elem column;
    Elem printed;
    Elem implemented;
};

/// Addition and multiplication tables as printed (rows/columns ordered
/// 00, 01, 10, 11).
extern const std::array<std::array<Elem, 4>, 4> gf4_printed_add;
extern const std::array<std::array<Elem, 4>, 4> gf4_printed_mul;

/// Every cell where the implemented GF(4) tables differ from the printed ones.
[[nodiscard]] std::vector<TableDifference> gf4_conformance();

/// Human-readable conformance note listing the differing cells.
[[nodiscard]] std::string gf4_conformance_note();

/// Two-bit rendering of a GF(4) code, e.g. 2 -> "10".
[[nodiscard]] std::string gf4_bits(Elem a);

} // namespace gsds

#include "gsds/ffield.hpp"

#include <sstream>

namespace gsds {

namespace {

// Carry-less product of two bit pairs reduced mod z^2 + z + 1.
constexpr Elem gf4_mul_bits(Elem a, Elem b) {
    unsigned product = 0;
    for (unsigned bit = 0; bit < 2; ++bit) {
        if ((b >> bit) & 1U) {
            product ^= static_cast<unsigned>(a) << bit;
        }
    }
    if (product & 0b100U) {
        product ^= 0b111U;
    }
    return static_cast<Elem>(product);
}

constexpr std::array<std::array<Elem, 4>, 4> make_gf4_mul() {
    std::array<std::array<Elem, 4>, 4> table{};
    for (Elem a = 0; a < 4; ++a) {
        for (Elem b = 0; b < 4; ++b) {
            table[a][b] = gf4_mul_bits(a, b);
        }
    }
    return table;
}

constexpr auto gf4_mul_table = make_gf4_mul();

static_assert(gf4_mul_table[2][2] == 3, "alpha^2 = alpha + 1");
static_assert(gf4_mul_table[2][3] == 1, "alpha^3 = 1");

} // namespace

const std::array<std::array<Elem, 4>, 4> gf4_printed_add = {{
    {0b00, 0b01, 0b10, 0b11},
    {0b01, 0b10, 0b11, 0b00},
    {0b10, 0b11, 0b00, 0b01},
    {0b11, 0b10, 0b01, 0b00},
}};

const std::array<std::array<Elem, 4>, 4> gf4_printed_mul = {{
    {0b00, 0b00, 0b00, 0b00},
    {0b00, 0b01, 0b01, 0b11},
    {0b00, 0b10, 0b11, 0b01},
    {0b00, 0b11, 0b01, 0b10},
}};

bool is_prime(unsigned n) noexcept {
    if (n < 2) {
        return false;
    }
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

Field::Field(unsigned order) : order_(order), kind_(FieldKind::prime) {
    if (order == 4) {
        kind_ = FieldKind::gf4;
    } else if (!is_prime(order) || order > max_prime) {
        throw Error("unsupported field order " + std::to_string(order) + " (need a prime <= 257 or 4)");
    }
}

Elem Field::add(Elem a, Elem b) const noexcept {
    if (kind_ == FieldKind::gf4) {
        return static_cast<Elem>(a ^ b);
    }
    const unsigned s = static_cast<unsigned>(a) + b;
    return static_cast<Elem>(s >= order_ ? s - order_ : s);
}

Elem Field::neg(Elem a) const noexcept {
    if (kind_ == FieldKind::gf4 || a == 0) {
        return a;
    }
    return static_cast<Elem>(order_ - a);
}

Elem Field::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const noexcept {
    if (kind_ == FieldKind::gf4) {
        return gf4_mul_table[a][b];
    }
    return static_cast<Elem>((static_cast<unsigned>(a) * b) % order_);
}

Elem Field::pow(Elem a, unsigned long long e) const noexcept {
    Elem result = 1;
    Elem base = a;
    while (e > 0) {
        if (e & 1ULL) {
            result = mul(result, base);
        }
        base = mul(base, base);
        e >>= 1U;
    }
    return result;
}

Elem Field::inv(Elem a) const {
    if (a == 0) {
        throw ZeroDivisionError("inverse of zero in GF(" + std::to_string(order_) + ")");
    }
    return pow(a, order_ - 2);
}

Elem Field::div(Elem a, Elem b) const {
    if (b == 0) {
        throw ZeroDivisionError("division by zero in GF(" + std::to_string(order_) + ")");
    }
    return mul(a, inv(b));
}

Elem Field::from_integer(long long x) const noexcept {
    const long long p = characteristic();
    long long r = x % p;
    if (r < 0) {
        r += p;
    }
    return static_cast<Elem>(r);
}

Elem Field::balanced_encode(long long x) const {
    if (!supports_balanced()) {
        throw EncodingError("balanced encoding is only defined for odd prime fields, not GF(" +
                            std::to_string(order_) + ")");
    }
    const long long half = (order_ - 1) / 2;
    if (x < -half || x > half) {
        throw EncodingError("value " + std::to_string(x) + " outside balanced range of GF(" +
                            std::to_string(order_) + ")");
    }
    return static_cast<Elem>(x < 0 ? x + order_ : x);
}

long long Field::balanced_decode(Elem a) const {
    if (!supports_balanced()) {
        throw EncodingError("balanced encoding is only defined for odd prime fields, not GF(" +
                            std::to_string(order_) + ")");
    }
    const long long v = a;
    return v > static_cast<long long>((order_ - 1) / 2) ? v - order_ : v;
}

Elem Field::encode(long long x, Encoding enc) const {
    if (enc == Encoding::balanced) {
        return balanced_encode(x);
    }
    if (!contains(x)) {
        throw EncodingError("value " + std::to_string(x) + " is not a canonical element of GF(" +
                            std::to_string(order_) + ")");
    }
    return static_cast<Elem>(x);
}

long long Field::decode(Elem a, Encoding enc) const {
    return enc == Encoding::balanced ? balanced_decode(a) : static_cast<long long>(a);
}

std::vector<Elem> Field::elements() const {
    std::vector<Elem> all(order_);
    for (unsigned i = 0; i < order_; ++i) {
        all[i] = static_cast<Elem>(i);
    }
    return all;
}

FieldElement::FieldElement(Field field, Elem value) : field_(field), value_(value) {
    if (!field_.contains(value)) {
        throw EncodingError("element code " + std::to_string(value) + " outside GF(" +
                            std::to_string(field_.order()) + ")");
    }
}

namespace {
void require_same(const FieldElement &a, const FieldElement &b) {
    if (a.field() != b.field()) {
        throw FieldMismatchError("operands from GF(" + std::to_string(a.field().order()) + ") and GF(" +
                                 std::to_string(b.field().order()) + ")");
    }
}
} // namespace

FieldElement FieldElement::inv() const { return {field_, field_.inv(value_)}; }

FieldElement FieldElement::pow(unsigned long long e) const { return {field_, field_.pow(value_, e)}; }

FieldElement operator+(const FieldElement &a, const FieldElement &b) {
    require_same(a, b);
    return {a.field_, a.field_.add(a.value_, b.value_)};
}

FieldElement operator-(const FieldElement &a, const FieldElement &b) {
    require_same(a, b);
    return {a.field_, a.field_.sub(a.value_, b.value_)};
}

FieldElement operator*(const FieldElement &a, const FieldElement &b) {
    require_same(a, b);
    return {a.field_, a.field_.mul(a.value_, b.value_)};
}

FieldElement operator/(const FieldElement &a, const FieldElement &b) {
    require_same(a, b);
    return {a.field_, a.field_.div(a.value_, b.value_)};
}

FieldElement operator-(const FieldElement &a) { return {a.field_, a.field_.neg(a.value_)}; }

FieldElement balanced_encode(const Field &field, long long x) { return {field, field.balanced_encode(x)}; }

long long balanced_decode(const FieldElement &a) { return a.field().balanced_decode(a.value()); }

std::vector<TableDifference> gf4_conformance() {
    const Field gf4(4);
    std::vector<TableDifference> diffs;
    for (Elem a = 0; a < 4; ++a) {
        for (Elem b = 0; b < 4; ++b) {
            if (const Elem s = gf4.add(a, b); s != gf4_printed_add[a][b]) {
                diffs.push_back({'+', a, b, gf4_printed_add[a][b], s});
            }
        }
    }
    for (Elem a = 0; a < 4; ++a) {
        for (Elem b = 0; b < 4; ++b) {
            if (const Elem p = gf4.mul(a, b); p != gf4_printed_mul[a][b]) {
                diffs.push_back({'*', a, b, gf4_printed_mul[a][b], p});
            }
        }
    }
    return diffs;
}

std::string gf4_bits(Elem a) {
    std::string bits = "00";
    bits[0] = (a & 2U) ? '1' : '0';
    bits[1] = (a & 1U) ? '1' : '0';
    return bits;
}

std::string gf4_conformance_note() {
    std::ostringstream os;
    os << "GF(4) = GF(2)[z]/(z^2+z+1), codes 00=0, 01=1, 10=alpha, 11=alpha^2\n";
    const auto diffs = gf4_conformance();
    os << diffs.size() << " cell(s) differ from the printed tables:\n";
    for (const auto &d : diffs) {
        os << "  " << gf4_bits(d.row) << ' ' << d.table << ' ' << gf4_bits(d.column) << ": printed "
           << gf4_bits(d.printed) << ", field value " << gf4_bits(d.implemented) << '\n';
    }
    return os.str();
}

} // namespace gsds

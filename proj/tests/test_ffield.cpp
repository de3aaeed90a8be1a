#include "doctest.h"
#include "gsds/ffield.hpp"
#include "oracles.hpp"

using namespace gsds;

TEST_CASE("field axioms hold exhaustively for small orders") {
    for (unsigned q : {2U, 3U, 4U, 5U, 7U}) {
        CAPTURE(q);
        const Field f(q);
        const oracle::Arith ref{q};
        for (Elem a = 0; a < q; ++a) {
            CHECK(f.add(a, 0) == a);
            CHECK(f.mul(a, 1) == a);
            CHECK(f.add(a, f.neg(a)) == 0);
            if (a != 0) {
                CHECK(f.mul(a, f.inv(a)) == 1);
                CHECK(f.pow(a, q - 1) == 1);
            }
            CHECK(f.pow(a, q) == a);
            for (Elem b = 0; b < q; ++b) {
                CHECK(f.add(a, b) == ref.add(a, b));
                CHECK(f.mul(a, b) == ref.mul(a, b));
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                CHECK(f.sub(f.add(a, b), b) == a);
                for (Elem c = 0; c < q; ++c) {
                    CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("larger prime fields agree with integer arithmetic") {
    for (unsigned q : {11U, 101U, 257U}) {
        const Field f(q);
        for (unsigned a = 0; a < q; a += 7) {
            for (unsigned b = 1; b < q; b += 5) {
                CHECK(f.mul(a, b) == (a * b) % q);
                CHECK(f.mul(f.div(a, b), b) == a);
            }
        }
    }
}

TEST_CASE("unsupported orders are rejected") {
    CHECK_THROWS_AS(Field(1), Error);
    CHECK_THROWS_AS(Field(6), Error);
    CHECK_THROWS_AS(Field(8), Error);
    CHECK_THROWS_AS(Field(9), Error);
    CHECK_THROWS_AS(Field(263), Error);
}

TEST_CASE("division by zero raises") {
    const Field f(5);
    CHECK_THROWS_AS((void)f.inv(0), ZeroDivisionError);
    CHECK_THROWS_AS((void)f.div(3, 0), ZeroDivisionError);
    CHECK_THROWS_AS((void)FieldElement(f, 0).inv(), ZeroDivisionError);
}

TEST_CASE("GF(3) in balanced form: 1 + 1 = -1") {
    const Field f(3);
    CHECK(f.balanced_decode(f.add(f.balanced_encode(1), f.balanced_encode(1))) == -1);
    CHECK(f.balanced_decode(f.mul(f.balanced_encode(-1), f.balanced_encode(-1))) == 1);
}

TEST_CASE("balanced encoding is a bijection onto the symmetric range") {
    for (unsigned q : {3U, 5U, 7U, 13U}) {
        const Field f(q);
        const long long h = (q - 1) / 2;
        std::set<Elem> images;
        for (long long x = -h; x <= h; ++x) {
            const Elem a = f.balanced_encode(x);
            CHECK(f.balanced_decode(a) == x);
            images.insert(a);
        }
        CHECK(images.size() == q);
        CHECK_THROWS_AS((void)f.balanced_encode(h + 1), EncodingError);
        CHECK_THROWS_AS((void)f.balanced_encode(-h - 1), EncodingError);
    }
    CHECK_THROWS_AS((void)Field(2).balanced_encode(0), EncodingError);
    CHECK_THROWS_AS((void)Field(4).balanced_decode(1), EncodingError);
}

TEST_CASE("checked elements refuse to mix fields") {
    const FieldElement a(Field(3), 1);
    const FieldElement b(Field(5), 1);
    CHECK_THROWS_AS((void)(a + b), FieldMismatchError);
    CHECK_THROWS_AS((void)(a * b), FieldMismatchError);
    CHECK_THROWS_AS(FieldElement(Field(3), 3), Error);
    CHECK((a + a).value() == 2);
    CHECK((-a).value() == 2);
    CHECK(balanced_decode(a + a) == -1);
}

TEST_CASE("GF(4) structure") {
    const Field f(4);
    const Elem alpha = 2;
    CHECK(f.mul(alpha, alpha) == f.add(alpha, 1));
    CHECK(f.pow(alpha, 3) == 1);
    CHECK(f.characteristic() == 2);
    for (Elem a = 0; a < 4; ++a) {
        CHECK(f.add(a, a) == 0);
    }
    CHECK(gf4_bits(alpha) == "10");
}

TEST_CASE("GF(4) conformance lists exactly the misprinted cells") {
    const auto diffs = gf4_conformance();
    // Independent recount of the cells where the printed tables disagree
    // with the field built from alpha^2 = alpha + 1.
    const oracle::Arith ref{4};
    std::size_t expected = 0;
    for (Elem r = 0; r < 4; ++r) {
        for (Elem c = 0; c < 4; ++c) {
            expected += gf4_printed_add[r][c] != ref.add(r, c);
            expected += gf4_printed_mul[r][c] != ref.mul(r, c);
        }
    }
    CHECK(diffs.size() == expected);
    CHECK(diffs.size() == 3);
    for (const auto &d : diffs) {
        const auto &printed = d.table == '+' ? gf4_printed_add : gf4_printed_mul;
        CHECK(printed[d.row][d.column] == d.printed);
        CHECK(d.implemented == (d.table == '+' ? ref.add(d.row, d.column) : ref.mul(d.row, d.column)));
    }
    const auto note = gf4_conformance_note();
    CHECK(note.find("01 + 01") != std::string::npos);
    CHECK(note.find("01 * 10") != std::string::npos);
}

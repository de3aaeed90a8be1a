#include <random>

#include "doctest.h"
#include "gsds/polynomial.hpp"
#include "oracles.hpp"

using namespace gsds;

namespace {

Polynomial random_poly(const Field &f, std::size_t n, std::mt19937 &rng, int terms) {
    std::uniform_int_distribution<unsigned> coef(0, f.order() - 1);
    std::uniform_int_distribution<unsigned> expo(0, 2 * f.order());
    Polynomial p(f, n);
    for (int k = 0; k < terms; ++k) {
        Exponents e(n);
        for (auto &x : e) {
            x = static_cast<std::uint16_t>(expo(rng));
        }
        p.add_term(static_cast<Elem>(coef(rng)), e);
    }
    return p;
}

} // namespace

TEST_CASE("exponents reduce by x^q = x") {
    const Field f(3);
    CHECK(reduce_exponent(f, 0) == 0);
    CHECK(reduce_exponent(f, 1) == 1);
    CHECK(reduce_exponent(f, 2) == 2);
    CHECK(reduce_exponent(f, 3) == 1);
    CHECK(reduce_exponent(f, 4) == 2);
    CHECK(parse_poly("x1^3", 1, f) == parse_poly("x1", 1, f));
    CHECK(parse_poly("x1^4 + 2*x1^2", 1, f).is_zero());
    CHECK(reduce_exponent(Field(2), 1000000007ULL) == 1);
}

TEST_CASE("parse and render") {
    const Field f(3);
    const auto p = parse_poly("2 + x1 + 2*x3 + x1*x3 + 2*x1^2 + x3^2", 3, f);
    CHECK(p.term_count() == 6);
    CHECK(p.render() == "2*x1^2 + x1*x3 + x3^2 + x1 + 2*x3 + 2");
    CHECK(p.render(Encoding::balanced) == "-x1^2 + x1*x3 + x3^2 + x1 - x3 - 1");
    CHECK(parse_poly(p.render(Encoding::balanced), 3, f) == p);
    CHECK(parse_poly("-x2", 3, f).render() == "2*x2");
    CHECK(parse_poly("(x1 + 1)^2", 1, f).render() == "x1^2 + 2*x1 + 1");
    CHECK(parse_poly("0", 2, f).render() == "0");
    CHECK(parse_poly(" x1 * ( x2 + 1 ) ", 2, f) == parse_poly("x1*x2+x1", 2, f));
    CHECK(parse_poly("7", 1, f).render() == "1");
}

TEST_CASE("parse errors carry a position") {
    const Field f(3);
    CHECK_THROWS_AS((void)parse_poly("x4", 3, f), ParseError);
    CHECK_THROWS_AS((void)parse_poly("x0", 3, f), ParseError);
    CHECK_THROWS_AS((void)parse_poly("x1 +", 3, f), ParseError);
    CHECK_THROWS_AS((void)parse_poly("(x1", 3, f), ParseError);
    CHECK_THROWS_AS((void)parse_poly("x1 $ 2", 3, f), ParseError);
    CHECK_THROWS_AS((void)parse_poly("", 3, f), ParseError);
    CHECK_THROWS_AS((void)parse_poly("5", 1, Field(4)), ParseError);
    try {
        (void)parse_poly("x1 + * x2", 2, f);
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.position() == 5);
    }
}

TEST_CASE("render then parse is the identity on random polynomials") {
    std::mt19937 rng(7);
    for (unsigned q : {2U, 3U, 4U, 5U}) {
        const Field f(q);
        for (int trial = 0; trial < 50; ++trial) {
            const auto p = random_poly(f, 3, rng, 6);
            CHECK(parse_poly(p.render(), 3, f) == p);
            if (f.supports_balanced()) {
                CHECK(parse_poly(p.render(Encoding::balanced), 3, f) == p);
            }
        }
    }
}

TEST_CASE("evaluation is checked in the public API") {
    const Field f(3);
    const auto p = parse_poly("x1 + x2", 2, f);
    CHECK(p.eval(std::vector<FieldElement>{{f, 1}, {f, 1}}).value() == 2);
    CHECK_THROWS_AS((void)p.eval(std::vector<FieldElement>{{f, 1}}), ArityError);
    CHECK_THROWS_AS((void)p.eval(std::vector<FieldElement>{{f, 1}, {Field(5), 1}}), FieldMismatchError);
}

TEST_CASE("normalized polynomials are canonical function representatives") {
    // Distinct reduced polynomials give distinct functions: q^(q^n) of each.
    const Field f(2);
    std::set<std::vector<Elem>> tables;
    for (unsigned mask = 0; mask < 16; ++mask) {
        Polynomial p(f, 2);
        for (unsigned e = 0; e < 4; ++e) {
            if (mask & (1U << e)) {
                p.add_term(1, {static_cast<std::uint16_t>(e >> 1), static_cast<std::uint16_t>(e & 1)});
            }
        }
        CHECK(interpolate_table(f, 2, truth_table(p)) == p);
        tables.insert(truth_table(p));
    }
    CHECK(tables.size() == 16);
}

TEST_CASE("ring operations agree with pointwise arithmetic") {
    std::mt19937 rng(11);
    for (unsigned q : {2U, 3U, 4U, 5U}) {
        const Field f(q);
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = random_poly(f, 2, rng, 4);
            const auto b = random_poly(f, 2, rng, 4);
            const auto ta = truth_table(a);
            const auto tb = truth_table(b);
            const auto sum = truth_table(a + b);
            const auto prod = truth_table(a * b);
            const auto diff = truth_table(a - b);
            for (std::size_t k = 0; k < ta.size(); ++k) {
                CHECK(sum[k] == f.add(ta[k], tb[k]));
                CHECK(prod[k] == f.mul(ta[k], tb[k]));
                CHECK(diff[k] == f.sub(ta[k], tb[k]));
            }
            const auto cube = truth_table(a.pow(3));
            for (std::size_t k = 0; k < ta.size(); ++k) {
                CHECK(cube[k] == f.pow(ta[k], 3));
            }
        }
    }
}

TEST_CASE("substitution composes functions") {
    const Field f(3);
    const auto p = parse_poly("x1*x2 + 2*x2^2", 2, f);
    const auto g1 = parse_poly("x1 + x2", 2, f);
    const auto g2 = parse_poly("x1^2", 2, f);
    const auto c = p.substitute({g1, g2});
    const auto domain = ProductDomain::full(f, 2);
    for (std::uint64_t k = 0; k < domain.size(); ++k) {
        const auto x = domain.point(k);
        const Elem y[2] = {g1.eval(x), g2.eval(x)};
        CHECK(c.eval(x) == p.eval(y));
    }
}

TEST_CASE("indicator polynomials are exhaustively one-hot") {
    for (unsigned q : {2U, 3U, 4U, 5U}) {
        const Field f(q);
        const auto domain = ProductDomain::full(f, 2);
        for (std::uint64_t k = 0; k < domain.size(); ++k) {
            const auto a = domain.point(k);
            const auto table = truth_table(indicator_poly(f, a));
            for (std::uint64_t j = 0; j < table.size(); ++j) {
                CHECK(table[j] == (j == k ? 1 : 0));
            }
        }
    }
}

TEST_CASE("truth-table interpolation matches elimination over all monomials") {
    std::mt19937 rng(3);
    for (unsigned q : {2U, 3U, 4U}) {
        const Field f(q);
        const unsigned n = q == 2 ? 3 : 2;
        const auto N = oracle::ipow(q, n);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Elem> table(N);
            std::vector<unsigned> ref(N);
            for (std::size_t k = 0; k < N; ++k) {
                table[k] = static_cast<Elem>(rng() % q);
                ref[k] = table[k];
            }
            const auto p = interpolate_table(f, n, table);
            const auto coeff = oracle::interpolate_by_elimination(q, n, ref);
            for (std::size_t c = 0; c < N; ++c) {
                const auto e = oracle::point(q, n, c);
                CHECK(p.coefficient(Exponents(e.begin(), e.end())) == coeff[c]);
            }
        }
    }
}

TEST_CASE("support on full and restricted domains") {
    const Field f(3);
    const auto p = parse_poly("x1 + x2^2 - x2", 3, f);
    CHECK(support_vars(p) == std::vector<std::size_t>{0, 1});
    // On x2 in {0, 1}, x2^2 - x2 vanishes, so only x1 matters.
    const ProductDomain restricted(f, {{0, 1, 2}, {0, 1}, {0, 1, 2}});
    CHECK(support_vars(p, restricted) == std::vector<std::size_t>{0});
    CHECK(support_vars(parse_poly("1", 3, f)).empty());
}

TEST_CASE("product domain indexing") {
    const ProductDomain d(Field(3), {{0, 1, 2}, {0, 1}, {0, 2}});
    CHECK(d.size() == 12);
    CHECK_FALSE(d.is_full());
    for (std::uint64_t k = 0; k < d.size(); ++k) {
        CHECK(d.index_of(d.point(k)) == k);
    }
    CHECK(d.point(1) == std::vector<Elem>{0, 0, 2});
    CHECK_THROWS_AS((void)d.index_of(std::vector<Elem>{0, 2, 0}), StateError);
    CHECK_FALSE(d.contains(std::vector<Elem>{0, 0, 1}));
}

#include <random>

#include "doctest.h"
#include "gsds/network.hpp"
#include "models.hpp"

using namespace gsds;

TEST_CASE("Example 1 composes to (1, 1, x0 x1, x1 (x2 + 1))") {
    const auto m = fixtures::example1();
    CHECK(validate_model(m).valid());
    const auto map = global_map(m);
    const auto coords = map.coordinate_polynomials();
    const Field f(2);
    CHECK(coords[0] == parse_poly("1", 4, f));
    CHECK(coords[1] == parse_poly("1", 4, f));
    CHECK(coords[2] == parse_poly("x1*x2", 4, f));
    CHECK(coords[3] == parse_poly("x2*x3 + x2", 4, f));
    CHECK(map.compose_symbolic() == coords);
    for (std::uint64_t k = 0; k < 16; ++k) {
        const auto x = m.states().point(k);
        const State expected{1, 1, static_cast<Elem>(x[0] & x[1]), static_cast<Elem>(x[1] & (x[2] ^ 1))};
        CHECK(map(x) == expected);
    }
}

TEST_CASE("local functions change only their own coordinate") {
    const auto m = fixtures::example1();
    for (std::uint64_t k = 0; k < 16; ++k) {
        const auto x = m.states().point(k);
        for (std::size_t v = 0; v < 4; ++v) {
            const auto y = apply_local(m, v, x);
            for (std::size_t j = 0; j < 4; ++j) {
                if (j != v) {
                    CHECK(y[j] == x[j]);
                }
            }
        }
    }
}

TEST_CASE("global map equals the pointwise fold of locals") {
    std::mt19937 rng(5);
    const Field f(3);
    const auto graph = fixtures::complete_graph(3);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Polynomial> locals;
        for (int i = 0; i < 3; ++i) {
            std::vector<Elem> table(27);
            for (auto &v : table) {
                v = static_cast<Elem>(rng() % 3);
            }
            locals.push_back(interpolate_table(f, 3, table));
        }
        Schedule word;
        for (int k = 0; k < 5; ++k) {
            word.word.push_back(rng() % 3);
        }
        const GsdsModel m(graph, StateSpace::full(f, 3), locals, word);
        const auto map = global_map(m);
        CHECK(map.compose_symbolic() == map.coordinate_polynomials());
        for (std::uint64_t k = 0; k < 27; ++k) {
            auto x = m.states().point(k);
            for (const auto v : word.word) {
                x[v] = locals[v].eval(x);
            }
            CHECK(map(m.states().point(k)) == x);
        }
    }
}

TEST_CASE("validation reports locality, range and schedule problems") {
    const Field f(3);
    DependencyGraph g({"a", "b", "c"});
    g.add_edge("a", "b");
    std::vector<Polynomial> locals{parse_poly("x2", 3, f), parse_poly("x1", 3, f), parse_poly("x1", 3, f)};
    const GsdsModel m(g, StateSpace::full(f, 3), locals, Schedule{{0, 1, 2, 5}});
    const auto report = validate_model(m);
    CHECK_FALSE(report.valid());
    std::size_t locality = 0;
    std::size_t schedule = 0;
    for (const auto &v : report.violations) {
        locality += v.kind == Violation::Kind::locality;
        schedule += v.kind == Violation::Kind::schedule;
    }
    CHECK(locality == 1); // c reads a but is not adjacent to it
    CHECK(schedule == 1);
    CHECK_THROWS_AS((void)global_map(m), ModelError);
}

TEST_CASE("Example 2 leaves g2's state set and is reported") {
    const Field f(3);
    DependencyGraph g({"g1", "g2", "g3"});
    g.add_edge("g1", "g2");
    g.add_edge("g2", "g1");
    g.add_edge("g1", "g3");
    g.add_edge("g3", "g2");
    g.add_edge("g3", "g3");
    std::vector<Polynomial> locals{
        parse_poly("-x2", 3, f), parse_poly("1 + x1^2*x3^2", 3, f),
        parse_poly("2 + x1 + 2*x3 + x1*x3 + 2*x1^2 + x3^2 + 2*x1^2*x3 + 2*x1*x3^2 + x1^2*x3^2", 3, f)};
    const GsdsModel m(g, make_state_space(f, {{0, 1, 2}, {1, 0}, {0, 1, 2}}), locals, Schedule{{0, 1, 2}},
                      UpdateMode::parallel);
    const auto report = validate_model(m);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == Violation::Kind::range);
    CHECK(report.violations[0].where == 1);
}

TEST_CASE("structural mismatches throw at construction") {
    const Field f(2);
    DependencyGraph g({"a", "b"});
    CHECK_THROWS_AS(GsdsModel(g, StateSpace::full(f, 2), {parse_poly("x1", 2, f)}, Schedule{{0}}), ModelError);
    CHECK_THROWS_AS(GsdsModel(g, StateSpace::full(f, 3), {parse_poly("x1", 2, f), parse_poly("x1", 2, f)},
                              Schedule{{0}}),
                    ModelError);
    CHECK_THROWS_AS(
        GsdsModel(g, StateSpace::full(f, 2), {parse_poly("x1", 2, Field(3)), parse_poly("x1", 2, f)}, Schedule{{0}}),
        ModelError);
    CHECK_THROWS_AS(DependencyGraph({"a", "a"}), ModelError);
    CHECK_THROWS_AS(g.add_edge("a", "z"), ModelError);
}

TEST_CASE("neighborhoods are symmetric and contain the vertex") {
    DependencyGraph g({"a", "b", "c"});
    g.add_edge("a", "b");
    CHECK(g.neighborhood(0) == std::vector<std::size_t>{0, 1});
    CHECK(g.neighborhood(1) == std::vector<std::size_t>{0, 1});
    CHECK(g.neighborhood(2) == std::vector<std::size_t>{2});
}

TEST_CASE("trajectory of Example 1") {
    const auto m = fixtures::example1();
    const auto t = trajectory(m, State{0, 0, 0, 0}, 3);
    REQUIRE(t.size() == 4);
    CHECK(t.back() == State{1, 1, 1, 0});
    CHECK(trajectory(m, State{0, 1, 0, 1}, 0) == std::vector<State>{{0, 1, 0, 1}});
    CHECK_THROWS_AS((void)step(m, State{0, 2, 0, 0}), StateError);
}

TEST_CASE("Example 3 passes through a 3-cycle") {
    const auto m = fixtures::example3();
    const Field f(3);
    auto enc = [&](long long a, long long b, long long c) {
        return State{f.balanced_encode(a), f.balanced_encode(b), f.balanced_encode(c)};
    };
    const auto t = trajectory(m, enc(-1, 1, -1), 3);
    CHECK(t[1] == enc(0, 1, 0));
    CHECK(t[2] == enc(1, 1, 1));
    CHECK(t[3] == enc(-1, 1, -1));
}

TEST_CASE("parallel to sequential with doubled nodes") {
    const Field f(3);
    std::vector<Polynomial> coords{parse_poly("x2", 2, f), parse_poly("x1 + x2", 2, f)};
    const auto seq = parallel_to_sequential(coords, {"u", "v"});
    CHECK(seq.size() == 4);
    CHECK(seq.graph().vertices()[2] == "u_copy");
    CHECK(validate_model(seq).valid());
    const GlobalMap par(StateSpace::full(f, 2), coords);
    const auto smap = global_map(seq);
    for (std::uint64_t k = 0; k < 9; ++k) {
        const auto x = par.domain().point(k);
        State big{x[0], x[1], 0, 0};
        const auto y = smap(big);
        CHECK(State{y[0], y[1]} == par(x));
    }
}

#include <doctest.h>

#include <random>

#include "mdg/errors.hpp"
#include "mdg/quotient.hpp"
#include "oracles.hpp"

using namespace mdg;

namespace {

const auto P121 = ModularDistanceParams::make(1, 2, 1);

}  // namespace

TEST_CASE("5x5 torus quotient") {
    const auto g = build_quotient(weight_function(P121, 1), 5);
    CHECK(g.connection_set() == std::vector<Residue>{{0, 1}, {0, 4}, {1, 0}, {4, 0}});
    CHECK(g.degree() == 4);
    CHECK(g.collisions().empty());
    CHECK(g.adjacent({2, 3}, {2, 4}));
    CHECK(g.adjacent({0, 0}, {4, 0}));
    CHECK_FALSE(g.adjacent({0, 0}, {1, 1}));

    const auto r = independence_number_exact(g);
    CHECK(r.alpha == 10);
    CHECK(r.density == Rational(2, 5));
    CHECK(r.witness.size() == 10);
    CHECK(is_independent(g, r.witness));
    CHECK(std::is_sorted(r.witness.begin(), r.witness.end()));
    CHECK(oracle::exhaustive_alpha(g) == 10);

    const auto d = spectral_dominance_check(g);
    REQUIRE(d.dominance_ok.has_value());
    CHECK(*d.dominance_ok);
    CHECK(to_double(d.density) <= *d.spectral_ratio + 1e-9);
}

TEST_CASE("degenerate and oversized quotients") {
    CHECK_THROWS_AS(build_quotient(weight_function(P121, 1), 3), DegenerateQuotient);
    CHECK_THROWS_AS(build_quotient(weight_function(P121, 1), 2), DegenerateQuotient);
    const auto big = build_quotient(weight_function(P121, 1), 11);
    CHECK_THROWS_AS(independence_number_exact(big), InstanceTooLarge);
    CHECK(independence_number_exact(big, 121).alpha > 0);
}

TEST_CASE("small hand-built quotients") {
    const auto g = QuotientCayleyGraph::from_connection_set(2, {{{1, 1}, Rational(1)}});
    const auto r = independence_number_exact(g);
    CHECK(r.alpha == 2);
    CHECK(is_independent(g, r.witness));
    CHECK(r.witness.front() == Residue{0, 0});

    // Bipartite: m = 2, S = {(1,0)}.
    const auto b = spectral_dominance_check(QuotientCayleyGraph::from_connection_set(2, {{{1, 0}, Rational(1)}}));
    CHECK(b.density == Rational(1, 2));
    CHECK(*b.spectral_ratio == doctest::Approx(0.5));
    CHECK(*b.lambda_min == doctest::Approx(-*b.lambda_max));

    // Complete graph on Z_3^2.
    std::vector<std::pair<Residue, Rational>> all;
    for (std::int64_t a = 0; a < 3; ++a)
        for (std::int64_t c = 0; c < 3; ++c)
            if (a || c) all.push_back({{a, c}, Rational(1)});
    const auto k9 = spectral_dominance_check(QuotientCayleyGraph::from_connection_set(3, all));
    CHECK(k9.alpha == 1);
    CHECK(*k9.spectral_ratio == doctest::Approx(1.0 / 9.0));
    CHECK(*k9.dominance_ok);

    CHECK_THROWS_AS(QuotientCayleyGraph::from_connection_set(3, {}), InvalidArgument);
    CHECK_THROWS_AS(QuotientCayleyGraph::from_connection_set(3, {{{0, 0}, Rational(1)}}), InvalidArgument);
    CHECK_THROWS_AS(QuotientCayleyGraph::from_connection_set(3, {{{1, 0}, Rational(1)}}), InvalidArgument);
}

TEST_CASE("collisions merge additively") {
    // mod 4 the eight generators of C_2 land on (0,1), (0,3) and (2,2).
    const auto w = weight_function(P121, 2);
    const auto g = build_quotient(w, 4);
    CHECK(g.connection_set() == std::vector<Residue>{{0, 1}, {0, 3}, {2, 2}});
    CHECK(g.collisions().size() == 3);
    Rational total = 0;
    for (const auto& x : g.weights()) total += x;
    CHECK(total == 2);
    std::size_t merged = 0;
    for (const auto& c : g.collisions()) merged += c.multiplicity;
    CHECK(g.degree() + merged - g.collisions().size() == w.size());
}

TEST_CASE("quotients can contain triangles") {
    const auto g = QuotientCayleyGraph::from_connection_set(
        3, {{{1, 0}, Rational(1)}, {{2, 0}, Rational(1)}});
    const auto t = find_triangle(g);
    REQUIRE(t.has_value());
    const Residue sum{(t->s1.a + t->s2.a) % 3, (t->s1.b + t->s2.b) % 3};
    CHECK(sum == t->s3);
    CHECK_FALSE(find_triangle(build_quotient(weight_function(P121, 1), 5)).has_value());
}

TEST_CASE("branch and bound matches exhaustive search on random circulants") {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 60; ++trial) {
        const std::int64_t m = 2 + trial % 4;  // up to 25 vertices
        const auto g = QuotientCayleyGraph::from_connection_set(m, oracle::random_connection_set(m, rng));
        const auto r = spectral_dominance_check(g);
        CHECK(r.alpha == oracle::exhaustive_alpha(g));
        CHECK(is_independent(g, r.witness));
        CHECK(*r.dominance_ok);
        const auto again = independence_number_exact(g);
        CHECK(again.witness == r.witness);
    }
}

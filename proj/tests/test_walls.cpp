#include <doctest.h>

#include "support.hpp"
#include "wstab/errors.hpp"
#include "wstab/walls.hpp"

using namespace wstab;
using namespace wstab::testing;

namespace {
Rational q(long n, long d = 1) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

bool has_wall(const ChamberAtlas& atlas, const std::string& text) {
    auto p = parse_polynomial(text, atlas.arity);
    return std::any_of(atlas.walls.begin(), atlas.walls.end(), [&](const Wall& w) { return w.poly == p; });
}
}  // namespace

TEST_CASE("wall normalization") {
    auto w = normalize_wall(parse_polynomial("-4*s^2 + 6*s*a1 - 2*s", 1));
    REQUIRE(w.has_value());
    CHECK(w->to_string() == "2*s - 3*a1 + 1");
    CHECK_FALSE(normalize_wall(parse_polynomial("3*s", 1)).has_value());
    CHECK_FALSE(normalize_wall(parse_polynomial("-5", 1)).has_value());
}

TEST_CASE("walls of a single component") {
    auto atlas = explore(load_graph("one_component_walls.json"));
    CHECK(atlas.states.size() == 1);
    CHECK(atlas.walls.size() == 2);
    CHECK(has_wall(atlas, "2*s - 3*a1 + 1"));
    CHECK(has_wall(atlas, "s - 3*a1 + 1"));
}

TEST_CASE("two-node atlas") {
    auto G = load_graph("two_node.json");
    auto atlas = explore(G);
    CHECK(atlas.states.size() == 5);
    CHECK(has_wall(atlas, "2*s - 3*a1 + 1"));
    CHECK(has_wall(atlas, "3*a1 - 2"));
    CHECK(has_wall(atlas, "3*a1 - 1"));
    CHECK(find_state(atlas, G) == 0);
    for (const auto& w : atlas.walls) CHECK_FALSE(w.provenance.empty());
}

TEST_CASE("chambers and thresholds") {
    auto atlas = explore(load_graph("two_node.json"));
    WeightVector A{q(1, 2), {q(3, 4)}};
    WeightVector B{q(1, 2), {q(7, 10)}};
    WeightVector C{q(1, 2), {q(1, 4)}};
    CHECK(same_chamber(A, B, atlas));
    CHECK_FALSE(same_chamber(A, C, atlas));
    CHECK(sign_vector(atlas, A) == sign_vector(atlas, B));

    // Sending a1 to zero from 3/4 meets 3*a1 = 2 at t = 1/9.
    auto t = q_cartier_threshold(A, atlas);
    REQUIRE(t.has_value());
    CHECK(t->is_rational());
    CHECK(t->rational_value() == q(1, 9));

    WeightVector on{q(1, 2), {q(2, 3)}};
    CHECK(on_wall(atlas, on));
    CHECK_THROWS_AS(q_cartier_threshold(on, atlas), PreconditionError);
}

TEST_CASE("no walls means an infinite threshold") {
    auto G = load_graph("interior_n2.json");
    auto atlas = explore(G);
    CHECK(atlas.walls.empty());
    CHECK_FALSE(q_cartier_threshold(G.weights, atlas).has_value());
}

#include <doctest.h>

#include "support.hpp"
#include "wstab/errors.hpp"

using namespace wstab;
using namespace wstab::testing;

namespace {
Rational q(long n, long d = 1) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

WeightPolynomial volume(const DegenerationGraph& G) {
    auto total = WeightPolynomial::constant(Rational(0), G.arity());
    for (const auto& c : G.components) total += L_squared(G, c.id);
    return total;
}
}  // namespace

TEST_CASE("two-node walk: flip then pseudo contraction") {
    auto G = load_graph("two_node.json");
    WeightVector to{q(1, 2), {q(1, 4)}};
    auto res = reduce_weights(G, G.weights, to);
    const auto& steps = res.trace.steps;
    REQUIRE(steps.size() == 2);

    const Move& flip = steps[0].move;
    CHECK(flip.kind == Move::Kind::Flip);
    CHECK(flip.component == 2);
    CHECK(flip.neighbor == 1);
    REQUIRE(flip.firing_point.size() == 2);
    CHECK(flip.firing_point[1] == QuadraticNumber(q(2, 3)));
    CHECK(firing_weights_string(flip) == "1/2,2/3");

    const Move& pseudo = steps[1].move;
    CHECK(pseudo.kind == Move::Kind::ContractPseudoelliptic);
    CHECK(pseudo.trigger == QuantityKind::ContractionDegree);
    CHECK(pseudo.firing_point[1] == QuadraticNumber(q(1, 3)));

    REQUIRE(res.graph.components.size() == 1);
    CHECK(is_stable(res.graph, to).verdict == Verdict::Stable);
    CHECK(to_string(flip.kind) == "LaNaveFlip");
}

TEST_CASE("a flip conserves total L^2 and leaves a pseudoelliptic leaf") {
    auto G = load_graph("two_node.json");
    Move m;
    m.kind = Move::Kind::Flip;
    m.component = 2;
    m.neighbor = 1;
    auto H = apply_move(G, m);
    CHECK(H.pseudoelliptic_count() == 1);
    CHECK(validate(H).empty());
    CHECK(volume(G) == volume(H));
    const auto& pseudo = H.at(2);
    REQUIRE(pseudo.L_squared.has_value());
    // u = -1 + 3*a1 and -S.C = 2.
    CHECK(pseudo.contraction_degree == parse_polynomial("-1 + 3*a1", 1));
    CHECK(*pseudo.L_squared == parse_polynomial("1/2 - 3*a1 + 9/2*a1^2", 1));
}

TEST_CASE("dispatch rejects vanishing without a legal move") {
    auto G = load_graph("one_component_walls.json");
    auto qs = quantities(G);
    REQUIRE_FALSE(qs.empty());
    CHECK_THROWS_AS(dispatch(G, qs.front()), PreconditionError);
}

TEST_CASE("elliptic contraction into a neighbor") {
    auto G = load_graph("three_chain.json");
    auto legal = elliptic_contraction_legality(G, 3);
    CHECK(legal.legal);
    Move m;
    m.kind = Move::Kind::ContractElliptic;
    m.component = 3;
    m.neighbor = 2;
    auto H = apply_move(G, m);
    CHECK(H.components.size() == 2);
    CHECK(H.at(2).K_dot_C == 0);
    CHECK(H.at(2).S_dot_C == -2);
    CHECK(volume(G) == volume(H));
}

TEST_CASE("stable reduction of a stable graph makes no moves") {
    auto G = load_graph("two_node.json");
    auto res = stable_reduce(G, G.weights);
    CHECK(res.trace.steps.empty());
    CHECK(rnd_key(res.graph) == rnd_key(G));
}

TEST_CASE("stable reduction fixes an unstable graph") {
    auto G = load_graph("two_node.json");
    WeightVector I{q(1, 2), {q(1, 2)}};
    auto res = stable_reduce(G, I);
    CHECK_FALSE(res.trace.steps.empty());
    CHECK(is_stable(res.graph, I).verdict == Verdict::Stable);
    for (const auto& m : res.graph.marks) CHECK_FALSE(m.auxiliary);
}

TEST_CASE("observer sees every move") {
    auto G = load_graph("two_node.json");
    int seen = 0;
    ReduceOptions opts;
    opts.observer = [&](const DegenerationGraph& before, const Move&, const DegenerationGraph& after) {
        CHECK(volume(before) == volume(after));
        ++seen;
    };
    auto res = reduce_weights(G, G.weights, WeightVector{q(1, 2), {q(1, 4)}}, opts);
    CHECK(seen == static_cast<int>(res.trace.steps.size()));
}

TEST_CASE("minimal section weight without pseudoelliptic components") {
    auto G = load_graph("two_node.json");
    // Y1: u = 2, S.C = -1. Y2: u = -1 + 3/2, S.C = -2.
    CHECK(min_section_weight_no_pseudoelliptic(G, {q(1, 2)}) == q(1, 4));
    auto one = load_graph("one_component_walls.json");
    CHECK(min_section_weight_no_pseudoelliptic(one, {q(3, 4)}) == q(5, 8));
    // u = -1 + 3/10 < 0 with nothing to absorb the component.
    CHECK_THROWS_AS(min_section_weight_no_pseudoelliptic(one, {q(1, 10)}), PreconditionError);
}

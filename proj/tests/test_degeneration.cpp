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

WeightPolynomial poly(const char* text, std::size_t arity = 1) { return parse_polynomial(text, arity); }
}  // namespace

TEST_CASE("section degrees and closed-form L^2") {
    auto G = load_graph("two_node.json");
    CHECK(section_lc_degree(G, 1) == poly("2 - s"));
    CHECK(section_lc_degree(G, 2) == poly("-1 - 2*s + 3*a1"));
    CHECK(pseudomultisection_degree(G, 2) == poly("-1 + 3*a1"));
    CHECK(closed_form_L_squared(G, 2) == poly("-2*s + 6*s*a1 - 2*s^2"));
    CHECK(L_squared(G, 1) == closed_form_L_squared(G, 1));
    CHECK(marked_weight_sum(G, 2) == poly("3*a1"));
    CHECK(double_locus_count(G, 1) == 1);
    CHECK(double_locus_count(G, 2) == 1);
}

TEST_CASE("quantities come in tie-break order") {
    auto G = load_graph("two_node.json");
    auto qs = quantities(G);
    REQUIRE(qs.size() == 4);
    CHECK(qs[0].kind == QuantityKind::SectionDegree);
    CHECK(qs[0].component == 1);
    CHECK(qs[1].kind == QuantityKind::SectionDegree);
    CHECK(qs[1].component == 2);
    CHECK(qs[2].kind == QuantityKind::LSquared);
    CHECK(qs[2].component == 1);
}

TEST_CASE("stability of the two-node graph") {
    auto G = load_graph("two_node.json");
    auto ok = is_stable(G, G.weights);
    CHECK(ok.verdict == Verdict::Stable);
    CHECK(ok.failing.empty());

    // Section degree of Y2 is -1 - 1 + 3/2 < 0 at a1 = 1/2.
    auto bad = is_stable(G, WeightVector{q(1, 2), {q(1, 2)}});
    CHECK(bad.verdict == Verdict::Unstable);
    REQUIRE_FALSE(bad.failing.empty());
    CHECK(bad.failing.front().id == 2);
    CHECK(bad.failing.front().value == q(-1, 2));

    // 3*a1 = 2 at s = 1/2 puts Y2's section degree exactly on zero.
    auto wall = is_stable(G, WeightVector{q(1, 2), {q(2, 3)}});
    CHECK(wall.verdict == Verdict::UnstableAtWall);
}

TEST_CASE("weierstrass stability") {
    WeierstrassConfig W{1, 0, {parse_kodaira("I1"), parse_kodaira("I1"), parse_kodaira("I1")}};
    WeightVector I{q(1), {q(3, 4), q(3, 4), q(3, 4)}};
    CHECK(weierstrass_stability(W, I).verdict == Verdict::Stable);
    WeightVector low{q(1), {q(1, 4), q(1, 4), q(1, 4)}};
    CHECK(weierstrass_stability(W, low).verdict == Verdict::Unstable);
    WeightVector edge{q(1), {q(2, 3), q(2, 3), q(2, 3)}};
    CHECK(weierstrass_stability(W, edge).verdict == Verdict::UnstableAtWall);

    auto G = weierstrass_graph(W, I);
    REQUIRE(G.components.size() == 1);
    CHECK(G.components[0].K_dot_C == -1);
    CHECK(G.components[0].S_dot_C == -1);
    CHECK(G.marks.size() == 3);
    CHECK(is_stable(G, I).verdict == Verdict::Stable);

    WeierstrassConfig capped{1, 0, {parse_kodaira("II")}};
    auto over = weierstrass_stability(capped, WeightVector{q(1), {q(9, 10)}});
    CHECK(over.verdict == Verdict::Unstable);
    REQUIRE_FALSE(over.failing.empty());
    CHECK(over.failing.front().kind == "weight_cap");
}

TEST_CASE("validation") {
    CHECK(validate(load_graph("two_node.json")).empty());
    auto leaf = validate(load_graph("bad_leaf.json"));
    REQUIRE_FALSE(leaf.empty());
    CHECK(leaf.front().where.rfind("component", 0) == 0);
    CHECK_THROWS_AS(require_valid(load_graph("bad_leaf.json")), PreconditionError);
    CHECK_FALSE(check_weights(WeightVector{q(0), {}}).empty());
    CHECK_FALSE(check_weights(WeightVector{q(1, 2), {q(1)}}).empty());
    CHECK(check_weights(WeightVector{q(1), {q(0)}}).empty());
}

TEST_CASE("flip eligibility") {
    auto G = load_graph("two_node.json");
    auto e = flip_eligibility(G, 2);
    CHECK(e.eligible);
    CHECK(e.neighbor == 1);

    RationalPoint heavy(WeightVector{q(1, 2), {q(9, 10)}});
    CHECK_FALSE(flip_eligibility(G, 2, &heavy).eligible);
    RationalPoint light(WeightVector{q(1, 2), {q(2, 3)}});
    CHECK(flip_eligibility(G, 2, &light).eligible);

    auto H = G;
    H.at(2).genus = 2;
    CHECK_FALSE(flip_eligibility(H, 2).eligible);
}

TEST_CASE("canonical form ignores listing order") {
    auto G = load_graph("three_chain.json");
    auto H = G;
    std::reverse(H.components.begin(), H.components.end());
    std::reverse(H.edges.begin(), H.edges.end());
    CHECK(canonicalize(G) == canonicalize(H));
    CHECK(rnd_key(G) == rnd_key(H));
}

#pragma once

#include "wstab/degeneration.hpp"
#include "wstab/io.hpp"
#include "wstab/reduction.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace wstab::testing {

inline std::string data_path(const std::string& name) { return std::string(WSTAB_TEST_DATA) + "/" + name; }

inline DegenerationGraph load_graph(const std::string& name) {
    std::ifstream in(data_path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_graph(ss.str());
}

inline Rational random_rational(std::mt19937_64& rng, const Rational& lo, const Rational& hi, int max_den = 24) {
    std::uniform_int_distribution<int> den_dist(1, max_den);
    int q = den_dist(rng);
    Rational span = hi - lo;
    Rational top = span * q;
    Integer n_max = top.get_num() / top.get_den();
    std::uniform_int_distribution<long> num_dist(0, n_max.get_si());
    Rational r = lo + Rational(num_dist(rng), q);
    r.canonicalize();
    return r;
}

/// Random admissible weights for G; caps are respected, I(n) caps stay below 1.
inline WeightVector random_weights(std::mt19937_64& rng, const DegenerationGraph& G) {
    WeightVector I = G.weights;
    I.s = random_rational(rng, Rational(1, 24), Rational(1));
    auto caps = std::vector<Rational>(G.arity(), Rational(23, 24));
    for (const auto& m : G.marks) {
        auto cap = lc_weight_cap(m.type);
        Rational& c = caps[static_cast<std::size_t>(m.index - 1)];
        c = std::min(c, cap.inclusive ? cap.bound : cap.bound - Rational(1, 24));
    }
    for (std::size_t j = 0; j < I.a.size(); ++j) I.a[j] = random_rational(rng, Rational(0), caps[j]);
    return I;
}

/// Connected graph of elliptic components with random section data, all
/// fibers irreducible.
inline DegenerationGraph random_graph(std::mt19937_64& rng, int max_components, int max_arity) {
    std::uniform_int_distribution<int> comp_dist(1, max_components);
    std::uniform_int_distribution<int> arity_dist(1, max_arity);
    std::uniform_int_distribution<int> K_dist(-2, 3);
    std::uniform_int_distribution<int> S_dist(-3, -1);
    std::uniform_int_distribution<int> pct(0, 99);
    const KodairaType types[] = {KodairaType::i(1), KodairaType::i(2), KodairaType::i_star(0),
                                 KodairaType::of(KodairaType::Kind::II), KodairaType::of(KodairaType::Kind::IV)};
    DegenerationGraph G;
    int k = comp_dist(rng);
    int genus_sum = 0;
    for (int i = 1; i <= k; ++i) {
        Component c;
        c.id = i;
        c.genus = pct(rng) < 10 ? 1 : 0;
        c.K_dot_C = K_dist(rng);
        c.S_dot_C = S_dist(rng);
        genus_sum += c.genus;
        G.components.push_back(c);
    }
    int edge_id = 1;
    for (int i = 2; i <= k; ++i) {
        std::uniform_int_distribution<int> parent(1, i - 1);
        G.edges.push_back({edge_id++, parent(rng), i, EdgeKind::TwistedFiber});
    }
    if (k >= 2 && pct(rng) < 20) {
        std::uniform_int_distribution<int> any(1, k);
        int a = any(rng), b = any(rng);
        if (a != b) G.edges.push_back({edge_id++, a, b, EdgeKind::TwistedFiber});
    }
    G.genus = genus_sum + static_cast<int>(G.edges.size()) - k + 1;
    int n = arity_dist(rng);
    std::uniform_int_distribution<int> host(1, k);
    std::uniform_int_distribution<int> inc(1, 3);
    std::uniform_int_distribution<int> type(0, 4);
    std::uniform_int_distribution<int> count(1, 2);
    for (int j = 1; j <= n; ++j) {
        int c = count(rng);
        KodairaType t = types[type(rng)];
        for (int r = 0; r < c; ++r) G.marks.push_back({j, host(rng), t, inc(rng), false});
    }
    G.weights.a.assign(static_cast<std::size_t>(n), Rational(0));
    G.weights.g = G.genus;
    G.weights = random_weights(rng, G);
    return G;
}

/// Same refined numerical data, different file: permuted components, new
/// edge ids, split marks and explicit closed-form L^2.
inline DegenerationGraph syntactic_variant(const DegenerationGraph& G) {
    DegenerationGraph H = G;
    std::reverse(H.components.begin(), H.components.end());
    int top = 0;
    for (const auto& e : G.edges) top = std::max(top, e.id);
    auto remap = [&](int id) { return 100 + top - id; };
    for (auto& e : H.edges) {
        e.id = remap(e.id);
        std::swap(e.from, e.to);
    }
    std::reverse(H.edges.begin(), H.edges.end());
    for (auto& c : H.components) {
        for (auto& f : c.intermediate_fibers) {
            if (f.edge) f.edge = remap(*f.edge);
        }
        if (c.elliptic() && !c.L_squared) c.L_squared = closed_form_L_squared(G, c.id);
    }
    std::vector<MarkedFiber> marks;
    for (const auto& m : G.marks) {
        if (m.incidence >= 2) {
            MarkedFiber a = m, b = m;
            a.incidence = 1;
            b.incidence = m.incidence - 1;
            if (b.type.kind == KodairaType::Kind::I) b.type = KodairaType::i(b.type.n + 4);
            marks.push_back(b);
            marks.push_back(a);
        } else {
            marks.push_back(m);
        }
    }
    std::reverse(marks.begin(), marks.end());
    H.marks = marks;
    return H;
}

/// Exact value of p at a point of Q(sqrt d).
inline QuadraticNumber eval_at(const WeightPolynomial& p, const std::vector<QuadraticNumber>& x) {
    QuadraticNumber sum(0);
    for (const auto& [m, c] : p.terms()) {
        QuadraticNumber term(c);
        for (int v : m) {
            if (v >= 0) term *= x[static_cast<std::size_t>(v)];
        }
        sum += term;
    }
    return sum;
}

inline QuadraticNumber total_volume(const DegenerationGraph& G, const std::vector<QuadraticNumber>& x) {
    QuadraticNumber sum(0);
    for (const auto& c : G.components) sum += eval_at(L_squared(G, c.id), x);
    return sum;
}

}  // namespace wstab::testing

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "support.hpp"

#include "wstab/errors.hpp"
#include "wstab/fibers.hpp"
#include "wstab/walls.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>

using namespace wstab;
using namespace wstab::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

int failures = 0;

void report(int n, const std::string& name, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << name << " (" << o.detail << "; "
              << std::fixed << std::setprecision(2) << secs << " s)" << std::endl;
}

using Kind = KodairaType::Kind;

Outcome threshold_tables() {
    Outcome o;
    const std::vector<std::pair<KodairaType, Rational>> caps = {
        {KodairaType::i_star(0), Rational(1, 2)}, {KodairaType::of(Kind::II), Rational(5, 6)},
        {KodairaType::of(Kind::III), Rational(2, 3)}, {KodairaType::of(Kind::IV), Rational(1, 2)},
        {KodairaType::of(Kind::IIStar), Rational(1, 6)}, {KodairaType::of(Kind::IIIStar), Rational(1, 4)},
        {KodairaType::of(Kind::IVStar), Rational(1, 3)},
    };
    for (const auto& [t, v] : caps) {
        auto cap = lc_weight_cap(t);
        if (cap.bound != v || !cap.inclusive) o.fail("cap of " + t.to_string() + " is " + cap.bound.get_str());
    }
    using S = SingularityTag::Kind;
    const std::vector<std::pair<KodairaType, SingularityTag>> table = {
        {KodairaType::i_star(2), {S::A, 1}},     {KodairaType::of(Kind::II), {S::AStar, 5}},
        {KodairaType::of(Kind::III), {S::AStar, 3}}, {KodairaType::of(Kind::IV), {S::AStar, 2}},
        {KodairaType::of(Kind::IIStar), {S::A, 5}}, {KodairaType::of(Kind::IIIStar), {S::A, 3}},
        {KodairaType::of(Kind::IVStar), {S::A, 2}},
    };
    for (const auto& [t, s] : table) {
        if (!(section_singularity(t) == s)) o.fail("singularity of " + t.to_string() + " is " + section_singularity(t).to_string());
    }
    if (o.pass) o.detail = "7 caps and 7 singularities exact";
    return o;
}

Outcome recursion_chain() {
    Outcome o;
    Rational a = -1;
    for (int k = 2; k <= 20; ++k) {
        a = next_intermediate_self_intersection(a);
        if (a != Rational(-1, k)) o.fail("step " + std::to_string(k - 1) + " gave " + a.get_str());
    }
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<long> num(1, 1000000), den(1, 1000000);
    for (int k = 0; k < 1000; ++k) {
        Rational x(-num(rng), den(rng));
        x.canonicalize();
        Rational y = next_intermediate_self_intersection(x);
        if (!(x < y && y < 0)) o.fail("ordering fails at " + x.get_str());
    }
    if (o.pass) o.detail = "-1 -> -1/20 in 19 steps; 1000 random inputs ordered";
    return o;
}

Outcome volume_conservation() {
    Outcome o;
    std::mt19937_64 rng(3);
    int graphs = 0, moves = 0, skipped = 0, attempts = 0;
    while (graphs < 200 && attempts < 5000) {
        ++attempts;
        DegenerationGraph G = random_graph(rng, 6, 2);
        if (!validate(G).empty()) continue;
        ReduceOptions opt;
        opt.observer = [&](const DegenerationGraph& before, const Move& m, const DegenerationGraph& after) {
            ++moves;
            const auto& x = m.firing_point;
            for (const auto& q : quantities(before)) {
                if (q.kind == m.trigger && q.component == m.component && eval_at(q.poly, x).sign() != 0) {
                    o.fail(describe(m) + " fired at a nonzero quantity");
                }
            }
            if (!(total_volume(before, x) == total_volume(after, x))) o.fail(describe(m) + " changed the total volume");
        };
        try {
            stable_reduce(G, G.weights, opt);
            ++graphs;
        } catch (const PreconditionError&) {
            ++skipped;
        }
    }
    if (graphs < 200) o.fail("only " + std::to_string(graphs) + " reducible graphs");
    o.detail = (o.pass ? "" : o.detail + "; ") + std::to_string(graphs) + " graphs, " + std::to_string(moves) +
               " moves checked, " + std::to_string(skipped) + " graphs without a stable model skipped";
    return o;
}

Outcome chamber_oracle() {
    Outcome o;
    std::string details;
    for (const char* name : {"two_node.json", "three_chain.json", "four_chain.json"}) {
        DegenerationGraph G = load_graph(name);
        ChamberAtlas atlas = explore(G);
        std::map<std::vector<int>, std::set<int>> finals;
        int points = 0, on_walls = 0, no_model = 0;
        for (int i = 1; i <= 100; ++i) {
            for (int j = 0; j < 100; ++j) {
                WeightVector I = G.weights;
                I.s = Rational(i, 100);
                I.a[0] = Rational(j, 100);
                if (on_wall(atlas, I)) {
                    ++on_walls;
                    continue;
                }
                ++points;
                // -2 marks weights where the family has no stable model at all.
                int id = -2;
                try {
                    id = find_state(atlas, stable_reduce(G, I).graph);
                    if (id < 0) o.fail(std::string(name) + ": final state at " + I.to_string() + " is not in the atlas");
                } catch (const PreconditionError&) {
                    ++no_model;
                }
                finals[sign_vector(atlas, I)].insert(id);
            }
        }
        int chambers = 0;
        for (const auto& [signs, ids] : finals) {
            ++chambers;
            if (ids.size() != 1) o.fail(std::string(name) + ": a chamber has " + std::to_string(ids.size()) + " final states");
        }
        details += std::string(name) + ": " + std::to_string(points) + " points (" + std::to_string(no_model) + " without a stable model), " +
                   std::to_string(chambers) + " chambers, " +
                   std::to_string(atlas.states.size()) + " states; ";
    }
    o.detail = (o.pass ? "" : o.detail + "; ") + details.substr(0, details.size() - 2);
    return o;
}

Outcome determinism() {
    Outcome o;
    std::mt19937_64 rng(5);
    int segments = 0, attempts = 0;
    while (segments < 20 && attempts < 2000) {
        ++attempts;
        DegenerationGraph G0 = random_graph(rng, 4, 2);
        if (!validate(G0).empty()) continue;
        WeightVector I2 = G0.weights;
        DegenerationGraph S;
        try {
            S = stable_reduce(G0, I2).graph;
        } catch (const PreconditionError&) {
            continue;
        }
        DegenerationGraph V = syntactic_variant(S);
        if (!(refine(S) == refine(V))) {
            o.fail("variant changed the refined numerical data");
            break;
        }
        if (graph_to_json(canonicalize(S)).dump() == graph_to_json(canonicalize(V)).dump()) continue;
        WeightVector I1 = I2;
        I1.s = random_rational(rng, Rational(1, 24), I2.s);
        for (auto& a : I1.a) a = random_rational(rng, Rational(0), a);
        std::string t1, t2;
        try {
            t1 = trace_to_json(reduce_weights(S, I2, I1).trace, Json::object()).dump();
        } catch (const PreconditionError& e) {
            t1 = std::string("error: ") + e.what();
        }
        try {
            t2 = trace_to_json(reduce_weights(V, I2, I1).trace, Json::object()).dump();
        } catch (const PreconditionError& e) {
            t2 = std::string("error: ") + e.what();
        }
        if (t1.rfind("error", 0) == 0 && t2.rfind("error", 0) == 0) continue;
        if (t1 != t2) o.fail("traces differ on segment " + I2.to_string() + " -> " + I1.to_string());
        ++segments;
    }
    if (segments < 20) o.fail("only " + std::to_string(segments) + " segments compared");
    o.detail = (o.pass ? "" : o.detail + "; ") + std::to_string(segments) + " segments, byte-identical traces";
    return o;
}

Outcome threshold_positivity() {
    Outcome o;
    auto worked = explore(load_graph("one_component_walls.json"));
    WeightVector I;
    I.s = Rational(1, 2);
    I.a = {Rational(3, 4)};
    auto w = q_cartier_threshold(I, worked);
    if (!w || !(*w == SegmentRoot::rational(Rational(1, 9)))) o.fail("worked instance gave " + (w ? w->to_string() : "infinity"));
    std::mt19937_64 rng(6);
    int sampled = 0;
    for (const char* name : {"one_component_walls.json", "two_node.json", "three_chain.json", "four_chain.json"}) {
        DegenerationGraph G = load_graph(name);
        ChamberAtlas atlas = explore(G);
        int here = 0;
        while (here < 500) {
            WeightVector J = random_weights(rng, G);
            if (on_wall(atlas, J)) continue;
            auto t = q_cartier_threshold(J, atlas);
            if (t && t->value().sign() <= 0) o.fail(std::string(name) + ": w(I) <= 0 at " + J.to_string());
            ++here;
        }
        sampled += here;
    }
    o.detail = (o.pass ? "" : o.detail + "; ") + "w(1/2,3/4) = 1/9; " + std::to_string(sampled) + " interior samples positive";
    return o;
}

Outcome no_pseudo_threshold() {
    Outcome o;
    struct Case {
        const char* file;
        Rational a1;
        Rational above;
    };
    std::string details;
    for (const Case& c : {Case{"two_node.json", Rational(1, 2), Rational(1, 2)},
                         Case{"three_chain.json", Rational(1, 2), Rational(1, 2)}}) {
        DegenerationGraph G = load_graph(c.file);
        G.weights.a = {c.a1};
        Rational st = min_section_weight_no_pseudoelliptic(G, G.weights.a);
        WeightVector below = G.weights;
        below.s = st / 2;
        auto low = stable_reduce(G, below);
        if (low.graph.pseudoelliptic_count() != 0) o.fail(std::string(c.file) + ": pseudoelliptic survives at s~/2");
        WeightVector above = G.weights;
        above.s = c.above;
        auto high = stable_reduce(G, above);
        bool flipped = std::any_of(high.trace.steps.begin(), high.trace.steps.end(),
                                   [](const TraceStep& s) { return s.move.kind == Move::Kind::Flip; });
        if (!flipped) o.fail(std::string(c.file) + ": no flip at s = " + c.above.get_str());
        details += std::string(c.file) + " s~ = " + st.get_str() + "; ";
    }
    o.detail = (o.pass ? "" : o.detail + "; ") + details.substr(0, details.size() - 2);
    return o;
}

Outcome interior_oracle() {
    Outcome o;
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> N(0, 4), g(0, 2), count(0, 3), type(0, 8);
    const KodairaType types[] = {KodairaType::i(1), KodairaType::i(3), KodairaType::i_star(1),
                                 KodairaType::of(Kind::II), KodairaType::of(Kind::III), KodairaType::of(Kind::IV),
                                 KodairaType::of(Kind::IIStar), KodairaType::of(Kind::IIIStar), KodairaType::of(Kind::IVStar)};
    std::map<Verdict, int> seen;
    for (int k = 0; k < 100; ++k) {
        WeierstrassConfig W{N(rng), g(rng), {}};
        int c = count(rng);
        for (int j = 0; j < c; ++j) W.fiber_types.push_back(types[type(rng)]);
        DegenerationGraph G = weierstrass_graph(W, WeightVector{1, std::vector<Rational>(W.fiber_types.size()), W.g, 0});
        WeightVector I = random_weights(rng, G);
        // Land exactly on the section-degree wall now and then.
        if (k % 5 == 0 && W.N > 0) {
            Rational rest = Rational(W.N + 2 * W.g - 2);
            for (const auto& a : I.a) rest += a;
            Rational s = rest / W.N;
            if (s > 0 && s <= 1) I.s = s;
        }
        G.weights = I;
        auto a = weierstrass_stability(W, I).verdict;
        auto b = is_stable(G, I).verdict;
        ++seen[a];
        if (a != b) o.fail("disagreement at N=" + std::to_string(W.N) + ", g=" + std::to_string(W.g) + ", I=" + I.to_string());
    }
    o.detail = (o.pass ? "" : o.detail + "; ") + "100 configurations agree (" + std::to_string(seen[Verdict::Stable]) +
               " stable, " + std::to_string(seen[Verdict::Unstable]) + " unstable, " +
               std::to_string(seen[Verdict::UnstableAtWall]) + " at a wall)";
    return o;
}

Outcome termination() {
    Outcome o;
    std::mt19937_64 rng(9);
    int runs = 0, longest = 0, explored = 0, max_states = 0;
    for (int k = 0; k < 400; ++k) {
        DegenerationGraph G = random_graph(rng, 6, 2);
        if (!validate(G).empty()) continue;
        try {
            auto r = stable_reduce(G, G.weights);
            int len = static_cast<int>(r.trace.steps.size());
            longest = std::max(longest, len);
            if (len > 3 * static_cast<int>(G.components.size())) o.fail("trace of length " + std::to_string(len));
            ++runs;
        } catch (const PreconditionError&) {
        }
        if (G.components.size() <= 4) {
            ChamberAtlas atlas = explore(G);
            ++explored;
            max_states = std::max(max_states, static_cast<int>(atlas.states.size()));
            if (atlas.states.size() > atlas.state_bound) o.fail("state count above bound");
        }
    }
    o.detail = (o.pass ? "" : o.detail + "; ") + std::to_string(runs) + " reductions, longest trace " +
               std::to_string(longest) + "; " + std::to_string(explored) + " atlases, at most " +
               std::to_string(max_states) + " states";
    return o;
}

}  // namespace

int main() {
    report(1, "threshold table fidelity", threshold_tables);
    report(2, "intermediate self-intersection recursion", recursion_chain);
    report(3, "volume conservation across moves", volume_conservation);
    report(4, "chamber/oracle equivalence", chamber_oracle);
    report(5, "determinism from refined numerical data", determinism);
    report(6, "Q-Cartier threshold positivity", threshold_positivity);
    report(7, "no-pseudoelliptic threshold", no_pseudo_threshold);
    report(8, "interior Weierstrass oracle", interior_oracle);
    report(9, "termination and bounds", termination);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}

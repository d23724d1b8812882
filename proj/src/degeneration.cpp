#include "wstab/degeneration.hpp"

#include "wstab/errors.hpp"

#include <algorithm>
#include <map>
#include <functional>
#include <numeric>
#include <set>

namespace wstab {

std::string to_string(ComponentKind k) { return k == ComponentKind::Elliptic ? "elliptic" : "pseudoelliptic"; }

std::string to_string(EdgeKind k) { return k == EdgeKind::TwistedFiber ? "twisted_fiber" : "twisted_component"; }

std::string to_string(QuantityKind k) {
    switch (k) {
        case QuantityKind::SectionDegree: return "section_degree";
        case QuantityKind::LSquared: return "L_squared";
        case QuantityKind::ContractionDegree: return "contraction_degree";
        case QuantityKind::FlipWeightSum: return "flip_weight_sum";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "STABLE";
        case Verdict::Unstable: return "UNSTABLE";
        case Verdict::UnstableAtWall: return "UNSTABLE_AT_WALL";
    }
    return "?";
}

const Component* DegenerationGraph::find(int id) const {
    for (const auto& c : components) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

Component* DegenerationGraph::find(int id) {
    for (auto& c : components) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

const Component& DegenerationGraph::at(int id) const {
    const Component* c = find(id);
    if (!c) throw PreconditionError("no component with id " + std::to_string(id));
    return *c;
}

Component& DegenerationGraph::at(int id) {
    Component* c = find(id);
    if (!c) throw PreconditionError("no component with id " + std::to_string(id));
    return *c;
}

std::vector<int> DegenerationGraph::elliptic_ids() const {
    std::vector<int> ids;
    for (const auto& c : components) {
        if (c.elliptic()) ids.push_back(c.id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

int DegenerationGraph::pseudoelliptic_count() const {
    return static_cast<int>(std::count_if(components.begin(), components.end(), [](const Component& c) { return !c.elliptic(); }));
}

int DegenerationGraph::next_edge_id() const {
    int m = 0;
    for (const auto& e : edges) m = std::max(m, e.id);
    return m + 1;
}

std::vector<Violation> check_weights(const WeightVector& I) {
    std::vector<Violation> out;
    if (!(I.s > 0 && I.s <= 1)) out.push_back({"weights", "section weight s = " + I.s.get_str() + " is outside (0, 1]"});
    for (std::size_t j = 0; j < I.a.size(); ++j) {
        if (I.a[j] < 0 || I.a[j] >= 1) {
            out.push_back({"weights", "fiber weight a" + std::to_string(j + 1) + " = " + I.a[j].get_str() + " is outside [0, 1)"});
        }
    }
    if (I.g < 0) out.push_back({"weights", "base genus is negative"});
    if (I.d < 0) out.push_back({"weights", "j-degree is negative"});
    return out;
}

std::vector<Violation> validate(const DegenerationGraph& G) {
    std::vector<Violation> out = check_weights(G.weights);
    auto add = [&](std::string where, std::string msg) { out.push_back({std::move(where), std::move(msg)}); };
    const std::size_t n = G.arity();

    std::set<int> ids;
    for (const auto& c : G.components) {
        std::string where = "component " + std::to_string(c.id);
        if (!ids.insert(c.id).second) add(where, "duplicate component id");
        if (c.elliptic()) {
            if (c.genus < 0) add(where, "section genus is negative");
            if (c.S_dot_C > 0) add(where, "S.C = " + c.S_dot_C.get_str() + " is positive on an elliptic component");
            if (c.contraction_degree) add(where, "contraction_degree given on an elliptic component");
        } else {
            if (!c.L_squared) add(where, "pseudoelliptic component without L_squared");
            if (!c.intermediate_fibers.empty()) add(where, "pseudoelliptic component with intermediate fibers");
        }
        for (const auto* p : {&c.L_squared, &c.contraction_degree}) {
            if (*p && (*p)->arity() != n) add(where, "polynomial arity does not match the weight vector");
        }
        for (const auto& f : c.intermediate_fibers) {
            if (f.a_squared >= 0) add(where, "intermediate fiber with A^2 = " + f.a_squared.get_str() + " >= 0");
            if (f.edge) {
                auto it = std::find_if(G.edges.begin(), G.edges.end(), [&](const Edge& e) { return e.id == *f.edge; });
                if (it == G.edges.end()) {
                    add(where, "intermediate fiber refers to missing edge " + std::to_string(*f.edge));
                } else if (!it->touches(c.id)) {
                    add(where, "intermediate fiber edge " + std::to_string(*f.edge) + " does not touch the component");
                }
            }
        }
    }
    if (G.elliptic_ids().empty()) add("graph", "no elliptic component");

    std::set<int> edge_ids;
    std::map<int, int> degree;
    for (const auto& e : G.edges) {
        std::string where = "edge " + std::to_string(e.id);
        if (!edge_ids.insert(e.id).second) add(where, "duplicate edge id");
        const Component* a = G.find(e.from);
        const Component* b = G.find(e.to);
        if (!a || !b) {
            add(where, "endpoint is not a component");
            continue;
        }
        ++degree[e.from];
        if (e.to != e.from) ++degree[e.to];
        if (e.kind == EdgeKind::TwistedFiber) {
            if (!a->elliptic() || !b->elliptic()) add(where, "twisted_fiber edge must join elliptic components");
        } else if (a->elliptic() == b->elliptic()) {
            add(where, "twisted_component edge must join a pseudoelliptic leaf to an elliptic component");
        }
    }
    for (const auto& c : G.components) {
        if (c.elliptic()) continue;
        std::string where = "component " + std::to_string(c.id);
        if (degree[c.id] != 1) {
            add(where, "pseudoelliptic component has " + std::to_string(degree[c.id]) + " edges but must be a leaf");
        }
    }

    // The elliptic components form the dual graph of the section curve.
    auto ell = G.elliptic_ids();
    if (!ell.empty()) {
        std::map<int, int> parent;
        for (int id : ell) parent[id] = id;
        std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
        int loops = 0;
        int genus_sum = 0;
        for (int id : ell) genus_sum += std::max(0, G.at(id).genus);
        for (const auto& e : G.edges) {
            if (e.kind != EdgeKind::TwistedFiber || !parent.count(e.from) || !parent.count(e.to)) continue;
            ++loops;
            parent[root(e.from)] = root(e.to);
        }
        std::set<int> roots;
        for (int id : ell) roots.insert(root(id));
        if (roots.size() != 1) add("graph", "elliptic components are not connected by twisted fibers");
        int arithmetic = genus_sum + loops - static_cast<int>(ell.size()) + 1;
        if (roots.size() == 1 && arithmetic != G.genus) {
            add("graph", "section curve has arithmetic genus " + std::to_string(arithmetic) + " but genus is " +
                             std::to_string(G.genus));
        }
    }
    if (G.genus < 0) add("graph", "genus is negative");

    for (std::size_t k = 0; k < G.marks.size(); ++k) {
        const auto& m = G.marks[k];
        std::string where = "mark " + std::to_string(k + 1) + " (a" + std::to_string(m.index) + ")";
        if (m.index < 1 || static_cast<std::size_t>(m.index) > n) {
            add(where, "index outside 1.." + std::to_string(n));
            continue;
        }
        const Component* host = G.find(m.host);
        if (!host) {
            add(where, "host " + std::to_string(m.host) + " is not a component");
        } else if (!host->elliptic() && m.incidence != 0) {
            add(where, "mark on a pseudoelliptic component must have incidence 0");
        }
        if (m.incidence < 0) add(where, "negative section incidence");
        if (!m.auxiliary) {
            const Rational& a = G.weights.a[static_cast<std::size_t>(m.index - 1)];
            WeightCap cap = lc_weight_cap(m.type);
            if (!cap.admits(a)) {
                add(where, "weight " + a.get_str() + " exceeds the " + m.type.to_string() + " cap " + cap.bound.get_str() +
                               (cap.inclusive ? "" : " (exclusive)"));
            }
        }
    }
    return out;
}

void require_valid(const DegenerationGraph& G) {
    auto v = validate(G);
    if (v.empty()) return;
    std::string msg = "invalid degeneration graph:";
    for (const auto& x : v) msg += "\n  " + x.where + ": " + x.message;
    throw PreconditionError(msg);
}

namespace {

const Component& require_elliptic(const DegenerationGraph& G, int id) {
    const Component& c = G.at(id);
    if (!c.elliptic()) throw PreconditionError("component " + std::to_string(id) + " is pseudoelliptic and has no section");
    return c;
}

WeightPolynomial incidence_sum(const DegenerationGraph& G, int id, bool include_auxiliary) {
    const std::size_t n = G.arity();
    WeightPolynomial p(n);
    for (const auto& m : G.marks) {
        if (m.host != id || m.incidence == 0 || (m.auxiliary && !include_auxiliary)) continue;
        p.add_term({-1, m.index}, m.incidence);
    }
    return p;
}

}  // namespace

WeightPolynomial marked_weight_sum(const DegenerationGraph& G, int component_id) {
    require_elliptic(G, component_id);
    return incidence_sum(G, component_id, false);
}

WeightPolynomial pseudomultisection_degree(const DegenerationGraph& G, int component_id) {
    const Component& c = require_elliptic(G, component_id);
    return WeightPolynomial::constant(c.K_dot_C, G.arity()) + incidence_sum(G, component_id, true);
}

WeightPolynomial section_lc_degree(const DegenerationGraph& G, int component_id) {
    const Component& c = require_elliptic(G, component_id);
    return pseudomultisection_degree(G, component_id) + WeightPolynomial::variable(0, G.arity()) * c.S_dot_C;
}

WeightPolynomial closed_form_L_squared(const DegenerationGraph& G, int component_id) {
    const Component& c = require_elliptic(G, component_id);
    const std::size_t n = G.arity();
    WeightPolynomial s = WeightPolynomial::variable(0, n);
    return s * pseudomultisection_degree(G, component_id) * Rational(2) + s * s * c.S_dot_C;
}

WeightPolynomial L_squared(const DegenerationGraph& G, int component_id) {
    const Component& c = G.at(component_id);
    if (c.L_squared) return *c.L_squared;
    if (!c.elliptic()) throw PreconditionError("pseudoelliptic component " + std::to_string(c.id) + " has no L_squared");
    if (!c.intermediate_fibers.empty()) {
        throw PreconditionError("component " + std::to_string(c.id) +
                                " has intermediate fibers, so its L_squared must be supplied");
    }
    return closed_form_L_squared(G, component_id);
}

int double_locus_count(const DegenerationGraph& G, int component_id) {
    const Component& c = require_elliptic(G, component_id);
    int count = 0;
    for (const auto& e : G.edges) {
        if (e.kind != EdgeKind::TwistedFiber) continue;
        if (e.from == c.id) ++count;
        if (e.to == c.id) ++count;
    }
    for (const auto& f : c.intermediate_fibers) {
        if (f.edge) ++count;
    }
    return count;
}

DegenerationGraph canonicalize(DegenerationGraph G) {
    std::sort(G.components.begin(), G.components.end(), [](const Component& x, const Component& y) { return x.id < y.id; });
    std::sort(G.edges.begin(), G.edges.end(), [](const Edge& x, const Edge& y) { return x.id < y.id; });
    std::stable_sort(G.marks.begin(), G.marks.end(), [](const MarkedFiber& x, const MarkedFiber& y) {
        return std::tie(x.index, x.host) < std::tie(y.index, y.host);
    });
    for (auto& c : G.components) {
        std::sort(c.intermediate_fibers.begin(), c.intermediate_fibers.end(),
                  [](const IntermediateFiber& x, const IntermediateFiber& y) {
                      return std::tie(x.a_squared, x.edge) < std::tie(y.a_squared, y.edge);
                  });
        if (c.elliptic() && c.L_squared && c.intermediate_fibers.empty() && *c.L_squared == closed_form_L_squared(G, c.id)) {
            c.L_squared.reset();
        }
    }
    return G;
}

std::vector<Quantity> quantities(const DegenerationGraph& G) {
    std::vector<Quantity> out;
    std::vector<int> order;
    for (const auto& c : G.components) order.push_back(c.id);
    std::sort(order.begin(), order.end());
    for (int id : order) {
        if (G.at(id).elliptic()) out.push_back({QuantityKind::SectionDegree, id, section_lc_degree(G, id)});
    }
    for (int id : order) {
        const Component& c = G.at(id);
        if (c.contraction_degree) out.push_back({QuantityKind::ContractionDegree, id, *c.contraction_degree});
        out.push_back({QuantityKind::LSquared, id, L_squared(G, id)});
    }
    return out;
}

StabilityReport is_stable(const DegenerationGraph& G, const WeightVector& I) {
    if (I.arity() != G.arity()) {
        throw PreconditionError("weight vector has " + std::to_string(I.arity()) + " fiber weights, graph expects " +
                                std::to_string(G.arity()));
    }
    StabilityReport r;
    bool negative = false;
    for (const auto& q : quantities(G)) {
        Witness w{to_string(q.kind), q.component, q.poly.eval(I)};
        if (w.value <= 0) {
            negative = negative || w.value < 0;
            r.failing.push_back(w);
        }
        r.values.push_back(std::move(w));
    }
    if (!r.failing.empty()) r.verdict = negative ? Verdict::Unstable : Verdict::UnstableAtWall;
    return r;
}

StabilityReport weierstrass_stability(const WeierstrassConfig& W, const WeightVector& I) {
    if (I.arity() != W.fiber_types.size()) {
        throw PreconditionError("weight vector has " + std::to_string(I.arity()) + " fiber weights, configuration has " +
                                std::to_string(W.fiber_types.size()) + " marks");
    }
    if (W.N < 0 || W.g < 0) throw PreconditionError("N and g must be non-negative");
    StabilityReport r;
    bool negative = false;
    for (std::size_t j = 0; j < W.fiber_types.size(); ++j) {
        if (!lc_weight_cap(W.fiber_types[j]).admits(I.a[j])) {
            r.failing.push_back({"weight_cap", static_cast<int>(j + 1), I.a[j]});
            negative = true;
        }
    }
    Rational degree = Rational(W.N + 2 * W.g - 2) - I.s * W.N;
    for (const auto& a : I.a) degree += a;
    Witness w{to_string(QuantityKind::SectionDegree), 0, degree};
    r.values.push_back(w);
    if (degree <= 0) {
        negative = negative || degree < 0;
        r.failing.push_back(w);
    }
    if (!r.failing.empty()) r.verdict = negative ? Verdict::Unstable : Verdict::UnstableAtWall;
    return r;
}

DegenerationGraph weierstrass_graph(const WeierstrassConfig& W, const WeightVector& I) {
    DegenerationGraph G;
    G.genus = W.g;
    G.weights = I;
    Component c;
    c.id = 0;
    c.genus = W.g;
    c.K_dot_C = W.N + 2 * W.g - 2;
    c.S_dot_C = -W.N;
    G.components.push_back(c);
    for (std::size_t j = 0; j < W.fiber_types.size(); ++j) {
        G.marks.push_back({static_cast<int>(j + 1), 0, W.fiber_types[j], 1, false});
    }
    return G;
}

FlipEligibility flip_eligibility(const DegenerationGraph& G, int component_id, const PointEvaluator* at) {
    const Component& c = require_elliptic(G, component_id);
    FlipEligibility r;
    int dl = double_locus_count(G, component_id);
    if (c.genus >= 2) {
        r.reason = "section component has genus " + std::to_string(c.genus) + " >= 2";
        return r;
    }
    if (c.genus == 1 && (!marked_weight_sum(G, component_id).is_zero() || dl > 0)) {
        r.reason = "genus 1 section component needs aF + E = 0";
        return r;
    }
    if (dl != 1) {
        r.reason = "host has " + std::to_string(dl) + " fibers in the double locus, a flip needs exactly one";
        return r;
    }
    for (const auto& e : G.edges) {
        if (e.kind == EdgeKind::TwistedFiber && e.touches(c.id)) {
            r.neighbor = e.other(c.id);
            r.edge = e.id;
        }
    }
    if (r.neighbor < 0) {
        r.reason = "the double-locus fiber is an intermediate fiber, not a twisted fiber";
        return r;
    }
    if (at) {
        WeightPolynomial slack = WeightPolynomial::constant(2, G.arity()) - marked_weight_sum(G, component_id);
        if (at->sign(slack) < 0) {
            r.neighbor = r.edge = -1;
            r.reason = "marked weight sum on the host exceeds 2";
            return r;
        }
    }
    if (c.S_dot_C >= 0) {
        r.neighbor = r.edge = -1;
        r.reason = "section self-intersection S.C = " + c.S_dot_C.get_str() + " is not negative";
        return r;
    }
    r.eligible = true;
    return r;
}

ContractionLegality elliptic_contraction_legality(const DegenerationGraph& G, int component_id) {
    const Component& c = require_elliptic(G, component_id);
    ContractionLegality r;
    if (c.genus != 0) {
        r.reason = "section component has genus " + std::to_string(c.genus) + ", only rational components contract";
        return r;
    }
    int dl = double_locus_count(G, component_id);
    if (dl > 2) {
        r.reason = "component meets the double locus in " + std::to_string(dl) + " fibers, at most 2 allowed";
        return r;
    }
    for (const auto& e : G.edges) {
        if (e.kind != EdgeKind::TwistedFiber || !e.touches(c.id) || e.from == e.to) continue;
        int o = e.other(c.id);
        if (r.neighbor < 0 || o < r.neighbor) r.neighbor = o;
    }
    if (r.neighbor < 0) {
        r.reason = "component has no elliptic neighbor to absorb it";
        return r;
    }
    r.legal = true;
    return r;
}

RefinedNumericalData refine(const DegenerationGraph& G) {
    RefinedNumericalData rnd;
    rnd.genus = G.genus;
    rnd.arity = G.arity();
    std::map<int, const Edge*> edge_by_id;
    for (const auto& e : G.edges) edge_by_id[e.id] = &e;
    for (const auto& c : G.components) {
        RefinedComponent rc;
        rc.id = c.id;
        rc.kind = c.kind;
        rc.L_squared = L_squared(G, c.id);
        if (c.elliptic()) {
            rc.genus = c.genus;
            rc.K_dot_C = c.K_dot_C;
            rc.S_dot_C = c.S_dot_C;
            std::map<int, int> inc;
            for (const auto& m : G.marks) {
                if (m.host == c.id && m.incidence != 0) inc[m.index] += m.incidence;
            }
            rc.incidences.assign(inc.begin(), inc.end());
        }
        rc.contraction_degree = c.contraction_degree;
        for (const auto& f : c.intermediate_fibers) {
            std::optional<int> other;
            if (f.edge && edge_by_id.count(*f.edge)) other = edge_by_id[*f.edge]->other(c.id);
            rc.intermediate_fibers.emplace_back(f.a_squared, other);
        }
        std::sort(rc.intermediate_fibers.begin(), rc.intermediate_fibers.end());
        rnd.components.push_back(std::move(rc));
    }
    std::sort(rnd.components.begin(), rnd.components.end(),
              [](const RefinedComponent& x, const RefinedComponent& y) { return x.id < y.id; });
    for (const auto& e : G.edges) rnd.edges.push_back({std::min(e.from, e.to), std::max(e.from, e.to), e.kind});
    std::sort(rnd.edges.begin(), rnd.edges.end());
    return rnd;
}

}  // namespace wstab

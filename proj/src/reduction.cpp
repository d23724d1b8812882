#include "wstab/reduction.hpp"

#include "wstab/errors.hpp"

#include <algorithm>
#include <set>

namespace wstab {

std::string to_string(Move::Kind k) {
    switch (k) {
        case Move::Kind::ContractElliptic: return "DivisorialContractionElliptic";
        case Move::Kind::ContractPseudoelliptic: return "DivisorialContractionPseudoelliptic";
        case Move::Kind::Flip: return "LaNaveFlip";
        case Move::Kind::LogAbundance: return "LogAbundanceContraction";
    }
    return "?";
}

std::string firing_weights_string(const Move& m) {
    std::string out;
    for (const auto& x : m.firing_point) {
        if (!out.empty()) out += ",";
        out += x.to_string();
    }
    return out;
}

std::string describe(const Move& m) {
    std::string out = to_string(m.kind);
    switch (m.kind) {
        case Move::Kind::ContractElliptic:
            out += "(" + std::to_string(m.component) + " -> " + std::to_string(m.neighbor) + ")";
            break;
        case Move::Kind::ContractPseudoelliptic: out += "(" + std::to_string(m.component) + ")"; break;
        case Move::Kind::Flip:
            out += "(" + std::to_string(m.component) + ", neighbor " + std::to_string(m.neighbor) + ")";
            break;
        case Move::Kind::LogAbundance: {
            out += "[";
            for (std::size_t k = 0; k < m.parts.size(); ++k) out += (k ? "; " : "") + describe(m.parts[k]);
            out += "]";
            break;
        }
    }
    if (m.t) out += " at t = " + m.t->to_string();
    return out;
}

namespace {

DegenerationGraph contract_elliptic(const DegenerationGraph& G, int i, int requested) {
    ContractionLegality legal = elliptic_contraction_legality(G, i);
    if (!legal.legal) throw PreconditionError("cannot contract component " + std::to_string(i) + ": " + legal.reason);
    int j = legal.neighbor;
    if (requested >= 0 && requested != j) {
        throw PreconditionError("component " + std::to_string(i) + " contracts into its lowest-id neighbor " +
                                std::to_string(j) + ", not " + std::to_string(requested));
    }
    WeightPolynomial merged = L_squared(G, i) + L_squared(G, j);
    DegenerationGraph H = G;
    const Component& ci = G.at(i);
    Component& cj = H.at(j);
    cj.K_dot_C += ci.K_dot_C;
    cj.S_dot_C += ci.S_dot_C;
    cj.L_squared = merged;
    cj.intermediate_fibers.insert(cj.intermediate_fibers.end(), ci.intermediate_fibers.begin(), ci.intermediate_fibers.end());
    int parallel = 0;
    std::vector<Edge> edges;
    for (Edge e : H.edges) {
        bool between = e.kind == EdgeKind::TwistedFiber &&
                       ((e.from == i && e.to == j) || (e.from == j && e.to == i));
        if (between) {
            ++parallel;
            continue;
        }
        if (e.from == i) e.from = j;
        if (e.to == i) e.to = j;
        edges.push_back(e);
    }
    H.edges = std::move(edges);
    // Extra edges between the two components close loops in the section curve.
    cj.genus += ci.genus + (parallel - 1);
    for (auto& m : H.marks) {
        if (m.host == i) m.host = j;
    }
    H.components.erase(std::find_if(H.components.begin(), H.components.end(), [&](const Component& c) { return c.id == i; }));
    return canonicalize(std::move(H));
}

DegenerationGraph contract_pseudoelliptic(const DegenerationGraph& G, int i) {
    const Component& ci = G.at(i);
    if (ci.elliptic()) throw PreconditionError("component " + std::to_string(i) + " is not pseudoelliptic");
    auto edge = std::find_if(G.edges.begin(), G.edges.end(), [&](const Edge& e) { return e.touches(i); });
    if (edge == G.edges.end()) throw PreconditionError("pseudoelliptic component " + std::to_string(i) + " is not attached");
    int h = edge->other(i);
    int edge_id = edge->id;
    WeightPolynomial absorbed = L_squared(G, h) + L_squared(G, i);
    DegenerationGraph H = G;
    Component& host = H.at(h);
    host.L_squared = absorbed;
    std::erase_if(host.intermediate_fibers, [&](const IntermediateFiber& f) { return f.edge == edge_id; });
    std::erase_if(H.edges, [&](const Edge& e) { return e.id == edge_id; });
    std::erase_if(H.marks, [&](const MarkedFiber& m) { return m.host == i; });
    std::erase_if(H.components, [&](const Component& c) { return c.id == i; });
    return canonicalize(std::move(H));
}

DegenerationGraph flip(const DegenerationGraph& G, int i, int requested, const PointEvaluator* at) {
    FlipEligibility el = flip_eligibility(G, i, at);
    if (!el.eligible) throw PreconditionError("cannot flip component " + std::to_string(i) + ": " + el.reason);
    if (requested >= 0 && requested != el.neighbor) {
        throw PreconditionError("component " + std::to_string(i) + " flips toward " + std::to_string(el.neighbor) + ", not " +
                                std::to_string(requested));
    }
    int j = el.neighbor;
    const Component& ci = G.at(i);
    WeightPolynomial u = pseudomultisection_degree(G, i);
    // (L_Z + (c - s)S)^2 with c = u / -S.S collapses to u^2 / -S.S.
    WeightPolynomial pseudo = u * u * Rational(1 / (-ci.S_dot_C));
    WeightPolynomial neighbor_L2 = L_squared(G, i) + L_squared(G, j) - pseudo;

    DegenerationGraph H = G;
    int new_edge = H.next_edge_id();
    Component& cj = H.at(j);
    cj.K_dot_C += ci.K_dot_C;
    cj.S_dot_C += ci.S_dot_C;
    cj.L_squared = neighbor_L2;
    for (const auto& f : ci.intermediate_fibers) cj.intermediate_fibers.push_back(f);
    cj.intermediate_fibers.push_back({ci.S_dot_C, new_edge});
    std::erase_if(H.edges, [&](const Edge& e) { return e.id == el.edge; });
    H.edges.push_back({new_edge, i, j, EdgeKind::TwistedComponent});
    for (auto& m : H.marks) {
        if (m.host == i) m.host = j;
    }
    Component& p = H.at(i);
    p.kind = ComponentKind::Pseudoelliptic;
    p.genus = 0;
    p.K_dot_C = 0;
    p.S_dot_C = 0;
    p.intermediate_fibers.clear();
    p.L_squared = pseudo;
    p.contraction_degree = u;
    return canonicalize(std::move(H));
}

}  // namespace

DegenerationGraph apply_move(const DegenerationGraph& G, const Move& m, const PointEvaluator* at) {
    switch (m.kind) {
        case Move::Kind::ContractElliptic: return contract_elliptic(G, m.component, m.neighbor);
        case Move::Kind::ContractPseudoelliptic: return contract_pseudoelliptic(G, m.component);
        case Move::Kind::Flip: return flip(G, m.component, m.neighbor, at);
        case Move::Kind::LogAbundance: {
            DegenerationGraph H = G;
            for (const auto& part : m.parts) H = apply_move(H, part, at);
            return H;
        }
    }
    throw InvariantError("unknown move kind");
}

Move dispatch(const DegenerationGraph& G, const Quantity& q, const PointEvaluator* at) {
    Move m;
    m.component = q.component;
    m.trigger = q.kind;
    const Component& c = G.at(q.component);
    if (!c.elliptic()) {
        m.kind = Move::Kind::ContractPseudoelliptic;
        return m;
    }
    std::string flip_reason;
    if (q.kind == QuantityKind::SectionDegree) {
        FlipEligibility el = flip_eligibility(G, q.component, at);
        if (el.eligible) {
            m.kind = Move::Kind::Flip;
            m.neighbor = el.neighbor;
            return m;
        }
        flip_reason = "; no flip: " + el.reason;
    }
    ContractionLegality cl = elliptic_contraction_legality(G, q.component);
    if (!cl.legal) {
        throw PreconditionError("no legal move: " + to_string(q.kind) + " of component " + std::to_string(q.component) +
                                " vanishes" + flip_reason + "; no contraction: " + cl.reason);
    }
    m.kind = Move::Kind::ContractElliptic;
    m.neighbor = cl.neighbor;
    return m;
}

namespace {

std::vector<QuadraticNumber> point_on_segment(const WeightVector& from, const WeightVector& to, const SegmentRoot& t) {
    auto p0 = from.point();
    auto p1 = to.point();
    std::vector<QuadraticNumber> out;
    for (std::size_t k = 0; k < p0.size(); ++k) out.push_back(QuadraticNumber(p0[k]) + t.value() * QuadraticNumber(p1[k] - p0[k]));
    return out;
}

// Sign of q just after t (first non-vanishing derivative).
int sign_after(const UniPoly& q, const SegmentRoot& t) {
    int d = q.derivative().eval(t.value()).sign();
    return d != 0 ? d : sgn(q.c2);
}

class Walker {
public:
    Walker(ReductionTrace& trace, const ReduceOptions& options, std::size_t bound)
        : trace_(trace), options_(options), bound_(bound) {}

    DegenerationGraph walk(DegenerationGraph G, const WeightVector& from, const WeightVector& to, bool final) {
        SegmentRoot tc = SegmentRoot::rational(0);
        const SegmentRoot one = SegmentRoot::rational(1);
        while (true) {
            bool at_end = tc == one;
            SegmentPoint here(from, to, tc);
            std::optional<Quantity> firing;
            for (const auto& q : quantities(G)) {
                UniPoly uq = q.poly.restrict_to_segment(from, to);
                int v = uq.eval(tc.value()).sign();
                if (v < 0) {
                    throw InvariantError(to_string(q.kind) + " of component " + std::to_string(q.component) +
                                         " is negative at t = " + tc.to_string() + " without crossing a wall");
                }
                if (v > 0 || firing) continue;
                if (at_end) {
                    if (final) firing = q;
                    continue;
                }
                int after = sign_after(uq, tc);
                if (after <= 0) {
                    firing = q;
                } else if (uq.derivative().eval(tc.value()).sign() == 0) {
                    warn("tangential contact: " + to_string(q.kind) + " of component " + std::to_string(q.component) +
                         " touches zero at t = " + tc.to_string() + " and stays positive");
                }
            }
            if (firing && !at_end) {
                G = fire(G, *firing, from, to, tc, here);
                continue;
            }
            if (at_end) {
                if (final) G = log_abundance(G, from, to);
                return G;
            }
            std::optional<SegmentRoot> next;
            for (const auto& q : quantities(G)) {
                auto r = first_root_in(q.poly.restrict_to_segment(from, to), tc, one);
                if (r && (!next || *r < *next)) next = r;
            }
            tc = next ? *next : one;
        }
    }

private:
    Move make_move(const DegenerationGraph& G, const Quantity& q, const WeightVector& from, const WeightVector& to,
                   const SegmentRoot& t, const PointEvaluator& here) {
        Move m = dispatch(G, q, &here);
        m.t = t;
        m.firing_point = point_on_segment(from, to, t);
        return m;
    }

    DegenerationGraph apply(const DegenerationGraph& G, const Move& m, const PointEvaluator& here) {
        if (++applied_ > bound_) {
            throw InvariantError("reduction exceeded " + std::to_string(bound_) + " moves; the theory guarantees termination");
        }
        DegenerationGraph H = apply_move(G, m, &here);
        if (options_.observer) options_.observer(G, m, H);
        return H;
    }

    DegenerationGraph fire(const DegenerationGraph& G, const Quantity& q, const WeightVector& from, const WeightVector& to,
                           const SegmentRoot& t, const PointEvaluator& here) {
        Move m = make_move(G, q, from, to, t, here);
        DegenerationGraph H = apply(G, m, here);
        trace_.steps.push_back({m, H});
        return H;
    }

    // Everything vanishing at the target is contracted together.
    DegenerationGraph log_abundance(DegenerationGraph G, const WeightVector& from, const WeightVector& to) {
        const SegmentRoot one = SegmentRoot::rational(1);
        RationalPoint here(to);
        Move group;
        group.kind = Move::Kind::LogAbundance;
        group.t = one;
        group.firing_point = point_on_segment(from, to, one);
        while (true) {
            std::optional<Quantity> zero;
            for (const auto& q : quantities(G)) {
                Rational v = q.poly.eval(to);
                if (v < 0) {
                    throw InvariantError(to_string(q.kind) + " of component " + std::to_string(q.component) +
                                         " is negative at the target weights");
                }
                if (v == 0) {
                    zero = q;
                    break;
                }
            }
            if (!zero) break;
            Move m = make_move(G, *zero, from, to, one, here);
            G = apply(G, m, here);
            group.parts.push_back(m);
        }
        if (!group.parts.empty()) {
            if (group.parts.size() == 1) {
                trace_.steps.push_back({group.parts.front(), G});
            } else {
                group.trigger = group.parts.front().trigger;
                group.component = group.parts.front().component;
                trace_.steps.push_back({group, G});
            }
        }
        return G;
    }

    void warn(const std::string& w) {
        if (std::find(trace_.warnings.begin(), trace_.warnings.end(), w) == trace_.warnings.end()) trace_.warnings.push_back(w);
    }

    ReductionTrace& trace_;
    const ReduceOptions& options_;
    std::size_t bound_;
    std::size_t applied_ = 0;
};

std::size_t move_bound(const DegenerationGraph& G) { return 3 * G.components.size() + G.marks.size(); }

DegenerationGraph project(const DegenerationGraph& A, std::size_t arity, const WeightVector& I) {
    DegenerationGraph G = A;
    std::erase_if(G.marks, [](const MarkedFiber& m) { return m.auxiliary; });
    for (auto& c : G.components) {
        if (c.L_squared) c.L_squared = c.L_squared->with_arity(arity);
        if (c.contraction_degree) c.contraction_degree = c.contraction_degree->with_arity(arity);
    }
    G.weights = I;
    return canonicalize(std::move(G));
}

Move project(Move m, std::size_t arity) {
    if (m.firing_point.size() > arity + 1) m.firing_point.resize(arity + 1);
    for (auto& p : m.parts) p = project(p, arity);
    return m;
}

void check_same_arity(const DegenerationGraph& G, const WeightVector& I) {
    if (I.arity() != G.arity()) {
        throw PreconditionError("weight vector has " + std::to_string(I.arity()) + " fiber weights, graph expects " +
                                std::to_string(G.arity()));
    }
}

void require_admissible(const WeightVector& I, const std::string& what) {
    auto v = check_weights(I);
    if (!v.empty()) throw PreconditionError(what + " weights are not admissible: " + v.front().message);
}

void require_final_stable(const DegenerationGraph& G, const WeightVector& I) {
    auto report = is_stable(G, I);
    if (report.verdict != Verdict::Stable) {
        const auto& w = report.failing.front();
        throw InvariantError("reduction ended in a graph that is not stable: " + w.kind + " of component " +
                             std::to_string(w.id) + " is " + w.value.get_str());
    }
}

}  // namespace

ReductionResult stable_reduce(const DegenerationGraph& G0, const WeightVector& I, const ReduceOptions& options) {
    check_same_arity(G0, I);
    DegenerationGraph G = G0;
    G.weights = I;
    require_valid(G);
    G = canonicalize(G);

    const std::size_t n = G.arity();
    auto ell = G.elliptic_ids();
    const std::size_t m = ell.size();
    DegenerationGraph A = G;
    A.weights.a.resize(n + m, Rational(0));
    for (auto& c : A.components) {
        if (c.L_squared) c.L_squared = c.L_squared->with_arity(n + m);
        if (c.contraction_degree) c.contraction_degree = c.contraction_degree->with_arity(n + m);
    }
    for (std::size_t k = 0; k < m; ++k) {
        int index = static_cast<int>(n + 1 + k);
        A.marks.push_back({index, ell[k], KodairaType::smooth(), 3, true});
        Component& c = A.at(ell[k]);
        if (c.L_squared) c.L_squared->add_term({0, index}, 6);
    }

    WeightVector start = A.weights;
    WeightVector end = A.weights;
    bool found = false;
    for (int k = 0; k <= 40 && !found; ++k) {
        Rational w0(Integer(1) << k, 12);
        w0.canonicalize();
        for (std::size_t j = n; j < n + m; ++j) start.a[j] = w0;
        found = is_stable(A, start).verdict == Verdict::Stable;
    }
    if (!found) {
        auto report = is_stable(A, start);
        const auto& w = report.failing.front();
        throw PreconditionError("no auxiliary divisor makes the graph stable: " + w.kind + " of component " +
                                std::to_string(w.id) + " is " + w.value.get_str());
    }

    ReductionResult result;
    result.trace.start = I;
    result.trace.target = I;
    ReductionTrace raw;
    Walker walker(raw, options, move_bound(G));
    DegenerationGraph final_aug = walker.walk(A, start, end, true);
    for (auto& step : raw.steps) result.trace.steps.push_back({project(step.move, n), project(step.after, n, I)});
    result.trace.warnings = raw.warnings;
    result.graph = project(final_aug, n, I);
    require_final_stable(result.graph, I);
    return result;
}

ReductionResult reduce_weights(const DegenerationGraph& G0, const WeightVector& I2, const WeightVector& I1,
                               const ReduceOptions& options) {
    check_same_arity(G0, I2);
    check_same_arity(G0, I1);
    require_admissible(I2, "starting");
    require_admissible(I1, "target");
    if (I1.s > I2.s) throw PreconditionError("target s exceeds starting s");
    for (std::size_t j = 0; j < I1.a.size(); ++j) {
        if (I1.a[j] > I2.a[j]) throw PreconditionError("target a" + std::to_string(j + 1) + " exceeds the starting weight");
    }
    DegenerationGraph G = G0;
    G.weights = I2;
    require_valid(G);
    G = canonicalize(G);
    auto report = is_stable(G, I2);
    if (report.verdict != Verdict::Stable) {
        const auto& w = report.failing.front();
        throw PreconditionError("graph is not stable at the starting weights: " + w.kind + " of component " +
                                std::to_string(w.id) + " is " + w.value.get_str());
    }

    WeightVector I3 = I1;
    I3.s = I2.s;
    std::vector<std::pair<WeightVector, WeightVector>> segments;
    if (!(I2 == I3)) segments.emplace_back(I2, I3);
    if (!(I3 == I1)) segments.emplace_back(I3, I1);

    ReductionResult result;
    result.trace.start = I2;
    result.trace.target = I1;
    Walker walker(result.trace, options, move_bound(G));
    for (std::size_t k = 0; k < segments.size(); ++k) {
        G = walker.walk(G, segments[k].first, segments[k].second, k + 1 == segments.size());
    }
    for (auto& step : result.trace.steps) step.after.weights = I1;
    G.weights = I1;
    result.graph = G;
    require_final_stable(result.graph, I1);
    return result;
}

Rational min_section_weight_no_pseudoelliptic(const DegenerationGraph& G0, const std::vector<Rational>& a) {
    DegenerationGraph G = G0;
    if (a.size() != G.arity()) {
        throw PreconditionError("expected " + std::to_string(G.arity()) + " fiber weights, got " + std::to_string(a.size()));
    }
    G.weights.s = 1;
    G.weights.a = a;
    require_valid(G);
    if (G.pseudoelliptic_count() != 0) throw PreconditionError("the threshold is defined for graphs without pseudoelliptic components");
    const WeightVector at = G.weights;
    Rational best = 1;
    while (true) {
        std::optional<int> worst;
        Rational worst_u;
        for (int id : G.elliptic_ids()) {
            const Component& c = G.at(id);
            Rational u = pseudomultisection_degree(G, id).eval(at);
            if (u > 0 && c.S_dot_C < 0) best = std::min(best, Rational(u / -c.S_dot_C));
            if (u <= 0 && (!worst || u < worst_u)) {
                worst = id;
                worst_u = u;
            }
        }
        if (!worst) break;
        ContractionLegality cl = elliptic_contraction_legality(G, *worst);
        if (!cl.legal) {
            throw PreconditionError("component " + std::to_string(*worst) + " has non-positive pseudomultisection degree " +
                                    worst_u.get_str() + " and cannot be contracted: " + cl.reason);
        }
        Move m;
        m.kind = Move::Kind::ContractElliptic;
        m.component = *worst;
        m.neighbor = cl.neighbor;
        G = apply_move(G, m);
    }
    return best;
}

}  // namespace wstab

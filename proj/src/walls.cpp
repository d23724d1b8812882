#include "wstab/walls.hpp"

#include "wstab/errors.hpp"
#include "wstab/io.hpp"
#include "wstab/reduction.hpp"

#include <cstdlib>
#include <deque>
#include <map>

namespace wstab {

std::optional<WeightPolynomial> normalize_wall(const WeightPolynomial& p) {
    WeightPolynomial q = p;
    while (!q.is_zero() && q.degree() > 0 && q.divisible_by_s()) q = q.divide_by_s();
    if (q.degree() <= 0) return std::nullopt;
    return q.primitive();
}

std::vector<Rational> weight_box(const DegenerationGraph& G) {
    std::vector<Rational> caps(G.arity(), Rational(1));
    for (const auto& m : G.marks) {
        if (m.auxiliary || m.index < 1 || static_cast<std::size_t>(m.index) > caps.size()) continue;
        Rational& c = caps[static_cast<std::size_t>(m.index - 1)];
        c = std::min(c, lc_weight_cap(m.type).bound);
    }
    return caps;
}

namespace {

// A linear wall with one strict sign on s in [0,1], a_j in [0, cap_j] never
// meets the admissible region.
bool misses_box(const WeightPolynomial& w, const std::vector<Rational>& caps) {
    if (w.degree() != 1) return false;
    Rational lo = w.constant_term();
    Rational hi = lo;
    for (std::size_t v = 0; v <= caps.size(); ++v) {
        Rational c = w.linear_coefficient(static_cast<int>(v));
        Rational top = v == 0 ? Rational(1) : caps[v - 1];
        if (c > 0) {
            hi += c * top;
        } else {
            lo += c * top;
        }
    }
    return lo > 0 || hi < 0;
}

// For a quantity that cuts out no wall: is it positive on the box interior?
bool positive_on_box(const WeightPolynomial& p, const std::vector<Rational>& caps) {
    std::vector<Rational> mid(caps.size() + 1);
    mid[0] = Rational(1, 2);
    for (std::size_t j = 0; j < caps.size(); ++j) mid[j + 1] = caps[j] / 2;
    return p.eval(mid) > 0;
}

// Sign of p relative to its normalized wall (they differ by a factor s^k * c).
int relative_sign(const WeightPolynomial& p, const WeightPolynomial& wall) {
    WeightPolynomial q = p;
    while (!q.is_zero() && q.degree() > 0 && q.divisible_by_s()) q = q.divide_by_s();
    return sgn(q.leading_coefficient()) * sgn(wall.leading_coefficient());
}

std::vector<Move> candidate_moves(const DegenerationGraph& G, const Quantity& q) {
    std::vector<Move> out;
    Move m;
    m.component = q.component;
    m.trigger = q.kind;
    if (!G.at(q.component).elliptic()) {
        m.kind = Move::Kind::ContractPseudoelliptic;
        out.push_back(m);
        return out;
    }
    if (q.kind == QuantityKind::SectionDegree) {
        FlipEligibility el = flip_eligibility(G, q.component);
        if (el.eligible) {
            Move f = m;
            f.kind = Move::Kind::Flip;
            f.neighbor = el.neighbor;
            out.push_back(f);
        }
    }
    ContractionLegality cl = elliptic_contraction_legality(G, q.component);
    if (cl.legal) {
        m.kind = Move::Kind::ContractElliptic;
        m.neighbor = cl.neighbor;
        out.push_back(m);
    }
    return out;
}

std::size_t state_bound(const DegenerationGraph& G) {
    if (const char* env = std::getenv("WSTAB_MAX_STATES")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        throw PreconditionError(std::string("WSTAB_MAX_STATES must be a positive integer, got '") + env + "'");
    }
    std::size_t comps = G.components.size();
    std::size_t factor = comps >= 40 ? (std::size_t(1) << 40) : (std::size_t(1) << comps);
    return factor * (G.marks.size() + 2);
}

}  // namespace

ChamberAtlas explore(const DegenerationGraph& G0) {
    require_valid(G0);
    DegenerationGraph G = canonicalize(G0);
    ChamberAtlas atlas;
    atlas.arity = G.arity();
    atlas.state_bound = state_bound(G);
    const auto caps = weight_box(G);

    std::map<std::string, int> wall_index;
    std::map<std::string, int> state_index;
    auto add_state = [&](DegenerationGraph H) {
        std::string key = rnd_key(H);
        auto it = state_index.find(key);
        if (it != state_index.end()) return it->second;
        if (atlas.states.size() >= atlas.state_bound) {
            throw InvariantError("explore exceeded the state bound " + std::to_string(atlas.state_bound));
        }
        int id = static_cast<int>(atlas.states.size());
        state_index.emplace(key, id);
        atlas.states.push_back({id, std::move(H), key, {}, {}, true});
        return id;
    };
    add_state(G);

    for (std::size_t k = 0; k < atlas.states.size(); ++k) {
        const DegenerationGraph state = atlas.states[k].graph;
        std::vector<std::pair<int, int>> region;
        std::vector<int> successors;
        bool stable_somewhere = true;
        auto record = [&](const Quantity& q, bool realized) -> std::optional<int> {
            auto w = normalize_wall(q.poly);
            if (!w || misses_box(*w, caps)) return std::nullopt;
            std::string wkey = w->to_string();
            auto it = wall_index.find(wkey);
            int idx;
            if (it == wall_index.end()) {
                idx = static_cast<int>(atlas.walls.size());
                wall_index.emplace(wkey, idx);
                atlas.walls.push_back({*w, {}, false});
            } else {
                idx = it->second;
            }
            Wall& wall = atlas.walls[static_cast<std::size_t>(idx)];
            wall.provenance.push_back({static_cast<int>(k), q.kind, q.component});
            wall.realized = wall.realized || realized;
            return idx;
        };
        for (const auto& q : quantities(state)) {
            auto moves = candidate_moves(state, q);
            for (const auto& m : moves) {
                int succ = add_state(apply_move(state, m));
                if (std::find(successors.begin(), successors.end(), succ) == successors.end()) successors.push_back(succ);
            }
            // Quantities of one sign on the whole box still lead somewhere
            // but cut out no wall.
            if (auto idx = record(q, !moves.empty())) {
                region.emplace_back(*idx, relative_sign(q.poly, atlas.walls[static_cast<std::size_t>(*idx)].poly));
            } else if (!positive_on_box(q.poly, caps)) {
                stable_somewhere = false;
            }
            // Past the weight-sum bound a vanishing section degree contracts
            // instead of flipping.
            if (q.kind == QuantityKind::SectionDegree && flip_eligibility(state, q.component).eligible) {
                WeightPolynomial slack = WeightPolynomial::constant(2, state.arity()) - marked_weight_sum(state, q.component);
                record({QuantityKind::FlipWeightSum, q.component, slack}, true);
            }
        }
        atlas.states[k].stable_region = std::move(region);
        atlas.states[k].successors = std::move(successors);
        atlas.states[k].stable_somewhere = stable_somewhere;
    }
    return atlas;
}

std::vector<int> sign_vector(const ChamberAtlas& atlas, const WeightVector& I) {
    std::vector<int> out;
    out.reserve(atlas.walls.size());
    for (const auto& w : atlas.walls) out.push_back(sign(w.poly.eval(I)));
    return out;
}

bool on_wall(const ChamberAtlas& atlas, const WeightVector& I) {
    for (const auto& w : atlas.walls) {
        if (w.poly.eval(I) == 0) return true;
    }
    return false;
}

int find_state(const ChamberAtlas& atlas, const DegenerationGraph& G) {
    std::string key = rnd_key(G);
    for (const auto& s : atlas.states) {
        if (s.key == key) return s.id;
    }
    return -1;
}

namespace {

void require_off_walls(const ChamberAtlas& atlas, const WeightVector& I) {
    if (I.arity() != atlas.arity) {
        throw PreconditionError("weight vector has " + std::to_string(I.arity()) + " fiber weights, atlas expects " +
                                std::to_string(atlas.arity));
    }
    for (const auto& w : atlas.walls) {
        if (w.poly.eval(I) == 0) throw PreconditionError("weights " + I.to_string() + " lie on the wall " + w.poly.to_string() + " = 0");
    }
}

}  // namespace

std::optional<SegmentRoot> q_cartier_threshold(const WeightVector& I, const ChamberAtlas& atlas) {
    require_off_walls(atlas, I);
    auto p = I.point();
    std::optional<SegmentRoot> best;
    for (std::size_t v = 0; v < p.size(); ++v) {
        if (p[v] <= 0) continue;
        auto q = p;
        q[v] = 0;
        WeightVector J = WeightVector::from_point(q, I.g, I.d);
        for (const auto& w : atlas.walls) {
            auto r = first_root_in(w.poly.restrict_to_segment(I, J));
            if (r && (!best || *r < *best)) best = r;
        }
    }
    return best;
}

bool same_chamber(const WeightVector& I1, const WeightVector& I2, const ChamberAtlas& atlas) {
    require_off_walls(atlas, I1);
    require_off_walls(atlas, I2);
    if (sign_vector(atlas, I1) != sign_vector(atlas, I2)) return false;
    for (const auto& w : atlas.walls) {
        if (first_root_in(w.poly.restrict_to_segment(I1, I2))) return false;
    }
    return true;
}

}  // namespace wstab

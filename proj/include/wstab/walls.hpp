#pragma once

#include "wstab/degeneration.hpp"
#include "wstab/segment_root.hpp"
#include "wstab/weight_poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wstab {

struct WallSource {
    int state = 0;
    QuantityKind kind = QuantityKind::SectionDegree;
    int component = 0;
};

struct Wall {
    WeightPolynomial poly;  ///< normalized, never constant
    std::vector<WallSource> provenance;
    bool realized = false;  ///< some source quantity has a legal move
};

struct AtlasState {
    int id = 0;
    DegenerationGraph graph;
    std::string key;  ///< canonical refined numerical data
    /// (wall index, +1): the state is stable exactly where all of these hold.
    std::vector<std::pair<int, int>> stable_region;
    std::vector<int> successors;
    /// False when some quantity is non-positive on the whole weight box.
    bool stable_somewhere = true;
};

struct ChamberAtlas {
    std::size_t arity = 0;
    std::vector<Wall> walls;
    std::vector<AtlasState> states;
    std::size_t state_bound = 0;
};

/// Strips factors of s, then makes the coefficients coprime integers with a
/// positive leading coefficient (lex order s > a1 > ...). Constants give
/// nullopt: they are not walls.
std::optional<WeightPolynomial> normalize_wall(const WeightPolynomial& p);

/// Upper bounds for the a_j used to clip linear walls: the lc caps of the
/// marks carrying a_j.
std::vector<Rational> weight_box(const DegenerationGraph& G);

/// Breadth-first closure of the states reachable by moves. The state bound is
/// 2^components * (marks + 2) unless WSTAB_MAX_STATES is set.
ChamberAtlas explore(const DegenerationGraph& G);

/// Signs of every wall at I.
std::vector<int> sign_vector(const ChamberAtlas& atlas, const WeightVector& I);
bool on_wall(const ChamberAtlas& atlas, const WeightVector& I);
/// Index of the state with the same refined numerical data, or -1.
int find_state(const ChamberAtlas& atlas, const DegenerationGraph& G);

/// Smallest t in (0,1) at which sending one coordinate of I to zero meets a
/// wall; nullopt is infinity. Throws PreconditionError when I is on a wall.
std::optional<SegmentRoot> q_cartier_threshold(const WeightVector& I, const ChamberAtlas& atlas);

bool same_chamber(const WeightVector& I1, const WeightVector& I2, const ChamberAtlas& atlas);

}  // namespace wstab

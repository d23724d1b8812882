#pragma once

#include "wstab/degeneration.hpp"
#include "wstab/segment_root.hpp"
#include "wstab/weight_poly.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace wstab {

struct Move {
    enum class Kind { ContractElliptic, ContractPseudoelliptic, Flip, LogAbundance };
    Kind kind = Kind::ContractElliptic;
    int component = -1;
    int neighbor = -1;  ///< absorbing component (contraction) or flip target
    QuantityKind trigger = QuantityKind::SectionDegree;
    /// Firing parameter on the walked segment and the weight point it gives.
    std::optional<SegmentRoot> t;
    std::vector<QuadraticNumber> firing_point;  ///< s, a_1..a_n
    std::vector<Move> parts;                    ///< LogAbundance only
};

std::string to_string(Move::Kind k);
std::string describe(const Move& m);
/// Weight point as "s,a1,..." with exact entries.
std::string firing_weights_string(const Move& m);

struct TraceStep {
    Move move;
    DegenerationGraph after;
};

struct ReductionTrace {
    WeightVector start;
    WeightVector target;
    std::vector<TraceStep> steps;
    std::vector<std::string> warnings;
};

struct ReductionResult {
    ReductionTrace trace;
    DegenerationGraph graph;
};

/// Called around every elementary move with the unprojected graphs.
using MoveObserver = std::function<void(const DegenerationGraph& before, const Move&, const DegenerationGraph& after)>;

struct ReduceOptions {
    MoveObserver observer;
};

/// Applies one move symbolically. Legality of flips and elliptic contractions
/// is checked; the vanishing of the trigger is the caller's business.
DegenerationGraph apply_move(const DegenerationGraph& G, const Move& m, const PointEvaluator* at = nullptr);

/// The move fired when quantity q vanishes, or PreconditionError (no legal move).
Move dispatch(const DegenerationGraph& G, const Quantity& q, const PointEvaluator* at = nullptr);

/// Stable model at I of a graph with complete refined data, by lowering
/// auxiliary fiber weights to zero.
ReductionResult stable_reduce(const DegenerationGraph& G, const WeightVector& I, const ReduceOptions& options = {});

/// Walks from I2 (where G is stable) to I1 <= I2: fiber weights first, then s.
ReductionResult reduce_weights(const DegenerationGraph& G, const WeightVector& I2, const WeightVector& I1,
                               const ReduceOptions& options = {});

/// Largest s~ (capped at 1) below which reduction produces no surviving
/// pseudoelliptic component, for fiber weights a.
Rational min_section_weight_no_pseudoelliptic(const DegenerationGraph& G, const std::vector<Rational>& a);

}  // namespace wstab

#pragma once

#include "wstab/fibers.hpp"
#include "wstab/rational.hpp"
#include "wstab/weight_poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wstab {

enum class ComponentKind { Elliptic, Pseudoelliptic };
enum class EdgeKind { TwistedFiber, TwistedComponent };

std::string to_string(ComponentKind k);
std::string to_string(EdgeKind k);

struct IntermediateFiber {
    Rational a_squared;
    std::optional<int> edge;  ///< double-locus edge along the twisted component, if any
    friend bool operator==(const IntermediateFiber&, const IntermediateFiber&) = default;
};

/// A surface component of the special fiber. Elliptic components carry their
/// section component's data (genus, K.C, S.C) under the same id.
struct Component {
    int id = 0;
    ComponentKind kind = ComponentKind::Elliptic;
    int genus = 0;
    Rational K_dot_C{0};
    Rational S_dot_C{0};
    std::vector<IntermediateFiber> intermediate_fibers;
    /// Required on pseudoelliptic components; on elliptic ones it overrides the
    /// closed form and must be present once intermediate fibers exist.
    std::optional<WeightPolynomial> L_squared;
    /// Pseudoelliptic only: (K_Z + aF + E).S of the contracted section, whose
    /// vanishing contracts the component.
    std::optional<WeightPolynomial> contraction_degree;

    bool elliptic() const { return kind == ComponentKind::Elliptic; }
    friend bool operator==(const Component&, const Component&) = default;
};

struct Edge {
    int id = 0;
    int from = 0;
    int to = 0;
    EdgeKind kind = EdgeKind::TwistedFiber;

    bool touches(int c) const { return from == c || to == c; }
    int other(int c) const { return from == c ? to : from; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

struct MarkedFiber {
    int index = 1;  ///< position j of a_j, 1-based
    int host = 0;
    KodairaType type;
    int incidence = 1;  ///< F_j . C on the host's section component
    bool auxiliary = false;
    friend bool operator==(const MarkedFiber&, const MarkedFiber&) = default;
};

struct DegenerationGraph {
    int genus = 0;
    int j_degree = 0;
    WeightVector weights;
    std::vector<Component> components;
    std::vector<Edge> edges;
    std::vector<MarkedFiber> marks;

    std::size_t arity() const { return weights.a.size(); }
    const Component* find(int id) const;
    Component* find(int id);
    const Component& at(int id) const;
    Component& at(int id);
    std::vector<int> elliptic_ids() const;
    int pseudoelliptic_count() const;
    int next_edge_id() const;
    friend bool operator==(const DegenerationGraph&, const DegenerationGraph&) = default;
};

struct Violation {
    std::string where;  ///< "component 3", "edge 2", "mark 1", "weights", "graph"
    std::string message;
    friend bool operator==(const Violation&, const Violation&) = default;
};

std::vector<Violation> validate(const DegenerationGraph& G);
/// Throws PreconditionError listing the violations when G is invalid.
void require_valid(const DegenerationGraph& G);

/// Admissibility of the weights alone: 0 < s <= 1, 0 <= a_j < 1.
std::vector<Violation> check_weights(const WeightVector& I);

/// K.C + s*S.C + sum a_j*(F_j.C) on an elliptic component.
WeightPolynomial section_lc_degree(const DegenerationGraph& G, int component_id);
/// K.C + sum a_j*(F_j.C): the section degree without its s term.
WeightPolynomial pseudomultisection_degree(const DegenerationGraph& G, int component_id);
/// 2s(K.C + sum a_j F_j.C) + s^2 S.C.
WeightPolynomial closed_form_L_squared(const DegenerationGraph& G, int component_id);
/// Stored L^2 if present, else the closed form.
WeightPolynomial L_squared(const DegenerationGraph& G, int component_id);
/// Twisted-fiber edges (self loops twice) plus intermediate fibers on an edge.
int double_locus_count(const DegenerationGraph& G, int component_id);
/// sum a_j*(F_j.C) over non-auxiliary marks hosted on the component.
WeightPolynomial marked_weight_sum(const DegenerationGraph& G, int component_id);

/// Sorted, deduplicated representation; drops stored elliptic L^2 that equals
/// the closed form on components without intermediate fibers.
DegenerationGraph canonicalize(DegenerationGraph G);

// ---- Quantities and stability ----

/// FlipWeightSum is 2 - sum a_j*(F_j.C) on a flip candidate; it never enters
/// stability, only the choice between a flip and a contraction.
enum class QuantityKind { SectionDegree, LSquared, ContractionDegree, FlipWeightSum };
std::string to_string(QuantityKind k);

struct Quantity {
    QuantityKind kind;
    int component;
    WeightPolynomial poly;
};

/// All candidate non-positive quantities in tie-break order: section degrees
/// by ascending id, then per component (ascending id) the contraction degree
/// before L^2.
std::vector<Quantity> quantities(const DegenerationGraph& G);

enum class Verdict { Stable, Unstable, UnstableAtWall };
std::string to_string(Verdict v);

struct Witness {
    std::string kind;  ///< quantity kind, or "weight_cap"
    int id = 0;        ///< component id, or mark index for caps
    Rational value;
};

struct StabilityReport {
    Verdict verdict = Verdict::Stable;
    std::vector<Witness> values;
    std::vector<Witness> failing;
};

StabilityReport is_stable(const DegenerationGraph& G, const WeightVector& I);

struct WeierstrassConfig {
    int N = 0;
    int g = 0;
    std::vector<KodairaType> fiber_types;  ///< mark j carries a_j
};

/// Caps on every mark, then (N + 2g - 2) - s*N + sum a_j > 0.
StabilityReport weierstrass_stability(const WeierstrassConfig& W, const WeightVector& I);
/// One elliptic component with K.C = N + 2g - 2, S.C = -N and one
/// incidence-1 mark per fiber.
DegenerationGraph weierstrass_graph(const WeierstrassConfig& W, const WeightVector& I);

// ---- Move legality ----

/// Sign of a weight polynomial at some (possibly irrational) point.
class PointEvaluator {
public:
    virtual ~PointEvaluator() = default;
    virtual int sign(const WeightPolynomial& p) const = 0;
};

class RationalPoint : public PointEvaluator {
public:
    explicit RationalPoint(WeightVector I) : I_(std::move(I)) {}
    int sign(const WeightPolynomial& p) const override { return wstab::sign(p.eval(I_)); }

private:
    WeightVector I_;
};

class SegmentPoint : public PointEvaluator {
public:
    SegmentPoint(WeightVector from, WeightVector to, SegmentRoot t)
        : from_(std::move(from)), to_(std::move(to)), t_(std::move(t)) {}
    int sign(const WeightPolynomial& p) const override {
        return p.restrict_to_segment(from_, to_).eval(t_.value()).sign();
    }

private:
    WeightVector from_, to_;
    SegmentRoot t_;
};

struct FlipEligibility {
    bool eligible = false;
    std::string reason;  ///< first violated condition
    int neighbor = -1;
    int edge = -1;
};

/// Without a point, the weight-sum condition is not checked.
FlipEligibility flip_eligibility(const DegenerationGraph& G, int component_id, const PointEvaluator* at = nullptr);

struct ContractionLegality {
    bool legal = false;
    std::string reason;
    int neighbor = -1;
};

ContractionLegality elliptic_contraction_legality(const DegenerationGraph& G, int component_id);

}  // namespace wstab

namespace wstab {

// ---- Refined numerical data ----

struct RefinedComponent {
    int id = 0;
    ComponentKind kind = ComponentKind::Elliptic;
    int genus = 0;
    Rational K_dot_C{0};
    Rational S_dot_C{0};
    std::vector<std::pair<int, int>> incidences;  ///< (mark index, summed F.C), sorted
    WeightPolynomial L_squared;
    std::optional<WeightPolynomial> contraction_degree;
    /// (A^2, component on the other side of the attached edge), sorted
    std::vector<std::pair<Rational, std::optional<int>>> intermediate_fibers;
    friend bool operator==(const RefinedComponent&, const RefinedComponent&) = default;
};

struct RefinedEdge {
    int a = 0;  ///< a <= b
    int b = 0;
    EdgeKind kind = EdgeKind::TwistedFiber;
    friend auto operator<=>(const RefinedEdge&, const RefinedEdge&) = default;
};

/// Everything the reduction engine is allowed to look at: the dual weighted
/// graph of the section and per-component intersection numbers and L^2.
struct RefinedNumericalData {
    int genus = 0;
    std::size_t arity = 0;
    std::vector<RefinedComponent> components;  ///< ascending id
    std::vector<RefinedEdge> edges;            ///< sorted multiset
    friend bool operator==(const RefinedNumericalData&, const RefinedNumericalData&) = default;
};

/// Throws PreconditionError when an elliptic component with intermediate
/// fibers has no stored L^2.
RefinedNumericalData refine(const DegenerationGraph& G);

}  // namespace wstab

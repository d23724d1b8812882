#pragma once

#include "wstab/rational.hpp"

#include <string>
#include <string_view>

namespace wstab {

/// Kodaira fiber type. `n` is meaningful only for I(n) (n >= 1) and I*(n) (n >= 0).
struct KodairaType {
    enum class Kind { Smooth, I, IStar, II, III, IV, IIStar, IIIStar, IVStar };
    Kind kind = Kind::Smooth;
    int n = 0;

    static KodairaType smooth() { return {}; }
    static KodairaType i(int n);
    static KodairaType i_star(int n);
    static KodairaType of(Kind k) { return {k, 0}; }

    bool is_additive() const;
    std::string to_string() const;  ///< "I0", "I3", "I*2", "II", "IV*", ...
    friend bool operator==(const KodairaType&, const KodairaType&) = default;
};

/// "I0" (smooth), "I<n>", "I*<n>", "II", "III", "IV", "II*", "III*", "IV*".
KodairaType parse_kodaira(std::string_view text);

struct SingularityTag {
    enum class Kind { Smooth, A, AStar };
    Kind kind = Kind::Smooth;
    int m = 0;

    std::string to_string() const;  ///< "smooth", "A3", "A*5"
    friend bool operator==(const SingularityTag&, const SingularityTag&) = default;
};

struct WeightCap {
    Rational bound;
    bool inclusive = true;

    bool admits(const Rational& a) const { return inclusive ? a <= bound : a < bound; }
    friend bool operator==(const WeightCap&, const WeightCap&) = default;
};

/// Largest weight a fiber of this type may carry while the pair stays lc.
WeightCap lc_weight_cap(const KodairaType& f);

/// Singularity of the twisted model at the section point. Throws for Smooth.
SingularityTag section_singularity(const KodairaType& f);

int component_count(const KodairaType& f);

/// One blow-up of the section point: A(m) -> A(m-2), A(1), A(2) -> smooth.
SingularityTag blowup_section_singularity(const SingularityTag& t);

/// A^2 of the next intermediate component, A^2 / (1 - A^2). Needs A^2 < 0.
Rational next_intermediate_self_intersection(const Rational& a_squared);

}  // namespace wstab

#include "wstab/fibers.hpp"

#include "wstab/errors.hpp"

#include <cctype>

namespace wstab {

using K = KodairaType::Kind;

KodairaType KodairaType::i(int n) {
    if (n < 1) throw PreconditionError("I(n) needs n >= 1");
    return {K::I, n};
}

KodairaType KodairaType::i_star(int n) {
    if (n < 0) throw PreconditionError("I*(n) needs n >= 0");
    return {K::IStar, n};
}

bool KodairaType::is_additive() const { return kind != K::Smooth && kind != K::I; }

std::string KodairaType::to_string() const {
    switch (kind) {
        case K::Smooth: return "I0";
        case K::I: return "I" + std::to_string(n);
        case K::IStar: return "I*" + std::to_string(n);
        case K::II: return "II";
        case K::III: return "III";
        case K::IV: return "IV";
        case K::IIStar: return "II*";
        case K::IIIStar: return "III*";
        case K::IVStar: return "IV*";
    }
    return "?";
}

KodairaType parse_kodaira(std::string_view text) {
    if (text == "II") return KodairaType::of(K::II);
    if (text == "III") return KodairaType::of(K::III);
    if (text == "IV") return KodairaType::of(K::IV);
    if (text == "II*") return KodairaType::of(K::IIStar);
    if (text == "III*") return KodairaType::of(K::IIIStar);
    if (text == "IV*") return KodairaType::of(K::IVStar);
    auto digits = [&](std::string_view d) {
        if (d.empty() || d.size() > 6) throw ParseError("bad Kodaira type '" + std::string(text) + "'");
        for (char c : d) {
            if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad Kodaira type '" + std::string(text) + "'");
        }
        return std::stoi(std::string(d));
    };
    if (text.size() >= 2 && text.substr(0, 2) == "I*") return KodairaType::i_star(digits(text.substr(2)));
    if (!text.empty() && text[0] == 'I') {
        int n = digits(text.substr(1));
        return n == 0 ? KodairaType::smooth() : KodairaType::i(n);
    }
    throw ParseError("bad Kodaira type '" + std::string(text) + "'");
}

std::string SingularityTag::to_string() const {
    switch (kind) {
        case Kind::Smooth: return "smooth";
        case Kind::A: return "A" + std::to_string(m);
        case Kind::AStar: return "A*" + std::to_string(m);
    }
    return "?";
}

WeightCap lc_weight_cap(const KodairaType& f) {
    switch (f.kind) {
        case K::Smooth:
        case K::I: return {Rational(1), false};
        case K::IStar: return {Rational(1, 2), true};
        case K::II: return {Rational(5, 6), true};
        case K::III: return {Rational(2, 3), true};
        case K::IV: return {Rational(1, 2), true};
        case K::IIStar: return {Rational(1, 6), true};
        case K::IIIStar: return {Rational(1, 4), true};
        case K::IVStar: return {Rational(1, 3), true};
    }
    throw InvariantError("unknown Kodaira type");
}

SingularityTag section_singularity(const KodairaType& f) {
    using S = SingularityTag::Kind;
    switch (f.kind) {
        case K::Smooth: throw PreconditionError("a smooth fiber has no section singularity");
        case K::I:
        case K::IStar: return {S::A, 1};
        case K::II: return {S::AStar, 5};
        case K::III: return {S::AStar, 3};
        case K::IV: return {S::AStar, 2};
        case K::IIStar: return {S::A, 5};
        case K::IIIStar: return {S::A, 3};
        case K::IVStar: return {S::A, 2};
    }
    throw InvariantError("unknown Kodaira type");
}

int component_count(const KodairaType& f) {
    switch (f.kind) {
        case K::Smooth: return 1;
        case K::I: return f.n;
        case K::IStar: return f.n + 5;
        case K::II: return 1;
        case K::III: return 2;
        case K::IV: return 3;
        case K::IIStar: return 9;
        case K::IIIStar: return 8;
        case K::IVStar: return 7;
    }
    throw InvariantError("unknown Kodaira type");
}

SingularityTag blowup_section_singularity(const SingularityTag& t) {
    if (t.kind != SingularityTag::Kind::A || t.m < 1) {
        throw PreconditionError("blow-up rule applies to A(m) singularities only, got " + t.to_string());
    }
    if (t.m <= 2) return {SingularityTag::Kind::Smooth, 0};
    return {SingularityTag::Kind::A, t.m - 2};
}

Rational next_intermediate_self_intersection(const Rational& a_squared) {
    if (a_squared >= 0) throw PreconditionError("intermediate self-intersection must be negative, got " + a_squared.get_str());
    Rational r = a_squared / (1 - a_squared);
    return r;
}

}  // namespace wstab

#include "wstab/weight_poly.hpp"

#include "wstab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace wstab {

std::vector<Rational> WeightVector::point() const {
    std::vector<Rational> p;
    p.reserve(a.size() + 1);
    p.push_back(s);
    p.insert(p.end(), a.begin(), a.end());
    return p;
}

WeightVector WeightVector::from_point(const std::vector<Rational>& p, int g, int d) {
    if (p.empty()) throw PreconditionError("weight point needs at least the s coordinate");
    WeightVector w;
    w.s = p[0];
    w.a.assign(p.begin() + 1, p.end());
    w.g = g;
    w.d = d;
    return w;
}

std::string WeightVector::to_string() const {
    std::string out = s.get_str();
    for (const auto& x : a) out += "," + x.get_str();
    return out;
}

namespace {

using Monomial = WeightPolynomial::Monomial;

Monomial make_monomial(int u, int v) {
    if (u > v) std::swap(u, v);
    return {u, v};
}

int monomial_degree(const Monomial& m) { return (m[0] >= 0) + (m[1] >= 0); }

std::vector<int> exponents(const Monomial& m, std::size_t arity) {
    std::vector<int> e(arity + 1, 0);
    for (int v : m) {
        if (v >= 0) ++e[static_cast<std::size_t>(v)];
    }
    return e;
}

// Pure lex with s > a1 > ... > an.
bool lex_greater(const Monomial& x, const Monomial& y, std::size_t arity) {
    return exponents(x, arity) > exponents(y, arity);
}

}  // namespace

std::string variable_name(int v) { return v == 0 ? "s" : "a" + std::to_string(v); }

WeightPolynomial WeightPolynomial::constant(const Rational& c, std::size_t arity) {
    WeightPolynomial p(arity);
    p.add_term({-1, -1}, c);
    return p;
}

WeightPolynomial WeightPolynomial::variable(int v, std::size_t arity) {
    if (v < 0 || static_cast<std::size_t>(v) > arity) throw PreconditionError("variable index out of range");
    WeightPolynomial p(arity);
    p.add_term({-1, v}, 1);
    return p;
}

int WeightPolynomial::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
    return d;
}

Rational WeightPolynomial::coefficient(Monomial m) const {
    auto it = terms_.find(make_monomial(m[0], m[1]));
    return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<std::pair<Monomial, Rational>> WeightPolynomial::sorted_terms() const {
    std::vector<std::pair<Monomial, Rational>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(),
              [this](const auto& x, const auto& y) { return lex_greater(x.first, y.first, arity_); });
    return out;
}

Rational WeightPolynomial::leading_coefficient() const {
    auto t = sorted_terms();
    return t.empty() ? Rational(0) : t.front().second;
}

void WeightPolynomial::add_term(Monomial m, const Rational& c) {
    m = make_monomial(m[0], m[1]);
    for (int v : m) {
        if (v > static_cast<int>(arity_)) throw PreconditionError("monomial variable exceeds polynomial arity");
    }
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational WeightPolynomial::eval(const std::vector<Rational>& point) const {
    if (point.size() != arity_ + 1) {
        throw PreconditionError("arity mismatch: polynomial has " + std::to_string(arity_) + " fiber variables, point has " +
                                std::to_string(point.size() == 0 ? 0 : point.size() - 1));
    }
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
        Rational term = c;
        for (int v : m) {
            if (v >= 0) term *= point[static_cast<std::size_t>(v)];
        }
        sum += term;
    }
    return sum;
}

Rational WeightPolynomial::eval(const WeightVector& I) const { return eval(I.point()); }

UniPoly WeightPolynomial::restrict_to_segment(const WeightVector& from, const WeightVector& to) const {
    auto p0 = from.point();
    auto p1 = to.point();
    if (p0.size() != arity_ + 1 || p1.size() != arity_ + 1) throw PreconditionError("arity mismatch on segment endpoints");
    UniPoly q;
    for (const auto& [m, c] : terms_) {
        // Each variable is alpha + beta*t along the segment.
        Rational a0 = 1, a1 = 0, a2 = 0;
        for (int v : m) {
            if (v < 0) continue;
            const Rational& alpha = p0[static_cast<std::size_t>(v)];
            Rational beta = p1[static_cast<std::size_t>(v)] - alpha;
            Rational n0 = a0 * alpha;
            Rational n1 = a0 * beta + a1 * alpha;
            Rational n2 = a1 * beta + a2 * alpha;
            a0 = n0;
            a1 = n1;
            a2 = n2;
        }
        q.c0 += c * a0;
        q.c1 += c * a1;
        q.c2 += c * a2;
    }
    return q;
}

WeightPolynomial WeightPolynomial::with_arity(std::size_t arity) const {
    WeightPolynomial out(arity);
    for (const auto& [m, c] : terms_) {
        if (m[1] > static_cast<int>(arity)) continue;
        out.add_term(m, c);
    }
    return out;
}

WeightPolynomial WeightPolynomial::substitute(int v, const Rational& value) const {
    WeightPolynomial out(arity_);
    for (const auto& [m, c] : terms_) {
        Rational coef = c;
        Monomial rest{-1, -1};
        int slot = 1;
        for (int k = 1; k >= 0; --k) {
            if (m[static_cast<std::size_t>(k)] == v) {
                coef *= value;
            } else if (m[static_cast<std::size_t>(k)] >= 0) {
                rest[static_cast<std::size_t>(slot--)] = m[static_cast<std::size_t>(k)];
            }
        }
        out.add_term(rest, coef);
    }
    return out;
}

bool WeightPolynomial::divisible_by_s() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first[0] == 0 || t.first[1] == 0; });
}

WeightPolynomial WeightPolynomial::divide_by_s() const {
    if (!divisible_by_s()) throw PreconditionError("polynomial is not divisible by s");
    WeightPolynomial out(arity_);
    for (const auto& [m, c] : terms_) {
        // The s factor sits in slot 0 if the monomial is s*x_v, else slot 1.
        if (m[0] == 0) {
            out.add_term({-1, m[1]}, c);
        } else {
            out.add_term({-1, -1}, c);
        }
    }
    return out;
}

WeightPolynomial WeightPolynomial::primitive() const {
    if (is_zero()) return *this;
    Integer den_lcm = 1;
    for (const auto& [m, c] : terms_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    Integer num_gcd = 0;
    for (const auto& [m, c] : terms_) {
        Integer scaled = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    Rational factor(den_lcm, num_gcd);
    factor.canonicalize();
    if (leading_coefficient() < 0) factor = -factor;
    return *this * factor;
}

std::string WeightPolynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : sorted_terms()) {
        std::string vars;
        if (m[0] >= 0 && m[0] == m[1]) {
            vars = variable_name(m[0]) + "^2";
        } else {
            for (int v : m) {
                if (v < 0) continue;
                if (!vars.empty()) vars += "*";
                vars += variable_name(v);
            }
        }
        Rational mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (vars.empty()) {
            os << mag.get_str();
        } else if (mag == 1) {
            os << vars;
        } else {
            os << mag.get_str() << "*" << vars;
        }
        first = false;
    }
    return os.str();
}

WeightPolynomial WeightPolynomial::operator-() const { return *this * Rational(-1); }

WeightPolynomial& WeightPolynomial::operator+=(const WeightPolynomial& o) {
    if (o.arity_ != arity_) throw PreconditionError("arity mismatch in polynomial sum");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

WeightPolynomial& WeightPolynomial::operator-=(const WeightPolynomial& o) { return *this += -o; }

WeightPolynomial& WeightPolynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coef] : terms_) coef *= c;
    return *this;
}

WeightPolynomial operator*(const WeightPolynomial& x, const WeightPolynomial& y) {
    if (x.arity_ != y.arity_) throw PreconditionError("arity mismatch in polynomial product");
    WeightPolynomial out(x.arity_);
    for (const auto& [mx, cx] : x.terms_) {
        for (const auto& [my, cy] : y.terms_) {
            std::vector<int> vars;
            for (int v : mx) {
                if (v >= 0) vars.push_back(v);
            }
            for (int v : my) {
                if (v >= 0) vars.push_back(v);
            }
            if (vars.size() > 2) throw PreconditionError("polynomial product exceeds degree 2");
            while (vars.size() < 2) vars.insert(vars.begin(), -1);
            out.add_term(make_monomial(vars[0], vars[1]), cx * cy);
        }
    }
    return out;
}

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, std::size_t arity) : text_(text), arity_(arity) {}

    WeightPolynomial parse() {
        WeightPolynomial out(arity_);
        skip_ws();
        if (at_end()) fail("empty polynomial");
        bool first = true;
        while (!at_end()) {
            int sgn = 1;
            if (peek() == '+' || peek() == '-') {
                sgn = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            auto [m, c] = term();
            out.add_term(m, c * sgn);
            first = false;
            skip_ws();
        }
        return out;
    }

private:
    std::pair<Monomial, Rational> term() {
        Rational coef = 1;
        std::vector<int> vars;
        while (true) {
            skip_ws();
            if (at_end()) fail("expected a factor");
            char ch = peek();
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                coef *= number();
            } else if (ch == 's' || ch == 'a') {
                int v = variable();
                int power = 1;
                skip_ws();
                if (!at_end() && peek() == '^') {
                    ++pos_;
                    skip_ws();
                    std::size_t start = pos_;
                    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
                    if (start == pos_) fail("expected exponent");
                    power = std::stoi(std::string(text_.substr(start, pos_ - start)));
                }
                for (int k = 0; k < power; ++k) vars.push_back(v);
            } else {
                fail(std::string("unexpected character '") + ch + "'");
            }
            if (vars.size() > 2) fail("degree exceeds 2");
            skip_ws();
            if (!at_end() && peek() == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        while (vars.size() < 2) vars.insert(vars.begin(), -1);
        return {make_monomial(vars[0], vars[1]), coef};
    }

    Rational number() {
        std::size_t start = pos_;
        while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/')) ++pos_;
        try {
            return parse_rational(text_.substr(start, pos_ - start));
        } catch (const ParseError&) {
            fail("bad coefficient");
        }
    }

    int variable() {
        if (peek() == 's') {
            ++pos_;
            return 0;
        }
        ++pos_;
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected index after 'a'");
        int v = std::stoi(std::string(text_.substr(start, pos_ - start)));
        if (v < 1 || static_cast<std::size_t>(v) > arity_) fail("variable a" + std::to_string(v) + " out of range");
        return v;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("polynomial '" + std::string(text_) + "' at position " + std::to_string(pos_) + ": " + why);
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    std::string_view text_;
    std::size_t arity_;
    std::size_t pos_ = 0;
};

}  // namespace

WeightPolynomial parse_polynomial(std::string_view text, std::size_t arity) { return PolyParser(text, arity).parse(); }

Rational eval(const WeightPolynomial& p, const WeightVector& I) { return p.eval(I); }

UniPoly restrict_to_segment(const WeightPolynomial& p, const WeightVector& from, const WeightVector& to) {
    return p.restrict_to_segment(from, to);
}

}  // namespace wstab

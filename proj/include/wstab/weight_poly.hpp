#pragma once

#include "wstab/rational.hpp"
#include "wstab/segment_root.hpp"

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace wstab {

/// Admissible weight vector (s, a_1..a_n) plus base genus and j-degree.
struct WeightVector {
    Rational s{1};
    std::vector<Rational> a;
    int g = 0;
    int d = 0;

    std::size_t arity() const { return a.size(); }
    /// Coordinates in variable order: index 0 is s, index j is a_j.
    std::vector<Rational> point() const;
    static WeightVector from_point(const std::vector<Rational>& p, int g = 0, int d = 0);
    std::string to_string() const;  ///< "s,a1,...,an"
    friend bool operator==(const WeightVector& x, const WeightVector& y) { return x.s == y.s && x.a == y.a; }
};

/// Polynomial of total degree <= 2 in s = x0 and a_j = xj.
///
/// Quadratic monomials in the a-variables are allowed: the L^2 of a
/// pseudoelliptic component is a square of an affine form in the a's.
class WeightPolynomial {
public:
    /// Variables of a monomial, sorted, -1 meaning "absent": (-1,-1) is 1,
    /// (-1,v) is x_v, (u,v) with u <= v is x_u*x_v.
    using Monomial = std::array<int, 2>;

    WeightPolynomial() = default;
    explicit WeightPolynomial(std::size_t arity) : arity_(arity) {}

    static WeightPolynomial constant(const Rational& c, std::size_t arity);
    static WeightPolynomial variable(int v, std::size_t arity);

    std::size_t arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    Rational coefficient(Monomial m) const;
    Rational constant_term() const { return coefficient({-1, -1}); }
    Rational linear_coefficient(int v) const { return coefficient({-1, v}); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    /// Terms in pure lex order s > a1 > ... > an, largest first.
    std::vector<std::pair<Monomial, Rational>> sorted_terms() const;
    Rational leading_coefficient() const;

    void add_term(Monomial m, const Rational& c);

    Rational eval(const std::vector<Rational>& point) const;
    Rational eval(const WeightVector& I) const;
    /// q(t) = p((1-t)*from + t*to).
    UniPoly restrict_to_segment(const WeightVector& from, const WeightVector& to) const;

    /// Same polynomial viewed with a different number of a-variables; variables
    /// past the new arity are set to zero.
    WeightPolynomial with_arity(std::size_t arity) const;
    /// Replaces x_v by a constant.
    WeightPolynomial substitute(int v, const Rational& value) const;
    /// True when every monomial contains s.
    bool divisible_by_s() const;
    WeightPolynomial divide_by_s() const;
    /// Integer coefficients with gcd 1 and positive leading coefficient.
    WeightPolynomial primitive() const;

    std::string to_string() const;

    WeightPolynomial operator-() const;
    WeightPolynomial& operator+=(const WeightPolynomial& o);
    WeightPolynomial& operator-=(const WeightPolynomial& o);
    WeightPolynomial& operator*=(const Rational& c);
    friend WeightPolynomial operator+(WeightPolynomial x, const WeightPolynomial& y) { return x += y; }
    friend WeightPolynomial operator-(WeightPolynomial x, const WeightPolynomial& y) { return x -= y; }
    friend WeightPolynomial operator*(WeightPolynomial x, const Rational& c) { return x *= c; }
    friend WeightPolynomial operator*(const Rational& c, WeightPolynomial x) { return x *= c; }
    /// Product; the result must still have degree <= 2.
    friend WeightPolynomial operator*(const WeightPolynomial& x, const WeightPolynomial& y);
    friend bool operator==(const WeightPolynomial& x, const WeightPolynomial& y) {
        return x.arity_ == y.arity_ && x.terms_ == y.terms_;
    }

private:
    std::size_t arity_ = 0;
    std::map<Monomial, Rational> terms_;
};

std::string variable_name(int v);

/// Parses "2*s*a1 - 3/2*a2^2 + s - 1". Variables beyond `arity` are a
/// ParseError.
WeightPolynomial parse_polynomial(std::string_view text, std::size_t arity);

Rational eval(const WeightPolynomial& p, const WeightVector& I);
UniPoly restrict_to_segment(const WeightPolynomial& p, const WeightVector& from, const WeightVector& to);

}  // namespace wstab

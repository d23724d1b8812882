#pragma once

#include "wstab/rational.hpp"

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wstab {

/// An element p + q*sqrt(d) of a real quadratic field. d == 1 (with q == 0)
/// encodes a plain rational. Arithmetic between two irrational values needs
/// compatible radicands (d1*d2 a perfect square); mixed fields only compare.
class QuadraticNumber {
public:
    QuadraticNumber() = default;
    QuadraticNumber(Rational value);  // NOLINT(google-explicit-constructor)
    QuadraticNumber(long value) : QuadraticNumber(Rational(value)) {}  // NOLINT
    QuadraticNumber(Rational p, Rational q, Integer d);

    const Rational& rational_part() const { return p_; }
    const Rational& surd_part() const { return q_; }
    const Integer& radicand() const { return d_; }
    bool is_rational() const { return q_ == 0; }

    int sign() const;
    double approx() const;
    std::string to_string() const;

    QuadraticNumber operator-() const;
    friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y);
    friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y);
    friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y);
    QuadraticNumber& operator+=(const QuadraticNumber& y) { return *this = *this + y; }
    QuadraticNumber& operator*=(const QuadraticNumber& y) { return *this = *this * y; }

    /// Exact total order, valid across different quadratic fields.
    friend std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y);
    friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
        return (x <=> y) == std::strong_ordering::equal;
    }

private:
    void normalize();

    Rational p_{0};
    Rational q_{0};
    Integer d_{1};
};

/// Rational bracket [lo, hi] around sqrt(d) of width 2^-bits.
std::pair<Rational, Rational> sqrt_bounds(const Integer& d, unsigned bits);

/// c2*t^2 + c1*t + c0 with rational coefficients.
struct UniPoly {
    Rational c0{0};
    Rational c1{0};
    Rational c2{0};

    bool is_zero() const { return c0 == 0 && c1 == 0 && c2 == 0; }
    int degree() const;
    Rational eval(const Rational& t) const { return (c2 * t + c1) * t + c0; }
    QuadraticNumber eval(const QuadraticNumber& t) const;
    UniPoly derivative() const { return UniPoly{c1, 2 * c2, 0}; }
    std::string to_string() const;
    friend bool operator==(const UniPoly&, const UniPoly&) = default;
};

/// An exact real number used as a segment parameter: either rational, or one
/// root of a rational quadratic selected by branch (-1 smaller, +1 larger)
/// and isolated by a rational interval containing no other root.
class SegmentRoot {
public:
    SegmentRoot() = default;
    static SegmentRoot rational(Rational t);
    /// Root of a*t^2 + b*t + c; the discriminant must be positive.
    static SegmentRoot quadratic_root(const Rational& a, const Rational& b, const Rational& c, int branch);

    bool is_rational() const { return value_.is_rational(); }
    const Rational& rational_value() const;  ///< only for rational roots
    const QuadraticNumber& value() const { return value_; }
    /// Defining quadratic (a, b, c); for rational roots this is t - r.
    const UniPoly& defining_polynomial() const { return poly_; }
    int branch() const { return branch_; }
    std::pair<Rational, Rational> isolating_interval() const { return interval_; }
    double approx() const { return value_.approx(); }
    std::string to_string() const;

    friend std::strong_ordering operator<=>(const SegmentRoot& x, const SegmentRoot& y) {
        return x.value_ <=> y.value_;
    }
    friend bool operator==(const SegmentRoot& x, const SegmentRoot& y) { return x.value_ == y.value_; }

private:
    QuadraticNumber value_;
    UniPoly poly_;
    int branch_ = 0;
    std::pair<Rational, Rational> interval_;
};

/// Real roots of q in ascending order (an identically-zero q has none).
std::vector<SegmentRoot> real_roots(const UniPoly& q);

/// Smallest root of q in (lo, hi), or (lo, hi] when include_hi. Identically
/// zero polynomials have no roots: a degenerate wall is not a wall.
std::optional<SegmentRoot> first_root_in(const UniPoly& q, const SegmentRoot& lo, const SegmentRoot& hi,
                                         bool include_hi = false);
/// Smallest root in the open interval (0, 1).
std::optional<SegmentRoot> first_root_in(const UniPoly& q);

std::strong_ordering compare(const SegmentRoot& x, const SegmentRoot& y);

}  // namespace wstab

#include "wstab/segment_root.hpp"

#include "wstab/errors.hpp"

#include <cmath>
#include <sstream>

namespace wstab {

namespace {

bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

Integer isqrt(const Integer& n) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// m = f^2 * d with small square factors pulled out; d need not be squarefree.
std::pair<Integer, Integer> extract_squares(Integer m) {
    Integer f = 1;
    for (unsigned long p = 2; p < 1000; ++p) {
        Integer pp = p * p;
        while (mpz_divisible_p(m.get_mpz_t(), pp.get_mpz_t())) {
            m /= pp;
            f *= p;
        }
    }
    return {f, m};
}

// Brings y into x's quadratic field when possible. Returns false if the
// radicands are incompatible.
bool align(const QuadraticNumber& x, const QuadraticNumber& y, QuadraticNumber& y_out) {
    if (y.is_rational() || x.is_rational() || x.radicand() == y.radicand()) {
        y_out = y;
        return true;
    }
    Integer prod = x.radicand() * y.radicand();
    if (!is_square(prod)) return false;
    // sqrt(d2) = sqrt(d1*d2) / d1 * sqrt(d1)
    Rational scale(isqrt(prod), x.radicand());
    y_out = QuadraticNumber(y.rational_part(), y.surd_part() * scale, x.radicand());
    return true;
}

Integer field_of(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.is_rational() ? y.radicand() : x.radicand();
}

std::pair<Rational, Rational> scaled_bounds(const Rational& q, const Integer& d, unsigned bits) {
    auto [lo, hi] = sqrt_bounds(d, bits);
    if (q >= 0) return {q * lo, q * hi};
    return {q * hi, q * lo};
}

}  // namespace

std::pair<Rational, Rational> sqrt_bounds(const Integer& d, unsigned bits) {
    Integer scale = Integer(1) << bits;
    Integer r = isqrt(d * scale * scale);
    Rational lo(r, scale);
    Rational hi(r + 1, scale);
    lo.canonicalize();
    hi.canonicalize();
    if (r * r == d * scale * scale) hi = lo;
    return {lo, hi};
}

QuadraticNumber::QuadraticNumber(Rational value) : p_(std::move(value)) {}

QuadraticNumber::QuadraticNumber(Rational p, Rational q, Integer d) : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)) {
    if (d_ <= 0) throw PreconditionError("quadratic radicand must be positive");
    normalize();
}

void QuadraticNumber::normalize() {
    if (q_ != 0 && is_square(d_)) {
        p_ += q_ * Rational(isqrt(d_));
        q_ = 0;
    }
    if (q_ == 0) d_ = 1;
}

int QuadraticNumber::sign() const {
    int sp = sgn(p_);
    int sq = sgn(q_);
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    Rational lhs = p_ * p_;
    Rational rhs = q_ * q_ * Rational(d_);
    return lhs > rhs ? sp : sq;
}

double QuadraticNumber::approx() const {
    return p_.get_d() + q_.get_d() * std::sqrt(d_.get_d());
}

std::string QuadraticNumber::to_string() const {
    if (is_rational()) return p_.get_str();
    std::ostringstream os;
    os << p_.get_str() << (q_ < 0 ? " - " : " + ") << Rational(abs(q_)).get_str() << "*sqrt(" << d_.get_str() << ")";
    return os.str();
}

QuadraticNumber QuadraticNumber::operator-() const {
    QuadraticNumber r = *this;
    r.p_ = -r.p_;
    r.q_ = -r.q_;
    return r;
}

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
    QuadraticNumber ya;
    if (!align(x, y, ya)) throw PreconditionError("adding numbers from different quadratic fields");
    return QuadraticNumber(x.p_ + ya.p_, x.q_ + ya.q_, field_of(x, ya));
}

QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) { return x + (-y); }

QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
    QuadraticNumber ya;
    if (!align(x, y, ya)) throw PreconditionError("multiplying numbers from different quadratic fields");
    Integer d = field_of(x, ya);
    Rational p = x.p_ * ya.p_ + x.q_ * ya.q_ * Rational(d);
    Rational q = x.p_ * ya.q_ + x.q_ * ya.p_;
    return QuadraticNumber(p, q, d);
}

std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y) {
    auto from_sign = [](int s) {
        return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    };
    QuadraticNumber ya;
    if (align(x, y, ya)) return from_sign((x - ya).sign());
    // Incompatible fields: 1, sqrt(d1), sqrt(d2) are linearly independent over
    // the rationals, so x != y and interval refinement must separate them.
    Rational a = x.p_ - y.p_;
    for (unsigned bits = 16;; bits *= 2) {
        auto [xl, xh] = scaled_bounds(x.q_, x.d_, bits);
        auto [yl, yh] = scaled_bounds(y.q_, y.d_, bits);
        Rational lo = a + xl - yh;
        Rational hi = a + xh - yl;
        if (lo > 0) return std::strong_ordering::greater;
        if (hi < 0) return std::strong_ordering::less;
        if (bits > (1u << 20)) throw InvariantError("interval refinement failed to separate quadratic numbers");
    }
}

int UniPoly::degree() const {
    if (c2 != 0) return 2;
    if (c1 != 0) return 1;
    if (c0 != 0) return 0;
    return -1;
}

QuadraticNumber UniPoly::eval(const QuadraticNumber& t) const {
    return (QuadraticNumber(c2) * t + QuadraticNumber(c1)) * t + QuadraticNumber(c0);
}

std::string UniPoly::to_string() const {
    std::ostringstream os;
    os << c2.get_str() << "*t^2 + " << c1.get_str() << "*t + " << c0.get_str();
    return os.str();
}

SegmentRoot SegmentRoot::rational(Rational t) {
    SegmentRoot r;
    r.value_ = QuadraticNumber(t);
    r.poly_ = UniPoly{-t, 1, 0};
    r.interval_ = {t, t};
    return r;
}

SegmentRoot SegmentRoot::quadratic_root(const Rational& a, const Rational& b, const Rational& c, int branch) {
    if (a == 0) throw PreconditionError("quadratic_root needs a nonzero leading coefficient");
    if (branch != -1 && branch != 1) throw PreconditionError("branch must be -1 or +1");
    Rational disc = b * b - 4 * a * c;
    if (disc <= 0) throw PreconditionError("quadratic_root needs a positive discriminant");
    Integer m = disc.get_num() * disc.get_den();
    auto [f, d] = extract_squares(m);
    // sqrt(disc) = f*sqrt(d)/den
    Rational root_scale(f, disc.get_den());
    root_scale.canonicalize();
    int choice = branch * sgn(a);
    Rational center = -b / (2 * a);
    Rational q = Rational(choice) * root_scale / (2 * a);
    SegmentRoot r;
    r.value_ = QuadraticNumber(center, q, d);
    r.poly_ = UniPoly{c, b, a};
    r.branch_ = branch;
    if (r.value_.is_rational()) {
        Rational v = r.value_.rational_part();
        r.interval_ = {v, v};
        return r;
    }
    for (unsigned bits = 8;; bits *= 2) {
        auto [lo, hi] = scaled_bounds(q, d, bits);
        auto [olo, ohi] = scaled_bounds(-q, d, bits);
        if (hi < olo || ohi < lo) {
            r.interval_ = {center + lo, center + hi};
            return r;
        }
    }
}

const Rational& SegmentRoot::rational_value() const {
    if (!is_rational()) throw PreconditionError("segment root is irrational");
    return value_.rational_part();
}

std::string SegmentRoot::to_string() const { return value_.to_string(); }

std::vector<SegmentRoot> real_roots(const UniPoly& q) {
    std::vector<SegmentRoot> out;
    switch (q.degree()) {
        case 1:
            out.push_back(SegmentRoot::rational(-q.c0 / q.c1));
            break;
        case 2: {
            Rational disc = q.c1 * q.c1 - 4 * q.c2 * q.c0;
            if (disc < 0) break;
            if (disc == 0) {
                out.push_back(SegmentRoot::rational(-q.c1 / (2 * q.c2)));
                break;
            }
            out.push_back(SegmentRoot::quadratic_root(q.c2, q.c1, q.c0, -1));
            out.push_back(SegmentRoot::quadratic_root(q.c2, q.c1, q.c0, 1));
            break;
        }
        default:
            break;
    }
    return out;
}

std::optional<SegmentRoot> first_root_in(const UniPoly& q, const SegmentRoot& lo, const SegmentRoot& hi, bool include_hi) {
    for (const auto& r : real_roots(q)) {
        if (!(lo < r)) continue;
        if (r < hi || (include_hi && r == hi)) return r;
    }
    return std::nullopt;
}

std::optional<SegmentRoot> first_root_in(const UniPoly& q) {
    return first_root_in(q, SegmentRoot::rational(0), SegmentRoot::rational(1));
}

std::strong_ordering compare(const SegmentRoot& x, const SegmentRoot& y) { return x <=> y; }

}  // namespace wstab

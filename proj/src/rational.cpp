#include "wstab/rational.hpp"

#include "wstab/errors.hpp"

#include <cctype>

namespace wstab {

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view t = trim(text);
    auto slash = t.find('/');
    std::string_view num = slash == std::string_view::npos ? t : t.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : t.substr(slash + 1);
    if (!valid_integer(num, true) || !valid_integer(den, false)) {
        throw ParseError("not a rational number: '" + std::string(text) + "'");
    }
    std::string n(num);
    if (n[0] == '+') n.erase(0, 1);
    Integer d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(Integer(n, 10), d);
    r.canonicalize();
    return r;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
    std::vector<Rational> out;
    if (trim(text).empty()) return out;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        out.push_back(parse_rational(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string to_string(const Rational& r) { return r.get_str(); }

int sign(const Rational& r) { return sgn(r); }

}  // namespace wstab

#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "cswitch/errors.hpp"

namespace cswitch {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace detail

/// Parses "p", "-p" or "p/q" (q > 0 after sign handling). Surrounding
/// whitespace is rejected along with everything else that is not of that form.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] {
        return Error(ErrorKind::malformed_rational, "'" + std::string(text) + "'");
    };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) throw fail();
    Integer p{std::string(num)};
    Integer q{std::string(den)};
    if (q == 0) throw fail();
    if (negative) p = -p;
    return Rational(p, q);
}

/// Lowest-terms text: "p" when the denominator is 1, otherwise "p/q".
inline std::string format_rational(const Rational& q) {
    const Integer& d = boost::multiprecision::denominator(q);
    if (d == 1) return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" + d.str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued fractions). Returns nothing when no such approximation lies
/// within `tol` of x.
inline std::optional<Rational> rationalize(double x, std::int64_t max_den = 1000000, double tol = 1e-9) {
    if (!std::isfinite(x)) return std::nullopt;
    const bool neg = x < 0;
    double r = std::fabs(x);
    Integer h_prev = 1, h = static_cast<std::int64_t>(std::floor(r));
    Integer k_prev = 0, k = 1;
    double frac = r - std::floor(r);
    while (frac > 1e-15) {
        const double inv = 1.0 / frac;
        const auto a = static_cast<std::int64_t>(std::floor(inv));
        Integer h_next = a * h + h_prev;
        Integer k_next = a * k + k_prev;
        if (k_next > max_den) break;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
        frac = inv - std::floor(inv);
        if (std::fabs(Rational(h, k).convert_to<double>() - r) <= tol * 1e-3) break;
    }
    Rational q(h, k);
    if (std::fabs(q.convert_to<double>() - r) > tol) return std::nullopt;
    return neg ? Rational(-q) : q;
}

}  // namespace cswitch

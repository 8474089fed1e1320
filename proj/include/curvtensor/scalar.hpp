#pragma once

// Scalar layer: the library is templated over the coordinate field.
// Two instantiations are supported:
//   Rational: arbitrary-precision rationals, exact arithmetic, exact compares;
//   double:   IEEE float64, compares against a context tolerance.
// Rationals are kept in lowest terms with positive denominator (GMP canonical
// form); every constructor below preserves that.

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>

#include "curvtensor/errors.hpp"

namespace curv {

// et_off: plain value semantics, no expression templates. Generic code can
// then deduce S from mixed arithmetic without surprises.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using BigInt =
    boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

template <typename S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

// "p/q" or "p", surrounding whitespace ignored. Result is canonicalized: the
// boost string constructor stores the raw pair, so reduce explicitly.
inline Rational parse_rational(const std::string& raw) {
  const auto from = raw.find_first_not_of(" \t");
  const auto to = raw.find_last_not_of(" \t");
  const std::string text = from == std::string::npos ? "" : raw.substr(from, to - from + 1);
  if (text.empty()) throw ParseError("empty rational literal");
  for (char c : text) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
      throw ParseError("bad rational literal: " + text);
  }
  try {
    Rational r(text);
    if (denominator(r) == 0) throw ParseError("zero denominator: " + text);
    mpq_canonicalize(r.backend().data());
    return r;
  } catch (const std::runtime_error&) {
    throw ParseError("bad rational literal: " + text);
  }
}

inline std::string to_string(const Rational& r) { return r.str(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

// Exact: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw ParseError("non-finite value has no rational image");
  return Rational(x);
}

template <typename S>
S scalar_from_int(long v) {
  if constexpr (is_exact_v<S>) return Rational(v);
  else return static_cast<double>(v);
}

template <typename S>
S scalar_from_rational(const Rational& r) {
  if constexpr (is_exact_v<S>) return r;
  else return to_double(r);
}

template <typename S>
S scalar_abs(const S& v) {
  if constexpr (is_exact_v<S>) return abs(v);
  else return std::fabs(v);
}

// Equality with the mode's notion of "close": exact compare for rationals,
// |a-b| <= eps for doubles. Call sites scale eps, typically tol*(1+magnitude).
template <typename S>
bool scalar_near(const S& a, const S& b, double eps) {
  if constexpr (is_exact_v<S>) { (void)eps; return a == b; }
  else return std::fabs(a - b) <= eps;
}

template <typename S>
bool scalar_is_zero(const S& v, double eps) {
  return scalar_near(v, S(0), eps);
}

// Exact square root when the argument is a perfect square of a rational.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  const BigInt num = numerator(r), den = denominator(r);
  if (!mpz_perfect_square_p(num.backend().data()) ||
      !mpz_perfect_square_p(den.backend().data()))
    return std::nullopt;
  return Rational(sqrt(num), sqrt(den));
}

// Best rational approximation with denominator <= max_den (continued
// fractions). Used when promoting a float search result to exact arithmetic.
inline Rational rationalize(double x, std::uint64_t max_den = 1024) {
  if (!std::isfinite(x)) throw ParseError("cannot rationalize non-finite value");
  const bool neg = x < 0;
  double a = neg ? -x : x;
  std::uint64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = a;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(frac);
    if (fl > 9e18) break;
    const auto ai = static_cast<std::uint64_t>(fl);
    if (q0 + ai * q1 > max_den || p1 > 9e17 || q1 > 9e17) break;
    const std::uint64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double rem = frac - fl;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return Rational(0);
  const Rational r{BigInt(p1), BigInt(q1)};
  return neg ? -r : r;
}

}  // namespace curv

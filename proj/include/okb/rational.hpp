#pragma once

// Exact scalar types shared by every module: GMP-backed rationals and
// integers, the "p/q" text form used in all JSON documents, and a few
// vector helpers.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "okb/error.hpp"

namespace okb {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// A point of R^n with exact coordinates. Length is the ambient dimension.
using QVector = std::vector<Rational>;
using IntVector = std::vector<long long>;

inline Integer numer(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denom(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sign(const Rational& q) { return q.sign(); }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// Canonical text: "3", "-1/2". Denominator is always positive and the
/// fraction is in lowest terms (mpq keeps it canonical).
inline std::string to_string(const Rational& q) {
  if (denom(q) == 1) return numer(q).str();
  return numer(q).str() + "/" + denom(q).str();
}

inline bool is_integer(const Rational& q) { return denom(q) == 1; }

inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [&](std::string_view s) -> Integer {
    s = trim(s);
    if (s.empty()) throw Error(ErrorCode::parse, "empty integer in rational literal");
    std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size()) throw Error(ErrorCode::parse, "malformed rational '" + std::string(s) + "'");
    for (std::size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9')
        throw Error(ErrorCode::parse, "malformed rational '" + std::string(s) + "'");
    return Integer(std::string(s.front() == '+' ? s.substr(1) : s));
  };
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer num = parse_int(text.substr(0, slash));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::parse, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

inline Integer floor(const Rational& q) {
  Integer n = numer(q), d = denom(q);
  Integer f = n / d;  // truncates toward zero
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

inline Integer ceil(const Rational& q) {
  Integer f = floor(q);
  return f * denom(q) == numer(q) ? f : Integer(f + 1);
}

inline Integer gcd(Integer a, Integer b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  Integer g = gcd(a, b);
  Integer r = a / g * b;
  return r < 0 ? Integer(-r) : r;
}

inline Rational dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::dimension_mismatch, "dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline QVector to_qvector(const IntVector& v) {
  QVector out;
  out.reserve(v.size());
  for (long long x : v) out.emplace_back(x);
  return out;
}

inline QVector operator+(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::dimension_mismatch, "vector length mismatch");
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline QVector operator-(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::dimension_mismatch, "vector length mismatch");
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline QVector operator*(const Rational& s, const QVector& a) {
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

/// Scales v by a positive factor so that it becomes a primitive integer
/// vector. The zero vector is returned unchanged.
inline QVector primitive(const QVector& v) {
  if (is_zero(v)) return v;
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, denom(x));
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, Integer(numer(x) * (l / denom(x))));
  QVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(numer(v[i]) * (l / denom(v[i])) / g);
  return r;
}

inline std::string to_string(const QVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

}  // namespace okb

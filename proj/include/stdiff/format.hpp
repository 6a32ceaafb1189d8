#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace stdiff {

/// Round-trippable decimal for CSV/JSON output.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Writes a positive rational as "p/q*2^e" with p and q odd (or "p*2^e"
/// when q = 1), so dyadic radii print exactly at any magnitude.
inline std::string format_pow2_scaled(const mpq_class& value) {
  if (value == 0) return "0";
  mpz_class num = abs(value.get_num());
  mpz_class den = value.get_den();
  long e = 0;
  const auto tz_num = mpz_scan1(num.get_mpz_t(), 0);
  const auto tz_den = mpz_scan1(den.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), tz_num);
  mpz_fdiv_q_2exp(den.get_mpz_t(), den.get_mpz_t(), tz_den);
  e = static_cast<long>(tz_num) - static_cast<long>(tz_den);
  std::string out = value < 0 ? "-" : "";
  out += num.get_str();
  if (den != 1) out += "/" + den.get_str();
  out += "*2^" + std::to_string(e);
  return out;
}

/// Parses "p/q", an integer, or a plain decimal such as "0.05" into an exact
/// rational. Throws std::invalid_argument on malformed input.
inline mpq_class parse_rational(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  mpq_class out;
  const auto dot = s.find('.');
  try {
    if (s.empty()) throw std::invalid_argument("empty");
    if (dot == std::string::npos) {
      out = mpq_class(s);
    } else {
      const std::string whole = s.substr(0, dot);
      const std::string frac = s.substr(dot + 1);
      if (frac.find_first_not_of("0123456789") != std::string::npos ||
          whole.find_first_not_of("0123456789") != std::string::npos || (whole.empty() && frac.empty()))
        throw std::invalid_argument("digits");
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      out = mpq_class(mpz_class((whole.empty() ? "0" : whole) + frac), den);
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational number: " + text);
  }
  out.canonicalize();
  return negative ? mpq_class(-out) : out;
}

inline std::string format_rational(const mpq_class& q) { return q.get_str(); }

}  // namespace stdiff

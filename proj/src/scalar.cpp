#include "levymom/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cfloat>
#include <charconv>
#include <cstdio>
#include <string>

namespace levymom {
namespace {

std::string trim(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Rational pow10(long exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

Rational parse_decimal(std::string_view body, std::string_view original) {
  auto fail = [&]() -> Rational { throw ParseError("not a number: '" + std::string(original) + "'"); };

  long exponent = 0;
  if (auto epos = body.find_first_of("eE"); epos != std::string_view::npos) {
    std::string_view exp_text = body.substr(epos + 1);
    body = body.substr(0, epos);
    bool neg = false;
    if (!exp_text.empty() && (exp_text[0] == '+' || exp_text[0] == '-')) {
      neg = exp_text[0] == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) fail();
    std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (neg) exponent = -exponent;
  }

  std::string digits;
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = body.substr(0, dot);
    std::string_view frac_part = body.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) fail();
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part))) fail();
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(body)) fail();
    digits = std::string(body);
  }
  Rational value(mpz_class(digits, 10));
  value *= pow10(exponent);
  value.canonicalize();
  return value;
}

}  // namespace

std::string to_string(ScalarMode mode) {
  return mode == ScalarMode::Rational ? "rational" : "real";
}

ScalarMode parse_scalar_mode(std::string_view text) {
  std::string t = trim(text);
  if (t == "rational" || t == "exact") return ScalarMode::Rational;
  if (t == "real" || t == "float") return ScalarMode::Real;
  throw ParseError("unknown scalar mode '" + t + "' (expected rational or real)");
}

Rational parse_rational(std::string_view text) {
  std::string t = trim(text);
  if (t.empty()) throw ParseError("empty number");
  std::string_view body(t);
  bool negative = false;
  if (body[0] == '+' || body[0] == '-') {
    negative = body[0] == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(body.substr(0, slash), text);
    Rational den = parse_decimal(body.substr(slash + 1), text);
    if (sgn(den) == 0) throw ParseError("zero denominator in '" + t + "'");
    value = num / den;
  } else {
    value = parse_decimal(body, text);
  }
  if (negative) value = -value;
  return value;
}

Extended<Rational> parse_extended(std::string_view text) {
  std::string t = trim(text);
  std::string lower(t);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "inf" || lower == "+inf" || lower == "infinity" || lower == ".inf") {
    return Extended<Rational>::pos_inf();
  }
  if (lower == "-inf" || lower == "-infinity" || lower == "-.inf") return Extended<Rational>::neg_inf();
  return Extended<Rational>(parse_rational(t));
}

namespace {

// Top 64 bits of |z| as a long double scaled back by the dropped exponent.
Real mpz_to_real(const mpz_class& z) {
  if (sgn(z) == 0) return 0;
  mpz_class a = abs(z);
  std::size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
  long shift = static_cast<long>(bits) - 64;
  mpz_class top;
  if (shift > 0) {
    mpz_fdiv_q_2exp(top.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  } else {
    top = a;
    shift = 0;
  }
  // top < 2^64: assemble from two 32-bit halves to stay portable.
  mpz_class hi, lo;
  mpz_fdiv_q_2exp(hi.get_mpz_t(), top.get_mpz_t(), 32);
  mpz_fdiv_r_2exp(lo.get_mpz_t(), top.get_mpz_t(), 32);
  Real m = static_cast<Real>(hi.get_ui()) * 4294967296.0L + static_cast<Real>(lo.get_ui());
  Real r = std::ldexp(m, static_cast<int>(shift));
  return sgn(z) < 0 ? -r : r;
}

}  // namespace

Real to_real(const Rational& q) {
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  long nbits = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
  long dbits = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  if (nbits < 16000 && dbits < 16000) {
    // Scale so that the integer quotient carries 70 significant bits.
    long scale = 70 - (nbits - dbits);
    mpz_class n = abs(num);
    if (scale > 0) {
      mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(scale));
    } else if (scale < 0) {
      mpz_fdiv_q_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(-scale));
    }
    mpz_class quotient = n / den;
    Real r = std::ldexp(mpz_to_real(quotient), static_cast<int>(-scale));
    return sgn(num) < 0 ? -r : r;
  }
  return mpz_to_real(num) / mpz_to_real(den);
}

Rational from_real(Real x) {
  if (!std::isfinite(x)) throw Unsupported("cannot convert a non-finite real to a rational");
  if (x == 0) return Rational(0);
  int exponent = 0;
  Real mantissa = std::frexp(x, &exponent);  // |mantissa| in [0.5, 1)
  bool negative = mantissa < 0;
  if (negative) mantissa = -mantissa;
  // 64 mantissa bits, taken 32 at a time.
  Real scaled = std::ldexp(mantissa, 32);
  auto hi = static_cast<unsigned long>(scaled);
  Real rest = std::ldexp(scaled - static_cast<Real>(hi), 32);
  auto lo = static_cast<unsigned long>(rest);
  mpz_class m = mpz_class(hi);
  mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), 32);
  m += lo;
  Rational q(m);
  int shift = exponent - 64;
  if (shift > 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(shift));
  } else if (shift < 0) {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-shift));
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_real(Real x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", x);
  return buf;
}

mpz_class binomial_z(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class factorial_z(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace levymom

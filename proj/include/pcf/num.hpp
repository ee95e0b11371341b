#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "pcf/error.hpp"

namespace pcf {

/// Exact rational number.
///
/// Every weight, penalty, dual value and net-worth quantity in the library is
/// a Num. Arithmetic never rounds, so comparisons such as "which constraint
/// becomes tight first" are decided exactly. Text conversion accepts plain
/// decimals ("6.2", "-1", "100") and fractions ("7/3"); rendering produces a
/// terminating decimal whenever one exists and a reduced fraction otherwise.
class Num {
 public:
  Num() = default;
  Num(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  Num(int value) : v_(static_cast<long>(value)) {}  // NOLINT
  explicit Num(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

  static Num parse(std::string_view text);

  /// Exact rendering: "12", "40.4", "-0.25", or "1/3" for non-terminating values.
  std::string str() const;
  double to_double() const { return v_.get_d(); }

  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_negative() const { return sgn(v_) < 0; }
  bool is_positive() const { return sgn(v_) > 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  /// Smallest integer >= value; throws if it does not fit in int64.
  std::int64_t ceil() const;

  Num& operator+=(const Num& o) { v_ += o.v_; return *this; }
  Num& operator-=(const Num& o) { v_ -= o.v_; return *this; }
  Num& operator*=(const Num& o) { v_ *= o.v_; return *this; }
  Num& operator/=(const Num& o) {
    if (o.is_zero()) throw Error(ErrorCode::kDomain, "division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Num operator+(Num a, const Num& b) { return a += b; }
  friend Num operator-(Num a, const Num& b) { return a -= b; }
  friend Num operator*(Num a, const Num& b) { return a *= b; }
  friend Num operator/(Num a, const Num& b) { return a /= b; }
  friend Num operator-(const Num& a) { return Num(mpq_class(-a.v_)); }

  friend bool operator==(const Num& a, const Num& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Num& a, const Num& b) {
    const int c = cmp(a.v_, b.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Num& n) { return os << n.str(); }

 private:
  mpq_class v_;
};

inline const Num& min(const Num& a, const Num& b) { return b < a ? b : a; }
inline const Num& max(const Num& a, const Num& b) { return a < b ? b : a; }

/// A DP cell: either a value or infeasible. There is no numeric stand-in for -inf.
using MaybeNum = std::optional<Num>;

inline Num Num::parse(std::string_view text) {
  auto bad = [&] {
    return Error(ErrorCode::kBadNumber, "not an exact decimal or fraction: '" + std::string(text) + "'");
  };
  if (text.empty()) throw bad();

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = text.substr(slash + 1);
    auto integer_ok = [](std::string_view s, bool allow_sign) {
      if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    if (!integer_ok(num, true) || !integer_ok(den, false)) throw bad();
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw bad();
    return Num(mpq_class(n, d));
  }

  std::string_view body = text;
  bool negative = false;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto dot = body.find('.');
  std::string_view int_part = body.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) throw bad();
  if (dot != std::string_view::npos && frac_part.empty()) throw bad();
  for (char c : int_part)
    if (c < '0' || c > '9') throw bad();
  for (char c : frac_part)
    if (c < '0' || c > '9') throw bad();

  std::string digits(int_part);
  digits += frac_part;
  if (digits.empty()) digits = "0";
  mpz_class numerator(digits, 10);
  mpz_class denominator;
  mpz_ui_pow_ui(denominator.get_mpz_t(), 10, frac_part.size());
  if (negative) numerator = -numerator;
  return Num(mpq_class(numerator, denominator));
}

inline std::string Num::str() const {
  const mpz_class& den = v_.get_den();
  if (den == 1) return v_.get_num().get_str();

  mpz_class rest = den;
  unsigned twos = 0;
  unsigned fives = 0;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), 2)) { rest /= 2; ++twos; }
  while (mpz_divisible_ui_p(rest.get_mpz_t(), 5)) { rest /= 5; ++fives; }
  if (rest != 1) return v_.get_num().get_str() + "/" + den.get_str();

  const unsigned digits = twos > fives ? twos : fives;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpz_class scaled = v_.get_num() * (scale / den);
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string s = scaled.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return negative ? "-" + s : s;
}

inline std::int64_t Num::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw Error(ErrorCode::kDomain, "integer overflow in ceil");
  return q.get_si();
}

}  // namespace pcf

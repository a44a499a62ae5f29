#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "pfkit/errors.hpp"

namespace pfkit {

/// a / 2^k with k = 0 or a odd; zero is (0, 0).
class DyadicRational {
 public:
  DyadicRational() = default;
  DyadicRational(mpz_class numerator, unsigned exponent) : a_(std::move(numerator)), k_(exponent) { canonicalize(); }
  DyadicRational(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)

  static std::optional<DyadicRational> from_rational(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    const mpz_class& den = c.get_den();
    if (mpz_popcount(den.get_mpz_t()) != 1) return std::nullopt;
    return DyadicRational(c.get_num(), static_cast<unsigned>(mpz_scan1(den.get_mpz_t(), 0)));
  }

  /// "a/2^k" or a plain integer.
  static DyadicRational parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return DyadicRational(mpz_class(s), 0);
      std::string den = s.substr(slash + 1);
      if (den.rfind("2^", 0) != 0) throw FormatError("dyadic denominator must be written 2^k: " + s);
      long k = std::stol(den.substr(2));
      if (k < 0) throw FormatError("negative dyadic exponent: " + s);
      return DyadicRational(mpz_class(s.substr(0, slash)), static_cast<unsigned>(k));
    } catch (const std::invalid_argument&) {
      throw FormatError("malformed dyadic rational: " + s);
    }
  }

  const mpz_class& numerator() const { return a_; }
  unsigned exponent() const { return k_; }
  int sign() const { return sgn(a_); }
  bool is_zero() const { return a_ == 0; }

  mpq_class to_rational() const {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, k_);
    mpq_class q(a_, den);
    q.canonicalize();
    return q;
  }

  /// Member of (1/2^n) Z.
  bool in_scale(unsigned n) const { return k_ <= n; }

  /// 2^n * value; exact only when in_scale(n).
  mpz_class scaled(unsigned n) const {
    if (!in_scale(n)) throw DomainError("dyadic value not in (1/2^n)Z");
    mpz_class r;
    mpz_mul_2exp(r.get_mpz_t(), a_.get_mpz_t(), n - k_);
    return r;
  }

  /// value * 2^j for any integer j.
  DyadicRational shifted(long j) const {
    if (j >= 0) {
      if (static_cast<unsigned long>(j) <= k_) return DyadicRational(a_, k_ - static_cast<unsigned>(j));
      mpz_class r;
      mpz_mul_2exp(r.get_mpz_t(), a_.get_mpz_t(), static_cast<unsigned long>(j) - k_);
      return DyadicRational(r, 0);
    }
    return DyadicRational(a_, k_ + static_cast<unsigned>(-j));
  }
  DyadicRational half() const { return shifted(-1); }

  std::string str() const { return a_.get_str() + "/2^" + std::to_string(k_); }

  friend DyadicRational operator+(const DyadicRational& x, const DyadicRational& y) {
    unsigned k = std::max(x.k_, y.k_);
    mpz_class a = x.scaled(k) + y.scaled(k);
    return DyadicRational(a, k);
  }
  friend DyadicRational operator-(const DyadicRational& x) { return DyadicRational(-x.a_, x.k_); }
  friend DyadicRational operator-(const DyadicRational& x, const DyadicRational& y) { return x + (-y); }
  friend DyadicRational operator*(const DyadicRational& x, const DyadicRational& y) {
    return DyadicRational(x.a_ * y.a_, x.k_ + y.k_);
  }
  friend DyadicRational operator*(const DyadicRational& x, const mpz_class& n) { return DyadicRational(x.a_ * n, x.k_); }
  friend DyadicRational operator*(const mpz_class& n, const DyadicRational& x) { return x * n; }

  friend bool operator==(const DyadicRational& x, const DyadicRational& y) { return x.k_ == y.k_ && x.a_ == y.a_; }
  friend std::strong_ordering operator<=>(const DyadicRational& x, const DyadicRational& y) {
    unsigned k = std::max(x.k_, y.k_);
    int c = cmp(x.scaled(k), y.scaled(k));
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  void canonicalize() {
    if (a_ == 0) {
      k_ = 0;
      return;
    }
    unsigned tz = static_cast<unsigned>(mpz_scan1(a_.get_mpz_t(), 0));
    unsigned drop = std::min(tz, k_);
    if (drop > 0) {
      mpz_fdiv_q_2exp(a_.get_mpz_t(), a_.get_mpz_t(), drop);
      k_ -= drop;
    }
  }

  mpz_class a_ = 0;
  unsigned k_ = 0;
};

/// "a/b" with b > 0, always written with a denominator.
inline std::string rational_str(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline mpq_class parse_rational(std::string_view text) {
  try {
    mpq_class q{std::string(text)};
    if (q.get_den() == 0) throw FormatError("zero denominator");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw FormatError("malformed rational: " + std::string(text));
  }
}

}  // namespace pfkit

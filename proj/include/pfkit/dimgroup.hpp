#pragma once

// Exact arithmetic for the ordered group of the paper-folding substitution:
// powers of its abelianization matrix M, the stage lattices G_n, H_n and
// (G_n)_+ inside Q^4, the maps alpha_n onto (1/2^n)Z + Z, the limit cone, the
// involution induced by anti-reversal, and the Birkhoff discrepancy of t.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <mutex>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "pfkit/dyadic.hpp"
#include "pfkit/errors.hpp"
#include "pfkit/report.hpp"
#include "pfkit/word.hpp"

namespace pfkit {

inline Json mpz_json(const mpz_class& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

struct IntMatrix4 {
  std::array<mpz_class, 16> e{};

  static IntMatrix4 identity() {
    IntMatrix4 m;
    for (int i = 0; i < 4; ++i) m.e[i * 5] = 1;
    return m;
  }
  static IntMatrix4 from_rows(const std::array<std::array<long, 4>, 4>& rows) {
    IntMatrix4 m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m.e[i * 4 + j] = rows[i][j];
    return m;
  }

  const mpz_class& at(int i, int j) const { return e[i * 4 + j]; }
  mpz_class& at(int i, int j) { return e[i * 4 + j]; }

  friend IntMatrix4 operator*(const IntMatrix4& a, const IntMatrix4& b) {
    IntMatrix4 c;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        mpz_class s = 0;
        for (int l = 0; l < 4; ++l) s += a.at(i, l) * b.at(l, j);
        c.at(i, j) = s;
      }
    return c;
  }
  friend bool operator==(const IntMatrix4& a, const IntMatrix4& b) { return a.e == b.e; }

  Json to_json() const {
    Json rows = Json::array();
    for (int i = 0; i < 4; ++i) {
      Json row = Json::array();
      for (int j = 0; j < 4; ++j) row.push_back(mpz_json(at(i, j)));
      rows.push_back(row);
    }
    return rows;
  }
};

/// Abelianization of 0 -> 20, 1 -> 21, 2 -> 30, 3 -> 31.
inline const IntMatrix4& substitution_matrix() {
  static const IntMatrix4 m = IntMatrix4::from_rows({{{1, 0, 1, 0}, {0, 1, 1, 0}, {1, 0, 0, 1}, {0, 1, 0, 1}}});
  return m;
}

inline IntMatrix4 mat_pow(const IntMatrix4& m, unsigned n) {
  IntMatrix4 result = IntMatrix4::identity();
  IntMatrix4 base = m;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

/// M^{n+2} written out: rows (2^n+1, 2^n-1, 2^n, 2^n), (2^n x4), (2^n x4),
/// (2^n-1, 2^n+1, 2^n, 2^n).
inline IntMatrix4 closed_form_power(unsigned n) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, n);
  IntMatrix4 m;
  for (auto& x : m.e) x = p;
  m.at(0, 0) = p + 1;
  m.at(0, 1) = p - 1;
  m.at(3, 0) = p - 1;
  m.at(3, 1) = p + 1;
  return m;
}

using RationalVector4 = std::array<mpq_class, 4>;

inline Json vector_json(const RationalVector4& q) {
  Json j = Json::array();
  for (const auto& x : q) j.push_back(rational_str(x));
  return j;
}

namespace detail {

/// M^n cached by exponent; entries are never invalidated once built.
inline IntMatrix4 substitution_power(unsigned n) {
  static std::mutex mu;
  static std::vector<IntMatrix4> cache{IntMatrix4::identity()};
  std::lock_guard lock(mu);
  while (cache.size() <= n) cache.push_back(cache.back() * substitution_matrix());
  return cache[n];
}

/// M^n q scaled by the common denominator D of q: returns (M^n (Dq), D).
inline std::pair<std::array<mpz_class, 4>, mpz_class> scaled_image(const RationalVector4& q, unsigned n) {
  mpz_class D = 1;
  for (const auto& x : q) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), x.get_den().get_mpz_t());
  std::array<mpz_class, 4> z;
  for (int i = 0; i < 4; ++i) z[i] = q[i].get_num() * (D / q[i].get_den());
  IntMatrix4 m = substitution_power(n);
  std::array<mpz_class, 4> y;
  for (int i = 0; i < 4; ++i) {
    y[i] = 0;
    for (int j = 0; j < 4; ++j) y[i] += m.at(i, j) * z[j];
  }
  return {y, D};
}

inline void require_index(unsigned n, unsigned min, const char* what) {
  if (n < min) throw DomainError(std::string(what) + ": index must be at least " + std::to_string(min));
}

}  // namespace detail

inline RationalVector4 matrix_image(const RationalVector4& q, unsigned n) {
  auto [y, D] = detail::scaled_image(q, n);
  RationalVector4 out;
  for (int i = 0; i < 4; ++i) {
    out[i] = mpq_class(y[i], D);
    out[i].canonicalize();
  }
  return out;
}

/// M^n q in Z^4.
inline bool in_G(const RationalVector4& q, unsigned n) {
  detail::require_index(n, 1, "in_G");
  auto [y, D] = detail::scaled_image(q, n);
  for (const auto& v : y)
    if (!mpz_divisible_p(v.get_mpz_t(), D.get_mpz_t())) return false;
  return true;
}

/// M^n q = 0.
inline bool in_H(const RationalVector4& q, unsigned n) {
  detail::require_index(n, 1, "in_H");
  auto [y, D] = detail::scaled_image(q, n);
  for (const auto& v : y)
    if (v != 0) return false;
  return true;
}

/// M^n q in Z^4 with non-negative entries.
inline bool in_G_plus(const RationalVector4& q, unsigned n) {
  detail::require_index(n, 1, "in_G_plus");
  auto [y, D] = detail::scaled_image(q, n);
  for (const auto& v : y)
    if (v < 0 || !mpz_divisible_p(v.get_mpz_t(), D.get_mpz_t())) return false;
  return true;
}

struct Membership {
  bool in_G = false;
  bool in_H = false;
  bool in_G_plus = false;
  friend bool operator==(const Membership&, const Membership&) = default;
  Json to_json() const { return Json{{"in_G", in_G}, {"in_H", in_H}, {"in_G_plus", in_G_plus}}; }
};

/// Memberships at G-index n >= 2 from the conditions on S = q1+q2+q3+q4 and
/// d = q1 - q2, with k = n - 2: G iff 2^k S and d are integers; H iff S = 0
/// and d = 0; G_+ iff in G, 2^k S >= 0 and |d| <= 2^k S. Integrality of d is
/// part of the positive condition as well, since M^n q has entries
/// 2^k S + d and 2^k S - d.
inline Membership closed_form_membership(const RationalVector4& q, unsigned n) {
  detail::require_index(n, 2, "closed_form_membership");
  mpq_class S = q[0] + q[1] + q[2] + q[3];
  mpq_class d = q[0] - q[1];
  mpq_class scaled = S;
  mpq_mul_2exp(scaled.get_mpq_t(), S.get_mpq_t(), n - 2);
  Membership m;
  m.in_G = scaled.get_den() == 1 && d.get_den() == 1;
  m.in_H = S == 0 && d == 0;
  m.in_G_plus = m.in_G && scaled >= 0 && abs(d) <= scaled;
  return m;
}

// ---------------------------------------------------------------------------
// Z[1/2] + Z with cone {s > 0} u {(0, 0)}

struct DyadicPair {
  DyadicRational s;
  mpz_class m = 0;

  friend bool operator==(const DyadicPair& a, const DyadicPair& b) { return a.s == b.s && a.m == b.m; }
  friend DyadicPair operator+(const DyadicPair& a, const DyadicPair& b) { return {a.s + b.s, a.m + b.m}; }
  friend DyadicPair operator-(const DyadicPair& a, const DyadicPair& b) { return {a.s - b.s, a.m - b.m}; }
  std::string str() const { return "(" + s.str() + ", " + m.get_str() + ")"; }
  Json to_json() const { return Json::array({s.str(), mpz_json(m)}); }
};

/// alpha_n(q) = (q1+q2+q3+q4, q1-q2) for q in G_{n+2}.
inline DyadicPair alpha(const RationalVector4& q, unsigned n) {
  if (!in_G(q, n + 2)) throw DomainError("alpha: vector not in G_{n+2}");
  auto s = DyadicRational::from_rational(q[0] + q[1] + q[2] + q[3]);
  if (!s || !s->in_scale(n)) throw DomainError("alpha: sum not in (1/2^n)Z");
  mpq_class d = q[0] - q[1];
  if (d.get_den() != 1) throw DomainError("alpha: q1 - q2 not an integer");
  return DyadicPair{*s, d.get_num()};
}

/// (m, 0, s - m, 0), a preimage of (s, m) under alpha_n.
inline RationalVector4 alpha_preimage(const DyadicPair& p, unsigned n) {
  if (!p.s.in_scale(n)) throw DomainError("alpha_preimage: s not in (1/2^n)Z");
  mpq_class m(p.m);
  return RationalVector4{m, mpq_class(0), p.s.to_rational() - m, mpq_class(0)};
}

inline bool cone_membership(const DyadicPair& p) { return p.s.sign() > 0 || (p.s.is_zero() && p.m == 0); }

/// (s, m) in (1/2^n)Z + Z with s >= 0 and |m| <= 2^n s.
inline bool in_stage_cone(const DyadicPair& p, unsigned n) {
  if (p.s.sign() < 0 || !p.s.in_scale(n)) return false;
  return abs(p.m) <= p.s.scaled(n);
}

/// Least n with in_stage_cone(p, n), or nullopt when p lies in no stage.
/// Starting from the exponent of s, raising n doubles 2^n s until it covers |m|.
inline std::optional<unsigned> staged_cone_witness(const DyadicPair& p) {
  if (p.s.sign() < 0) return std::nullopt;
  if (p.s.is_zero()) return p.m == 0 ? std::optional<unsigned>(0) : std::nullopt;
  unsigned n = p.s.exponent();
  mpz_class bound = p.s.scaled(n);
  mpz_class target = abs(p.m);
  while (bound < target) {
    bound *= 2;
    ++n;
  }
  return n;
}

/// Divides s by a positive power of two, e.g. (4, 0) -> (1, 0).
inline DyadicPair rescale_unit(const DyadicPair& p, const DyadicRational& old_unit_s) {
  if (old_unit_s.sign() <= 0) throw DomainError("rescale_unit: unit must be positive");
  if (mpz_popcount(old_unit_s.numerator().get_mpz_t()) != 1)
    throw DomainError("rescale_unit: unit must be a power of two so the result stays dyadic");
  long log2 = static_cast<long>(mpz_scan1(old_unit_s.numerator().get_mpz_t(), 0)) - static_cast<long>(old_unit_s.exponent());
  return DyadicPair{p.s.shifted(-log2), p.m};
}

// ---------------------------------------------------------------------------
// Involution (q, n) -> (q + n a, -n)

struct DyadicInvolution {
  DyadicRational a;
};

inline DyadicPair involution_apply(const DyadicInvolution& inv, const DyadicPair& p) {
  return DyadicPair{p.s + inv.a * p.m, -p.m};
}

/// p + sigma(p) = (2q + n a, 0).
inline DyadicPair one_plus_sigma_image(const DyadicInvolution& inv, const DyadicPair& p) {
  return p + involution_apply(inv, p);
}

/// ((q - n a)/2, n), mapped by 1 + sigma onto (q, 0) for any integer n.
inline DyadicPair one_plus_sigma_preimage(const DyadicInvolution& inv, const DyadicPair& target, const mpz_class& n = 0) {
  if (target.m != 0) throw DomainError("one_plus_sigma_preimage: target must have integer component 0");
  return DyadicPair{(target.s - inv.a * n).half(), n};
}

// ---------------------------------------------------------------------------
// Z_2 + Z[1/2] with cone {q > 0} u {(0, 0)}

struct TorsionDyadicPair {
  bool x = false;
  DyadicRational q;

  friend bool operator==(const TorsionDyadicPair& a, const TorsionDyadicPair& b) { return a.x == b.x && a.q == b.q; }
  friend TorsionDyadicPair operator+(const TorsionDyadicPair& a, const TorsionDyadicPair& b) {
    return {a.x != b.x, a.q + b.q};
  }
  Json to_json() const { return Json::array({x ? 1 : 0, q.str()}); }
};

inline bool is_positive(const TorsionDyadicPair& p) { return p.q.sign() > 0 || (!p.x && p.q.is_zero()); }

/// The unique state; it vanishes on the torsion summand.
inline DyadicRational state_value(const TorsionDyadicPair& p) { return p.q; }

/// Which element the order unit is sent to; both are admissible and both are
/// carried through every computation.
enum class UnitBranch { zero_one, one_one };

inline TorsionDyadicPair unit_of(UnitBranch b) { return {b == UnitBranch::one_one, DyadicRational(1)}; }
inline std::string to_string(UnitBranch b) { return b == UnitBranch::one_one ? "(1,1)" : "(0,1)"; }

/// (x, y) -> (x, y / 4).
inline TorsionDyadicPair rescale_torsion_unit(const TorsionDyadicPair& p) { return {p.x, p.q.shifted(-2)}; }

// ---------------------------------------------------------------------------
// Birkhoff discrepancy

/// Number of 1s in w[0 .. len).
inline std::uint64_t ones_in_prefix(const Word& w, std::size_t len) {
  detail::require_binary(w, "ones_in_prefix");
  if (len > w.size()) throw DomainError("ones_in_prefix: length out of range");
  std::uint64_t k = 0;
  const auto& limbs = w.limbs();
  std::size_t full = len / 64;
  for (std::size_t i = 0; i < full; ++i) k += static_cast<std::uint64_t>(std::popcount(limbs[i]));
  if (len % 64) k += static_cast<std::uint64_t>(std::popcount(limbs[full] & detail::low_mask(len % 64)));
  return k;
}

/// #1 - #0 over slots 0..n.
inline std::int64_t birkhoff_discrepancy(const Word& prefix, std::size_t n) {
  if (n >= prefix.size()) throw DomainError("birkhoff_discrepancy: n must be less than the prefix length");
  auto ones = static_cast<std::int64_t>(ones_in_prefix(prefix, n + 1));
  return 2 * ones - static_cast<std::int64_t>(n + 1);
}

/// m_0 = 0, m_{n+1} = 2 m_n + 2 for odd n and 2 m_n + 1 for even n.
inline std::uint64_t m_sequence(unsigned n) {
  if (n > 60) throw ResourceError("m_sequence: n above 60 would overflow");
  std::uint64_t m = 0;
  for (unsigned k = 0; k < n; ++k) m = 2 * m + (k % 2 == 1 ? 2 : 1);
  return m;
}

/// Largest |S_n| for the partial sums S_n = g(x) + ... + g(shift^n x) of
/// g = f - f o shift^{-1}, f the indicator of [x_0 = letter], along the orbit of
/// the point sitting at slot 1 of w. Sums are accumulated term by term.
inline std::int64_t coboundary_partial_sum_sup(const Word& w, Symbol letter = 1) {
  if (w.size() < 2) throw DomainError("coboundary: need at least two symbols");
  std::int64_t sum = 0, sup = 0;
  for (std::size_t j = 1; j < w.size(); ++j) {
    std::int64_t f_here = w[j] == letter ? 1 : 0;
    std::int64_t f_prev = w[j - 1] == letter ? 1 : 0;
    sum += f_here - f_prev;
    sup = std::max(sup, sum < 0 ? -sum : sum);
  }
  return sup;
}

}  // namespace pfkit

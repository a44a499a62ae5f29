#pragma once

// Seeded, exact verification of the dimension-group statements. Sampling is
// split into one stream per lattice index, so results do not depend on the
// thread count.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pfkit/dimgroup.hpp"
#include "pfkit/paperfold.hpp"
#include "pfkit/parallel.hpp"
#include "pfkit/report.hpp"
#include "pfkit/substitution.hpp"

namespace pfkit {

namespace detail {

/// Uniform enough for test sampling and identical on every standard library,
/// unlike std::uniform_int_distribution.
inline std::int64_t draw(std::mt19937_64& g, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(g() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

inline constexpr std::int64_t kSampleBound = 1024;

inline mpq_class random_rational(std::mt19937_64& g) {
  mpq_class q(mpz_class(draw(g, -kSampleBound, kSampleBound)), mpz_class(draw(g, 1, kSampleBound)));
  q.canonicalize();
  return q;
}

inline DyadicRational random_dyadic(std::mt19937_64& g, unsigned max_exponent = 10) {
  return DyadicRational(mpz_class(draw(g, -kSampleBound, kSampleBound)), static_cast<unsigned>(draw(g, 0, max_exponent)));
}

/// Five kinds of sample at G-index n, cycled by `kind`: arbitrary rationals,
/// dyadic rationals, and vectors built to lie in G_n, in H_n, and in (G_n)_+.
inline RationalVector4 sample_vector(std::mt19937_64& g, unsigned n, unsigned kind) {
  unsigned k = n - 2;
  RationalVector4 q;
  switch (kind % 5) {
    case 0:
      for (auto& x : q) x = random_rational(g);
      return q;
    case 1:
      for (auto& x : q) x = random_dyadic(g).to_rational();
      return q;
    case 3: {
      mpq_class a = random_rational(g), b = random_rational(g);
      return RationalVector4{a, a, b, -2 * a - b};
    }
    default: {
      bool positive = kind % 5 == 4;
      DyadicRational S(mpz_class(draw(g, positive ? 0 : -kSampleBound, kSampleBound)),
                       static_cast<unsigned>(draw(g, 0, k)));
      std::int64_t span = kSampleBound;
      if (positive) span = S.scaled(k).get_si();
      mpz_class d(draw(g, -span, span));
      q[0] = random_dyadic(g).to_rational();
      q[1] = q[0] - mpq_class(d);
      q[2] = random_dyadic(g).to_rational();
      q[3] = S.to_rational() - q[0] - q[1] - q[2];
      return q;
    }
  }
}

struct Tally {
  std::uint64_t discrepancies = 0;
  Json first = nullptr;
  template <class Detail>
  void record(bool ok, const char* property, Detail&& detail) {
    if (ok) return;
    if (discrepancies++ == 0) {
      first = detail();
      first["property"] = property;
    }
  }
};

}  // namespace detail

/// M^{n+2} against its closed form for n <= n_max, M against the
/// abelianization of the substitution, and the abelianization of the n-th
/// iterate against M^n for n <= iterate_max.
inline CheckReport verify_matpow(unsigned n_max = 20, unsigned iterate_max = 12) {
  Stopwatch clock;
  CheckReport r;
  r.check = "dimgroup.matpow";
  r.claim = "M^{n+2} has rows (2^n+1,2^n-1,2^n,2^n), (2^n,...), (2^n,...), (2^n-1,2^n+1,2^n,2^n)";
  r.params = {{"n_max", n_max}, {"iterate_max", iterate_max}};
  auto sub = Substitution::paperfolding();
  AbelianMatrix ab = abelianization(sub);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (substitution_matrix().at(i, j) != ab.at(i, j)) r.fail("M differs from the abelianization", {{"row", i}, {"col", j}});
  for (unsigned n = 0; n <= n_max && r.passed(); ++n) {
    if (mat_pow(substitution_matrix(), n + 2) != closed_form_power(n))
      r.fail("power differs from closed form", {{"n", n}, {"power", mat_pow(substitution_matrix(), n + 2).to_json()}});
  }
  for (unsigned n = 0; n <= iterate_max && r.passed(); ++n) {
    IntMatrix4 p = mat_pow(substitution_matrix(), n);
    for (Symbol a = 0; a < 4; ++a) {
      Word image = apply_power(sub, Word::from_symbols(std::vector<Symbol>{a}, Alphabet::quaternary()), n);
      for (Symbol b = 0; b < 4; ++b)
        if (p.at(a, b) != count(image, b)) r.fail("iterate abelianization differs from M^n", {{"n", n}, {"row", a}, {"col", b}});
    }
  }
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

/// For each G-index n in [2, index_max] and `samples` vectors: closed-form
/// membership equals the definition, nesting into n + 1, the kernel of alpha,
/// commutation with the stage inclusion, the positive image, and
/// surjectivity through an explicit preimage of a random target.
inline CheckReport verify_lattice(unsigned index_max, std::uint64_t samples, std::uint64_t seed) {
  Stopwatch clock;
  CheckReport r;
  r.check = "dimgroup.lattice";
  r.claim = "G_n, H_n, (G_n)_+ match their closed forms and alpha_n induces the limit Z[1/2] + Z";
  r.seed = seed;
  r.params = {{"index_min", 2}, {"index_max", index_max}, {"samples_per_index", samples}};
  if (index_max < 2) throw DomainError("verify_lattice: index_max must be at least 2");
  if (index_max > 40) throw ResourceError("verify_lattice: index_max above 40");
  std::size_t indices = index_max - 1;
  std::vector<detail::Tally> tallies(indices);
  parallel_chunks(indices, 1, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) {
      unsigned n = static_cast<unsigned>(i + 2);
      unsigned k = n - 2;
      auto g = detail::stream(seed, n);
      auto& t = tallies[i];
      for (std::uint64_t s = 0; s < samples; ++s) {
        RationalVector4 q = detail::sample_vector(g, n, static_cast<unsigned>(s));
        auto where = [&] { return Json{{"index", n}, {"q", vector_json(q)}}; };
        Membership def{in_G(q, n), in_H(q, n), in_G_plus(q, n)};
        Membership cf = closed_form_membership(q, n);
        t.record(def == cf, "closed form", [&] {
          auto j = where();
          j["definition"] = def.to_json();
          j["closed_form"] = cf.to_json();
          return j;
        });
        t.record(!def.in_G || in_G(q, n + 1), "G nesting", where);
        t.record(!def.in_H || in_H(q, n + 1), "H nesting", where);
        t.record(!def.in_G_plus || in_G_plus(q, n + 1), "G_+ nesting", where);
        t.record(!def.in_H || def.in_G, "H inside G", where);
        if (def.in_G) {
          DyadicPair a = alpha(q, k);
          t.record((a == DyadicPair{}) == def.in_H, "alpha kernel", where);
          t.record(alpha(q, k + 1) == a, "diagram", where);
          t.record(in_stage_cone(a, k) == def.in_G_plus, "positive image", where);
        }
        DyadicPair target{DyadicRational(mpz_class(detail::draw(g, -detail::kSampleBound, detail::kSampleBound)),
                                         static_cast<unsigned>(detail::draw(g, 0, k))),
                          mpz_class(detail::draw(g, -detail::kSampleBound, detail::kSampleBound))};
        RationalVector4 pre = alpha_preimage(target, k);
        bool hit = in_G(pre, n) && alpha(pre, k) == target;
        auto at_target = [&] { return Json{{"index", n}, {"target", target.to_json()}}; };
        t.record(hit, "surjectivity", at_target);
        if (hit) t.record(in_G_plus(pre, n) == in_stage_cone(target, k), "positive surjectivity", at_target);
      }
    }
  });
  std::uint64_t total = 0;
  for (const auto& t : tallies) {
    if (t.discrepancies > 0 && r.passed()) r.fail("lattice property violated", t.first);
    total += t.discrepancies;
  }
  r.params["discrepancies"] = total;
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

/// Staged cone with minimal witness against the direct cone, on an exhaustive
/// box |a|, |m| <= 32, k <= 20, on extreme values of the full range
/// |a|, |m| <= 2^20, k <= 20, and on `random_points` seeded points of that
/// range. Also the unit (1,1,1,1) -> (4,0) -> (1,0) and invariance of the cone
/// under rescaling.
inline CheckReport verify_cone(std::uint64_t random_points, std::uint64_t seed) {
  Stopwatch clock;
  CheckReport r;
  r.check = "dimgroup.cone";
  r.claim = "u_n {(s,m) in (1/2^n)Z + Z : s >= 0, |m| <= 2^n s} = {s > 0} u {(0,0)}, unit (4,0) ~ (1,0)";
  r.seed = seed;
  constexpr std::int64_t kFull = std::int64_t{1} << 20;
  constexpr unsigned kMaxExp = 20;
  std::uint64_t checked = 0;
  auto check_point = [&](const DyadicPair& p) {
    ++checked;
    bool direct = cone_membership(p);
    auto w = staged_cone_witness(p);
    if (w.has_value() != direct) {
      r.fail("staged and direct cone disagree", {{"pair", p.to_json()}, {"direct", direct}});
      return;
    }
    if (w && (!in_stage_cone(p, *w) || (*w > 0 && in_stage_cone(p, *w - 1))))
      r.fail("witness is not the least stage", {{"pair", p.to_json()}, {"witness", *w}});
  };
  for (std::int64_t a = -32; a <= 32 && r.passed(); ++a)
    for (unsigned k = 0; k <= kMaxExp; ++k)
      for (std::int64_t m = -32; m <= 32; ++m) check_point({DyadicRational(mpz_class(a), k), mpz_class(m)});
  const std::int64_t extremes[] = {0, 1, -1, 2, -2, kFull, -kFull, kFull - 1, -(kFull - 1), kFull / 2, -(kFull / 2)};
  for (auto a : extremes)
    for (unsigned k = 0; k <= kMaxExp; ++k)
      for (auto m : extremes) check_point({DyadicRational(mpz_class(a), k), mpz_class(m)});
  auto g = detail::stream(seed, 0);
  std::uint64_t rescale_checked = 0;
  for (std::uint64_t i = 0; i < random_points && r.passed(); ++i) {
    DyadicPair p{DyadicRational(mpz_class(detail::draw(g, -kFull, kFull)), static_cast<unsigned>(detail::draw(g, 0, kMaxExp))),
                 mpz_class(detail::draw(g, -kFull, kFull))};
    check_point(p);
    if (cone_membership(p) != cone_membership(rescale_unit(p, DyadicRational(4)))) r.fail("rescaling changed cone membership", {{"pair", p.to_json()}});
    ++rescale_checked;
  }
  r.params = {{"box", 32},     {"range", kFull}, {"max_exponent", kMaxExp}, {"random_points", random_points},
              {"points_checked", checked}, {"rescale_checked", rescale_checked}};
  // Unit and named examples.
  DyadicPair four{DyadicRational(4), 0};
  RationalVector4 ones{mpq_class(1), mpq_class(1), mpq_class(1), mpq_class(1)};
  for (unsigned n = 0; n <= 12 && r.passed(); ++n)
    if (alpha(ones, n) != four) r.fail("alpha(1,1,1,1) is not (4,0)", {{"n", n}, {"value", alpha(ones, n).to_json()}});
  if (rescale_unit(four, DyadicRational(4)) != DyadicPair{DyadicRational(1), 0}) r.fail("rescale_unit(4,0) is not (1,0)");
  if (rescale_unit(DyadicPair{}, DyadicRational(4)) != DyadicPair{}) r.fail("rescale_unit(0,0) is not (0,0)");
  DyadicPair example{DyadicRational(1, 3), 1000};
  auto w = staged_cone_witness(example);
  r.params["witness_1/8_1000"] = w ? Json(*w) : Json(nullptr);
  if (!w || *w != 13) r.fail("unexpected witness for (1/8, 1000)");
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

/// sigma(q, n) = (q + n a, -n) has order two and fixes (q, 0); 1 + sigma lands
/// in Z[1/2] + 0 and reaches every sampled (q, 0) via an explicit preimage.
inline CheckReport verify_involution(std::uint64_t samples, std::uint64_t seed) {
  Stopwatch clock;
  CheckReport r;
  r.check = "dimgroup.involution";
  r.claim = "sigma* is an involution fixing Z[1/2] + 0 and (1 + sigma*)(Z[1/2] + Z) = Z[1/2] + 0";
  r.seed = seed;
  r.params = {{"samples", samples}};
  auto g = detail::stream(seed, 1);
  for (std::uint64_t i = 0; i < samples && r.passed(); ++i) {
    DyadicInvolution inv{detail::random_dyadic(g, 20)};
    DyadicPair p{detail::random_dyadic(g, 20), mpz_class(detail::draw(g, -detail::kSampleBound, detail::kSampleBound))};
    DyadicPair fixed{detail::random_dyadic(g, 20), 0};
    mpz_class n(detail::draw(g, -detail::kSampleBound, detail::kSampleBound));
    auto where = [&] { return Json{{"a", inv.a.str()}, {"pair", p.to_json()}}; };
    if (involution_apply(inv, involution_apply(inv, p)) != p) r.fail("sigma is not of order two", where());
    if (involution_apply(inv, fixed) != fixed) r.fail("sigma moves (q, 0)", where());
    if (involution_apply(inv, {DyadicRational(1), 0}) != DyadicPair{DyadicRational(1), 0}) r.fail("sigma moves the unit", where());
    if (one_plus_sigma_image(inv, p).m != 0) r.fail("(1 + sigma) image has nonzero integer part", where());
    if (one_plus_sigma_image(inv, fixed) != DyadicPair{fixed.s * mpz_class(2), 0}) r.fail("(1 + sigma)(q, 0) is not (2q, 0)", where());
    if (one_plus_sigma_image(inv, one_plus_sigma_preimage(inv, fixed, n)) != fixed) r.fail("preimage does not reach (q, 0)", where());
    if (one_plus_sigma_preimage(inv, fixed) != DyadicPair{fixed.s.half(), 0}) r.fail("preimage of (q, 0) is not (q/2, 0)", where());
  }
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

/// Group law, cone and state on Z_2 + Z[1/2] for both admissible unit images.
inline CheckReport verify_torsion(std::uint64_t samples, std::uint64_t seed) {
  Stopwatch clock;
  CheckReport r;
  r.check = "dimgroup.torsion";
  r.claim = "Z_2 + Z[1/2] with cone {q > 0} u {(0,0)} and state (x, q) -> q, unit (0,1) or (1,1)";
  r.seed = seed;
  r.params = {{"samples", samples}, {"unit_branches", Json::array({to_string(UnitBranch::zero_one), to_string(UnitBranch::one_one)})}};
  auto dy = [](const char* s) { return DyadicRational::parse(s); };
  if (TorsionDyadicPair{true, dy("1/2^0")} + TorsionDyadicPair{true, dy("3/2^2")} != TorsionDyadicPair{false, dy("7/2^2")})
    r.fail("torsion addition");
  if (!is_positive({true, dy("1/2^1")}) || is_positive({true, DyadicRational()}) || !is_positive({false, DyadicRational()}))
    r.fail("cone boundary");
  if (state_value({true, dy("3/2^2")}) != state_value({false, dy("3/2^2")})) r.fail("state sees torsion");
  for (auto b : {UnitBranch::zero_one, UnitBranch::one_one}) {
    TorsionDyadicPair u = unit_of(b);
    TorsionDyadicPair four{u.x, DyadicRational(4)};
    if (rescale_torsion_unit(four) != u) r.fail("rescaling does not reach the unit", {{"branch", to_string(b)}});
    if (!is_positive(u) || state_value(u) != DyadicRational(1)) r.fail("unit is not a positive element of state 1", {{"branch", to_string(b)}});
  }
  auto g = detail::stream(seed, 2);
  for (std::uint64_t i = 0; i < samples && r.passed(); ++i) {
    TorsionDyadicPair x{detail::draw(g, 0, 1) == 1, detail::random_dyadic(g)};
    TorsionDyadicPair y{detail::draw(g, 0, 1) == 1, detail::random_dyadic(g)};
    Json where{{"x", x.to_json()}, {"y", y.to_json()}};
    if (state_value(x + y) != state_value(x) + state_value(y)) r.fail("state is not additive", where);
    if (is_positive(x) && is_positive(y) && !is_positive(x + y)) r.fail("cone not closed under addition", where);
    if (is_positive(x) && state_value(x).sign() < 0) r.fail("state negative on the cone", where);
    if (x + x != TorsionDyadicPair{false, x.q * mpz_class(2)}) r.fail("x + x keeps torsion", where);
    if (is_positive(x) && is_positive(TorsionDyadicPair{x.x, -x.q}) && !(x == TorsionDyadicPair{})) r.fail("cone is not proper", where);
  }
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

/// Discrepancy n + 1 at m_n for n <= N on a prefix of t, and bounded partial
/// sums (<= 2) for the coboundary of the width-1 cylinder indicators.
inline CheckReport verify_unbounded_discrepancy(unsigned N) {
  Stopwatch clock;
  CheckReport r;
  r.check = "dimgroup.discrepancy";
  r.claim = "#1 - #0 on t[0, m_n] equals n + 1, so the Birkhoff sums of x_0 are unbounded";
  r.params = {{"N", N}};
  if (N > kMaxGeneration) throw ResourceError("verify_unbounded_discrepancy: N beyond generation cap");
  // m_N <= 2^{N+1} - 2, so t_N covers slot m_N. t_1 is the shortest word with a coboundary step.
  Word t = pf_word(std::max(N, 1u));
  r.params["prefix_length"] = t.size();
  Json values = Json::array();
  for (unsigned n = 0; n <= N; ++n) {
    std::uint64_t m = m_sequence(n);
    std::int64_t d = birkhoff_discrepancy(t, m);
    values.push_back(d);
    if (d != static_cast<std::int64_t>(n) + 1 && r.passed()) r.fail("discrepancy at m_n is not n + 1", {{"n", n}, {"m_n", m}, {"value", d}});
  }
  r.params["values"] = values;
  std::int64_t sup = std::max(coboundary_partial_sum_sup(t, 1), coboundary_partial_sum_sup(t, 0));
  r.params["coboundary_sup"] = sup;
  if (sup > 2) r.fail("coboundary partial sums exceed 2", {{"sup", sup}});
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

}  // namespace pfkit

#pragma once

// Paper-folding words t_0 = 1, t_{n+1} = t_n 1 anti_reverse(t_n), prefixes of
// the limit sequence t, and finite certificates for its self-similarity,
// uniform recurrence, aperiodicity and anti-palindrome census.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pfkit/errors.hpp"
#include "pfkit/report.hpp"
#include "pfkit/word.hpp"

namespace pfkit {

inline constexpr unsigned kMaxGeneration = 30;

/// |t_n| = 2^{n+1} - 1.
inline std::size_t pf_length(unsigned n) { return (std::size_t{2} << n) - 1; }

inline Word pf_word(unsigned n) {
  if (n > kMaxGeneration)
    throw ResourceError("pf_word: generation " + std::to_string(n) + " exceeds cap " + std::to_string(kMaxGeneration));
  Word t = Word::from_string("1");
  for (unsigned k = 0; k < n; ++k) {
    WordBuilder next(Alphabet::binary(), 2 * t.size() + 1);
    next.append(t).push_back(1).append(anti_reverse(t));
    t = std::move(next).build();
  }
  return t;
}

/// First `length` symbols of t.
inline Word pf_prefix(std::size_t length) {
  if (length > pf_length(kMaxGeneration))
    throw ResourceError("pf_prefix: length " + std::to_string(length) + " exceeds resource cap");
  if (length == 0) return Word(Alphabet::binary());
  unsigned n = 0;
  while (pf_length(n) < length) ++n;
  return pf_word(n).prefix(length);
}

/// Smallest generation whose word has at least `length` symbols.
inline unsigned generation_covering(std::size_t length) {
  unsigned n = 0;
  while (pf_length(n) < length) {
    if (++n > kMaxGeneration) throw ResourceError("length beyond generation cap");
  }
  return n;
}

// ---------------------------------------------------------------------------
// Self-similarity

/// Builds block x_1 block^ x_2 block x_3 block^ ... x_m block^, alternating
/// `block` and its anti-reversal, with the symbols of `separators` in between.
inline Word interleave_blocks(const Word& block, const Word& separators) {
  Word hat = anti_reverse(block);
  WordBuilder out(Alphabet::binary(), (separators.size() + 1) * (block.size() + 1));
  for (std::size_t i = 0; i <= separators.size(); ++i) {
    out.append(i % 2 == 0 ? block : hat);
    if (i < separators.size()) out.push_back(separators[i]);
  }
  return std::move(out).build();
}

inline CheckReport verify_self_similarity(unsigned p, unsigned n) {
  Stopwatch clock;
  CheckReport r;
  r.check = "paperfold.self_similarity";
  r.claim = "t_{p+n+1} = t_p x_1 ^t_p x_2 t_p ... x_{2^{n+1}-1} ^t_p with x = t_n";
  r.params = {{"p", p}, {"n", n}};
  if (p + n + 1 > 24) throw ResourceError("verify_self_similarity: p + n + 1 must be at most 24");
  Word big = pf_word(p + n + 1);
  Word expected = interleave_blocks(pf_word(p), pf_word(n));
  if (auto pos = first_mismatch(big, expected)) {
    r.fail("block decomposition mismatch", {{"position", *pos}});
  }
  r.params["length"] = big.size();
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

// ---------------------------------------------------------------------------
// Anti-palindrome census

struct CensusResult {
  std::size_t max_length_checked = 0;
  std::map<std::size_t, std::size_t> counts;  // even length -> distinct anti-palindromic factors
  bool saturated = false;

  Json to_json() const {
    Json c = Json::object();
    for (auto [len, k] : counts) c[std::to_string(len)] = k;
    return Json{{"max_length_checked", max_length_checked}, {"counts", c}, {"saturated", saturated}};
  }
};

inline std::size_t count_anti_palindromic(const std::vector<std::uint64_t>& codes, std::size_t length) {
  std::size_t k = 0;
  for (std::uint64_t c : codes) k += is_anti_palindrome_code(c, length) ? 1 : 0;
  return k;
}

/// Census of `w`; saturation compares factor sets of every length up to
/// max_len against `reference` (typically the previous generation).
inline CensusResult census_of(const Word& w, const Word& reference, std::size_t max_len) {
  detail::require_binary(w, "census");
  if (max_len < 2 || max_len % 2 != 0) throw DomainError("census: max_len must be even and at least 2");
  if (max_len > 64) throw DomainError("census: max_len above 64 is not supported");
  CensusResult out;
  out.max_length_checked = max_len;
  out.saturated = true;
  for (std::size_t len = 1; len <= max_len; ++len) {
    auto codes = factor_codes(w, len);
    if (len % 2 == 0) out.counts[len] = count_anti_palindromic(codes, len);
    if (factor_codes(reference, len) != codes) out.saturated = false;
  }
  return out;
}

inline CensusResult antipalindrome_census(unsigned generation, std::size_t max_len) {
  if (max_len < 2 || max_len % 2 != 0) throw DomainError("census: max_len must be even and at least 2");
  if (generation < 1 || generation > kMaxGeneration) throw DomainError("census: generation out of range");
  if (pf_length(generation) < 3 * max_len) throw DomainError("census: generation too small for max_len");
  Word t = pf_word(generation);
  return census_of(t, t.prefix(pf_length(generation - 1)), max_len);
}

/// Census as a report: inconclusive unless saturated, fail if any
/// anti-palindrome of length 8 or more shows up.
inline CheckReport census_report(unsigned generation, std::size_t max_len) {
  Stopwatch clock;
  CheckReport r;
  r.check = "paperfold.census";
  r.claim = "every anti-palindromic factor of t has length at most 6";
  r.params = {{"generation", generation}, {"max_len", max_len}};
  CensusResult c = antipalindrome_census(generation, max_len);
  r.params["census"] = c.to_json();
  if (!c.saturated) r.inconclusive("factor sets not saturated");
  for (auto [len, k] : c.counts)
    if (len >= 8 && k > 0) {
      r.fail("anti-palindrome of length >= 8 present", {{"length", len}, {"count", k}});
      break;
    }
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

// ---------------------------------------------------------------------------
// Uniform recurrence

/// Every window of length 3 * 2^{p+1} in t_{test_generation} contains t_p.
/// Containing t_p already forces every factor of t_p, so t_p alone is checked.
inline CheckReport verify_recurrence(unsigned p, unsigned test_generation) {
  Stopwatch clock;
  CheckReport r;
  r.check = "paperfold.recurrence";
  r.claim = "every factor of length 3*2^{p+1} of t contains t_p";
  if (test_generation < p + 4) throw DomainError("verify_recurrence: test_generation must be at least p + 4");
  Word text = pf_word(test_generation);
  Word pattern = pf_word(p);
  std::size_t window = 3 * (std::size_t{2} << p);
  r.params = {{"p", p}, {"generation", test_generation}, {"window", window}};
  auto occ = find_all(text, pattern);
  std::size_t windows = text.size() - window + 1;
  std::size_t idx = 0;
  std::size_t max_slack = 0;
  for (std::size_t s = 0; s < windows; ++s) {
    while (idx < occ.size() && occ[idx] < s) ++idx;
    if (idx == occ.size() || occ[idx] + pattern.size() > s + window) {
      r.fail("window without an occurrence of t_p", {{"window_start", s}});
      break;
    }
    max_slack = std::max(max_slack, occ[idx] - s);
  }
  r.params["windows_checked"] = windows;
  r.params["occurrences"] = occ.size();
  r.params["max_offset_to_occurrence"] = max_slack;
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

// ---------------------------------------------------------------------------
// Aperiodicity

struct PeriodViolation {
  std::size_t cut = 0;
  std::size_t period = 0;
};

/// Looks for rho <= max_period and cut <= preperiod with w[j + rho] = w[j] for
/// all j >= cut. Reports the smallest such rho and its smallest cut.
inline std::optional<PeriodViolation> find_eventual_period(const Word& w, std::size_t max_period, std::size_t preperiod) {
  if (max_period == 0) throw DomainError("max_period must be positive");
  if (w.size() < preperiod + 2 * max_period) throw DomainError("prefix too short for the requested periods");
  std::size_t n = w.size();
  std::size_t chunk = w.alphabet().max_code_length();
  for (std::size_t rho = 1; rho <= max_period; ++rho) {
    bool mismatch = false;
    for (std::size_t j = preperiod; j + rho < n && !mismatch; j += chunk) {
      std::size_t len = std::min(chunk, n - rho - j);
      mismatch = w.code(j, len) != w.code(j + rho, len);
    }
    if (mismatch) continue;
    std::size_t cut = preperiod;
    while (cut > 0 && w[cut - 1] == w[cut - 1 + rho]) --cut;
    return PeriodViolation{cut, rho};
  }
  return std::nullopt;
}

inline CheckReport check_aperiodic(const Word& w, std::size_t max_period, std::size_t preperiod) {
  Stopwatch clock;
  CheckReport r;
  r.check = "paperfold.aperiodic";
  r.claim = "no eventual period <= max_period detected after preperiod";
  r.params = {{"prefix_len", w.size()}, {"max_period", max_period}, {"preperiod", preperiod}};
  if (auto v = find_eventual_period(w, max_period, preperiod)) {
    r.fail("eventually periodic on the checked prefix", {{"cut", v->cut}, {"period", v->period}});
  }
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

inline CheckReport check_aperiodic(std::size_t prefix_len, std::size_t max_period, std::size_t preperiod) {
  if (max_period == 0 || prefix_len < preperiod + 2 * max_period)
    throw DomainError("check_aperiodic: need prefix_len >= preperiod + 2 * max_period and max_period >= 1");
  return check_aperiodic(pf_prefix(prefix_len), max_period, preperiod);
}

}  // namespace pfkit

#pragma once

// Language-level checks for the infinite dihedral action generated by the
// shift and the anti-reversal involution sigma(x)_j = 1 - x_{-j}.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pfkit/errors.hpp"
#include "pfkit/language.hpp"
#include "pfkit/paperfold.hpp"
#include "pfkit/report.hpp"
#include "pfkit/word.hpp"

namespace pfkit {

/// Failure to extend a word to the left within the horizon. Carries the word
/// built so far; it signals a horizon that is too small for the oracle, not a
/// contradiction in the language.
class ExtensionFailure : public std::runtime_error {
 public:
  ExtensionFailure(const std::string& what, Word stuck) : std::runtime_error(what), stuck_(std::move(stuck)) {}
  const Word& stuck() const { return stuck_; }

 private:
  Word stuck_;
};

inline CheckReport check_closure_under_antireversal(const LanguageOracle& oracle, std::size_t n_max) {
  Stopwatch clock;
  CheckReport r;
  r.check = "dihedral.closure";
  r.claim = "the language is closed under anti-reversal";
  r.params = {{"source_length", oracle.source().size()}, {"n_max", n_max}};
  detail::require_binary(oracle.source(), "closure check");
  if (n_max > oracle.max_len()) throw DomainError("closure: n_max exceeds oracle max_len");
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (!oracle.saturated(n)) {
      r.inconclusive("factor set not saturated", {{"length", n}});
      break;
    }
    for (std::uint64_t c : oracle.factors(n)) {
      if (!oracle.contains_code(anti_reverse_code(c, n), n)) {
        r.fail("anti-reversal of a factor is not a factor", {{"factor", Word::from_code(c, n).str()}});
        break;
      }
    }
    if (r.status == Status::fail) break;
  }
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

/// True iff x_j = 1 - x_{1-j} on every covered slot. The window must cover
/// [-K+1, K] for some K >= 1.
inline bool is_phi_sigma_fixed_window(const Window& x) {
  detail::require_binary(x.word, "is_phi_sigma_fixed_window");
  std::int64_t K = static_cast<std::int64_t>(x.word.size()) / 2;
  if (K < 1 || x.word.size() % 2 != 0 || x.origin != 1 - K)
    throw DomainError("phi-sigma window must cover slots [-K+1, K]");
  for (std::int64_t j = 1; j <= K; ++j)
    if (x.at(j) != 1 - x.at(1 - j)) return false;
  return true;
}

/// Extends `seed` to the left by `steps` letters, choosing at each step the
/// smallest letter that keeps every new factor of length <= horizon inside
/// the oracle's language.
inline Word left_extend(const LanguageOracle& oracle, const Word& seed, std::size_t steps, std::size_t horizon) {
  if (seed.alphabet() != oracle.alphabet()) throw DomainError("left_extend: alphabet mismatch");
  if (horizon == 0) throw DomainError("left_extend: horizon must be positive");
  if (steps + seed.size() + horizon > oracle.max_len())
    throw DomainError("left_extend: steps + |seed| + horizon exceeds oracle max_len");
  if (!oracle.contains(seed)) throw DomainError("left_extend: seed is not in the language");
  // Built right to left, reversed at the end.
  std::vector<Symbol> reversed;
  reversed.reserve(seed.size() + steps);
  for (std::size_t i = seed.size(); i-- > 0;) reversed.push_back(seed[i]);
  auto current = [&] {
    WordBuilder b(oracle.alphabet(), reversed.size());
    for (std::size_t i = reversed.size(); i-- > 0;) b.push_back(reversed[i]);
    return std::move(b).build();
  };
  for (std::size_t step = 0; step < steps; ++step) {
    bool extended = false;
    for (Symbol a = 0; a < oracle.alphabet().size() && !extended; ++a) {
      reversed.push_back(a);
      Word candidate = current();
      bool ok = true;
      for (std::size_t k = 1; k <= std::min(horizon, candidate.size()) && ok; ++k)
        ok = oracle.contains_code(candidate.code(0, k), k);
      if (ok) {
        extended = true;
      } else {
        reversed.pop_back();
      }
    }
    if (!extended) throw ExtensionFailure("no admissible letter within horizon after " + std::to_string(step) + " steps", current());
  }
  return current();
}

struct FreenessCertificate {
  std::size_t closure_checked_to = 0;
  std::size_t antipalindrome_sup = 0;
  Status verdict = Status::inconclusive;
  std::map<std::size_t, std::size_t> antipalindrome_counts;
  std::vector<Word> witnesses;
  std::string reason;

  Json to_json() const {
    Json counts = Json::object();
    for (auto [len, k] : antipalindrome_counts) counts[std::to_string(len)] = k;
    Json w = Json::array();
    for (const auto& v : witnesses) w.push_back(v.str());
    Json j{{"verdict", std::string(to_string(verdict))},
           {"closure_checked_to", closure_checked_to},
           {"antipalindrome_sup", antipalindrome_sup},
           {"antipalindrome_counts", counts},
           {"witnesses", w}};
    if (!reason.empty()) j["reason"] = reason;
    return j;
  }
};

/// Closure under anti-reversal plus the absence of length-8 anti-palindromes.
/// Every anti-palindrome longer than 8 has a centered anti-palindromic factor
/// of length 8, so length 8 bounds them all. The implication from these
/// combinatorial facts to freeness of the dihedral action on a minimal subshift
/// is the standard criterion and is not re-derived here.
inline FreenessCertificate freeness_certificate(const LanguageOracle& oracle) {
  FreenessCertificate cert;
  detail::require_binary(oracle.source(), "freeness certificate");
  std::size_t sat = oracle.saturated_through();
  if (oracle.max_len() < 8 || sat < 8) {
    cert.verdict = Status::inconclusive;
    cert.reason = "oracle not saturated through length 8 (saturated through " + std::to_string(sat) + ")";
    return cert;
  }
  cert.closure_checked_to = sat;
  auto closure = check_closure_under_antireversal(oracle, sat);
  bool closed = closure.passed();
  if (!closed) cert.witnesses.push_back(Word::from_string(closure.witness.at("factor").get<std::string>()));
  for (std::size_t len = 2; len <= sat; len += 2) {
    std::size_t k = 0;
    for (std::uint64_t c : oracle.factors(len)) {
      if (!is_anti_palindrome_code(c, len)) continue;
      ++k;
      if (len == 8 && cert.witnesses.size() < 4) cert.witnesses.push_back(Word::from_code(c, len));
    }
    cert.antipalindrome_counts[len] = k;
    if (k > 0) cert.antipalindrome_sup = len;
  }
  bool bounded = cert.antipalindrome_counts[8] == 0;
  cert.verdict = closed && bounded ? Status::pass : Status::fail;
  if (!closed) cert.reason = "language not closed under anti-reversal";
  else if (!bounded) cert.reason = "anti-palindromes of length 8 present";
  return cert;
}

inline CheckReport freeness_report(const LanguageOracle& oracle) {
  Stopwatch clock;
  CheckReport r;
  r.check = "dihedral.freeness";
  r.claim = "closure under anti-reversal and no anti-palindrome of length 8";
  r.params = {{"source_length", oracle.source().size()}, {"max_len", oracle.max_len()}};
  FreenessCertificate cert = freeness_certificate(oracle);
  Json j = cert.to_json();
  if (cert.verdict == Status::inconclusive) r.inconclusive(cert.reason);
  else if (cert.verdict == Status::fail) r.fail(cert.reason, j["witnesses"]);
  r.params["certificate"] = j;
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

/// left_extend on the factors of t_generation, followed by an audit of every
/// factor of the result up to the horizon.
inline CheckReport left_extension_report(unsigned generation, const Word& seed, std::size_t steps, std::size_t horizon) {
  Stopwatch clock;
  CheckReport r;
  r.check = "dihedral.extend";
  r.claim = "factors of t extend to the left inside the language";
  r.params = {{"generation", generation}, {"seed", seed.str()}, {"steps", steps}, {"horizon", horizon}};
  std::size_t need = steps + seed.size() + horizon;
  if (need > 64) throw DomainError("extend: steps + |seed| + horizon must be at most 64");
  LanguageOracle oracle = LanguageOracle::paperfolding(generation, need);
  try {
    Word out = left_extend(oracle, seed, steps, horizon);
    r.params["result"] = out.str();
    if (out.size() != seed.size() + steps || out.drop(steps) != seed) r.fail("result does not end with the seed");
    for (std::size_t k = 1; k <= horizon && r.passed(); ++k)
      for (std::size_t i = 0; i + k <= out.size(); ++i)
        if (!oracle.contains_code(out.code(i, k), k)) {
          r.fail("extended word has a factor outside the language", {{"factor", out.substr(i, k).str()}});
          break;
        }
  } catch (const ExtensionFailure& e) {
    r.fail(e.what(), {{"stuck", e.stuck().str()}});
  }
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

// ---------------------------------------------------------------------------
// Even/odd decomposition

/// A 7-symbol pattern over {0,1,x,y}; x and y are free bits.
struct WindowPattern {
  std::string text;
  std::uint64_t mask = 0;
  std::uint64_t value = 0;

  explicit WindowPattern(std::string_view p) : text(p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == '0' || p[i] == '1') {
        mask |= std::uint64_t{1} << i;
        if (p[i] == '1') value |= std::uint64_t{1} << i;
      }
    }
  }
  bool matches(std::uint64_t code) const { return (code & mask) == value; }
};

inline const std::array<WindowPattern, 4>& even_window_patterns() {
  static const std::array<WindowPattern, 4> p{WindowPattern("110x100"), WindowPattern("0x100y1"), WindowPattern("100x110"),
                                              WindowPattern("0x110y1")};
  return p;
}

inline const std::array<WindowPattern, 4>& odd_window_patterns() {
  static const std::array<WindowPattern, 4> p{WindowPattern("10x100y"), WindowPattern("x100y11"), WindowPattern("00x110y"),
                                              WindowPattern("x110y10")};
  return p;
}

/// For all k, l <= K: t[2k..2k+6] != t[2l+1..2l+7], and each window falls in
/// its parity's pattern family.
inline CheckReport parity_class_separation(std::size_t K, unsigned generation) {
  Stopwatch clock;
  CheckReport r;
  r.check = "dihedral.parity";
  r.claim = "even-offset and odd-offset 7-windows of t never coincide";
  r.params = {{"K", K}, {"generation", generation}};
  if (generation > kMaxGeneration || 2 * K + 8 > pf_length(generation))
    throw DomainError("parity_class_separation: need 2K + 8 <= 2^{generation+1} - 1");
  Word t = pf_word(generation);
  std::map<std::uint64_t, std::size_t> even_first;  // code -> first k
  std::vector<std::uint64_t> odd(K + 1);
  for (std::size_t k = 0; k <= K; ++k) {
    std::uint64_t e = t.code(2 * k, 7);
    even_first.emplace(e, k);
    odd[k] = t.code(2 * k + 1, 7);
  }
  auto any_match = [](const auto& family, std::uint64_t c) {
    for (const auto& p : family)
      if (p.matches(c)) return true;
    return false;
  };
  for (std::size_t l = 0; l <= K && r.passed(); ++l) {
    if (auto it = even_first.find(odd[l]); it != even_first.end()) {
      r.fail("even and odd windows coincide",
             {{"k", it->second}, {"l", l}, {"window", Word::from_code(odd[l], 7).str()}});
    }
  }
  for (std::size_t k = 0; k <= K && r.passed(); ++k) {
    std::uint64_t e = t.code(2 * k, 7);
    if (!any_match(even_window_patterns(), e))
      r.fail("even window outside its pattern family", {{"k", k}, {"window", Word::from_code(e, 7).str()}});
    else if (!any_match(odd_window_patterns(), odd[k]))
      r.fail("odd window outside its pattern family", {{"l", k}, {"window", Word::from_code(odd[k], 7).str()}});
  }
  r.params["distinct_even_windows"] = even_first.size();
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

}  // namespace pfkit

#pragma once

// The fixed, ordered registry of checks run by `pfkit report`.

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pfkit/dihedral.hpp"
#include "pfkit/dimgroup_checks.hpp"
#include "pfkit/language.hpp"
#include "pfkit/paperfold.hpp"
#include "pfkit/report.hpp"
#include "pfkit/substitution.hpp"

namespace pfkit {

struct Profile {
  std::string name;
  unsigned generation = 12;
  unsigned discrepancy_n = 10;
  std::uint64_t samples = 1000;

  static Profile quick() { return {"quick", 12, 10, 1000}; }
  static Profile full() { return {"full", 20, 20, 10000}; }
  static Profile by_name(std::string_view name) {
    if (name == "quick") return quick();
    if (name == "full") return full();
    throw DomainError("unknown profile: " + std::string(name));
  }
};

struct SuiteOptions {
  Profile profile = Profile::quick();
  std::uint64_t seed = 42;
  bool inject_t4_fault = false;  // negative control for the suite itself
};

/// t_0 .. t_5 as written out by hand.
inline constexpr std::array<std::string_view, 6> kListedWords{
    "1",
    "110",
    "1101100",
    "110110011100100",
    "1101100111001001110110001100100",
    "110110011100100111011000110010011101100111001000110110001100100",
};

/// First 32 symbols of the fixed point of 0 -> 20, 1 -> 21, 2 -> 30, 3 -> 31.
inline constexpr std::string_view kListedFixedPrefix = "31213021312030213121302031203021";

namespace detail {

inline CheckReport start(std::string check, std::string claim) {
  CheckReport r;
  r.check = std::move(check);
  r.claim = std::move(claim);
  return r;
}

/// Binary word of the given length from the seeded stream.
inline Word random_binary_word(std::size_t length, std::uint64_t seed) {
  auto g = stream(seed, 3);
  WordBuilder b(Alphabet::binary(), length);
  for (std::size_t i = 0; i < length; ++i) b.push_back(static_cast<Symbol>(g() >> 63));
  return std::move(b).build();
}

inline CheckReport check_generation(const SuiteOptions& o) {
  auto r = start("paperfold.generation", "t_0..t_5 equal the listed words, t_{n+1} = t_n 1 ^t_n, |t_n|_1 = |t_n|_0 + 1");
  std::vector<std::string> listed(kListedWords.begin(), kListedWords.end());
  if (o.inject_t4_fault) listed[4][10] = listed[4][10] == '1' ? '0' : '1';
  for (unsigned n = 0; n < listed.size() && r.passed(); ++n)
    if (pf_word(n).str() != listed[n]) r.fail("generated word differs from listed word", {{"n", n}, {"generated", pf_word(n).str()}});
  Word t = pf_word(0);
  for (unsigned n = 0; n < o.profile.generation && r.passed(); ++n) {
    if (count(t, 1) != count(t, 0) + 1) r.fail("#1 != #0 + 1", {{"n", n}});
    Word next = pf_word(n + 1);
    if (next != concat(concat(t, Word::from_string("1")), anti_reverse(t))) r.fail("recursion broken", {{"n", n}});
    if (pf_prefix(pf_length(n)) != t) r.fail("prefix of t differs from t_n", {{"n", n}});
    t = std::move(next);
  }
  r.params = {{"listed", listed.size()}, {"generation", o.profile.generation}};
  return r;
}

inline CheckReport check_self_similarity(const SuiteOptions&) {
  auto r = start("paperfold.self_similarity", "t_{p+n+1} = t_p x_1 ^t_p x_2 t_p ... with x = t_n");
  std::size_t cases = 0;
  auto run = [&](unsigned p, unsigned n) {
    ++cases;
    auto c = verify_self_similarity(p, n);
    if (!c.passed()) r.fail(c.reason, {{"p", p}, {"n", n}, {"detail", c.witness}});
  };
  for (unsigned p = 0; p <= 11; ++p)
    for (unsigned n = 0; p + n + 1 <= 12; ++n) run(p, n);
  run(1, 10);
  run(3, 8);
  r.params = {{"max_total", 12}, {"extra", Json::array({Json::array({1, 10}), Json::array({3, 8})})}, {"cases", cases}};
  return r;
}

inline CheckReport check_census(const SuiteOptions& o) {
  auto r = census_report(o.profile.generation, 8);
  auto counts = r.params["census"]["counts"];
  for (const char* len : {"2", "4", "6"})
    if (counts.value(len, 0) == 0) r.fail("no anti-palindrome of a length that must occur", {{"length", len}});
  return r;
}

inline CheckReport check_recurrence(const SuiteOptions& o) {
  auto r = start("paperfold.recurrence", "every factor of length 3*2^{p+1} of t contains t_p");
  unsigned p_max = std::min(5u, o.profile.generation - 8);
  for (unsigned p = 0; p <= p_max && r.passed(); ++p) {
    auto c = verify_recurrence(p, p + 8);
    if (!c.passed()) r.fail(c.reason, {{"p", p}, {"detail", c.witness}});
  }
  r.params = {{"p_max", p_max}, {"generation", "p + 8"}};
  return r;
}

inline CheckReport check_aperiodic_suite(const SuiteOptions& o) {
  std::size_t period = o.profile.generation >= 20 ? 4096 : 512;
  auto r = check_aperiodic(pf_length(o.profile.generation), period, period);
  return r;
}

inline CheckReport check_closure_suite(const SuiteOptions& o) {
  auto oracle = LanguageOracle::paperfolding(o.profile.generation, 16);
  return check_closure_under_antireversal(oracle, 16);
}

inline CheckReport check_freeness(const SuiteOptions& o) {
  auto r = freeness_report(LanguageOracle::paperfolding(o.profile.generation, 16));
  if (r.passed() && r.params["certificate"]["antipalindrome_sup"] != 6) r.fail("anti-palindrome supremum is not 6");
  return r;
}

inline CheckReport check_parity(const SuiteOptions& o) {
  std::size_t K = std::min<std::size_t>(100000, (pf_length(o.profile.generation) - 8) / 2);
  return parity_class_separation(K, o.profile.generation);
}

inline CheckReport check_phi_sigma_windows(const SuiteOptions& o) {
  auto r = start("dihedral.phi_sigma_windows", "no window of t of width 2K >= 8 is fixed by phi sigma; width-2K windows agree with anti-palindromes");
  unsigned gen = std::min(o.profile.generation, 16u);
  Word t = pf_word(gen);
  std::size_t fixed_by_width[5] = {0, 0, 0, 0, 0};
  for (std::size_t K = 1; K <= 4; ++K) {
    for (std::size_t start = 0; start + 2 * K <= t.size() && r.passed(); ++start) {
      Window x{t.substr(start, 2 * K), 1 - static_cast<std::int64_t>(K)};
      bool fixed = is_phi_sigma_fixed_window(x);
      if (fixed != is_anti_palindrome(x.word)) r.fail("window test disagrees with anti-palindrome test", {{"start", start}, {"K", K}});
      if (fixed) ++fixed_by_width[K];
    }
  }
  if (fixed_by_width[4] != 0) r.fail("width-8 window fixed by phi sigma", {{"count", fixed_by_width[4]}});
  r.params = {{"generation", gen},
              {"fixed_windows", {{"2", fixed_by_width[1]}, {"4", fixed_by_width[2]}, {"6", fixed_by_width[3]}, {"8", fixed_by_width[4]}}}};
  return r;
}

inline CheckReport check_extend(const SuiteOptions& o) {
  return left_extension_report(std::min(o.profile.generation, 14u), pf_word(3), 8, 32);
}

inline CheckReport check_negative_controls(const SuiteOptions& o) {
  auto r = start("dihedral.negative_controls", "checks reject the all-ones word, a random word, and a non-recurrent word");
  Json observed = Json::object();
  Word ones = Word::from_string(std::string(1024, '1'));
  LanguageOracle ones_oracle(ones, 16);
  auto closure = check_closure_under_antireversal(ones_oracle, 16);
  observed["all_ones_closure"] = std::string(to_string(closure.status));
  if (closure.status != Status::fail) r.fail("all-ones oracle passed closure");

  Word noise = random_binary_word(std::size_t{1} << 16, o.seed);
  LanguageOracle noise_oracle(noise, 8);
  auto cert = freeness_certificate(noise_oracle);
  observed["random_word_freeness"] = std::string(to_string(cert.verdict));
  observed["random_word_length8_antipalindromes"] = cert.antipalindrome_counts[8];
  if (cert.verdict == Status::pass) r.fail("random word passed the freeness certificate");
  else if (cert.antipalindrome_counts[8] == 0) r.fail("random word has no length-8 anti-palindromes");

  auto v = find_eventual_period(ones, 4, 4);
  observed["all_ones_period"] = v ? Json(v->period) : Json(nullptr);
  if (!v || v->period != 1) r.fail("constant word not reported with period 1");

  // 1 0^20 has no left extension once the extension has absorbed the 1.
  Word tail = Word::from_string("1" + std::string(20, '0'));
  LanguageOracle tail_oracle(tail, 64);
  bool failed = false;
  try {
    left_extend(tail_oracle, Word::from_string("00"), 30, 24);
  } catch (const ExtensionFailure&) {
    failed = true;
  }
  observed["non_recurrent_extension_failed"] = failed;
  if (!failed) r.fail("left extension over a non-recurrent word did not fail");
  r.params = {{"observed", observed}};
  return r;
}

inline CheckReport check_subst_structure(const SuiteOptions&) {
  auto r = start("subst.structure", "the substitution is primitive (n = 3), left-proper (p = 2, letter 3), with abelianization M");
  auto s = Substitution::paperfolding();
  auto prim = is_primitive(s, 10);
  auto proper = is_left_proper(s, 10);
  r.params = {{"primitive", prim ? Json(*prim) : Json(nullptr)},
              {"left_proper", proper ? Json{{"power", proper->power}, {"letter", proper->letter}} : Json(nullptr)},
              {"abelianization", abelianization(s).to_json()}};
  if (prim != 3u) r.fail("primitivity exponent is not 3");
  if (!proper || proper->power != 2 || proper->letter != 3) r.fail("left-properness is not (2, 3)");
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (abelianization(s).at(i, j) != substitution_matrix().at(i, j)) r.fail("abelianization differs from M", {{"row", i}, {"col", j}});
  Word fixed = fixed_prefix(s, kListedFixedPrefix.size());
  r.params["fixed_prefix"] = fixed.str();
  if (fixed.str() != kListedFixedPrefix) r.fail("fixed point prefix differs from the listed one");
  return r;
}

inline std::size_t recoding_length(const SuiteOptions& o) { return std::size_t{1} << (o.profile.generation - 2); }

inline CheckReport check_recoding(const SuiteOptions& o) { return verify_recoding(recoding_length(o)); }
inline CheckReport check_intertwining(const SuiteOptions& o) { return verify_intertwining(2 * recoding_length(o)); }
inline CheckReport check_matpow(const SuiteOptions&) { return verify_matpow(20, 12); }
inline CheckReport check_lattice(const SuiteOptions& o) { return verify_lattice(12, o.profile.samples, o.seed); }
inline CheckReport check_cone(const SuiteOptions& o) { return verify_cone(o.profile.samples * 10, o.seed); }
inline CheckReport check_involution(const SuiteOptions& o) { return verify_involution(o.profile.samples, o.seed); }
inline CheckReport check_discrepancy(const SuiteOptions& o) { return verify_unbounded_discrepancy(o.profile.discrepancy_n); }
inline CheckReport check_torsion(const SuiteOptions& o) { return verify_torsion(o.profile.samples, o.seed); }

}  // namespace detail

struct RegisteredCheck {
  std::string id;
  std::function<CheckReport(const SuiteOptions&)> run;
};

inline const std::vector<RegisteredCheck>& check_registry() {
  static const std::vector<RegisteredCheck> r{
      {"paperfold.generation", detail::check_generation},
      {"paperfold.self_similarity", detail::check_self_similarity},
      {"paperfold.census", detail::check_census},
      {"paperfold.recurrence", detail::check_recurrence},
      {"paperfold.aperiodic", detail::check_aperiodic_suite},
      {"dihedral.closure", detail::check_closure_suite},
      {"dihedral.freeness", detail::check_freeness},
      {"dihedral.parity", detail::check_parity},
      {"dihedral.phi_sigma_windows", detail::check_phi_sigma_windows},
      {"dihedral.extend", detail::check_extend},
      {"dihedral.negative_controls", detail::check_negative_controls},
      {"subst.structure", detail::check_subst_structure},
      {"subst.recoding", detail::check_recoding},
      {"subst.intertwining", detail::check_intertwining},
      {"dimgroup.matpow", detail::check_matpow},
      {"dimgroup.lattice", detail::check_lattice},
      {"dimgroup.cone", detail::check_cone},
      {"dimgroup.involution", detail::check_involution},
      {"dimgroup.discrepancy", detail::check_discrepancy},
      {"dimgroup.torsion", detail::check_torsion},
  };
  return r;
}

/// Runs one registered check; exceptions become reports with status error.
inline CheckReport run_check(const RegisteredCheck& c, const SuiteOptions& o) {
  Stopwatch clock;
  CheckReport r;
  try {
    r = c.run(o);
  } catch (const std::exception& e) {
    r = CheckReport{};
    r.status = Status::error;
    r.reason = e.what();
  }
  r.check = c.id;
  r.seed = o.seed;
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

inline std::vector<CheckReport> run_all(const SuiteOptions& o) {
  std::vector<CheckReport> out;
  for (const auto& c : check_registry()) out.push_back(run_check(c, o));
  return out;
}

/// 0 when everything passed, 2 if any check errored, 1 otherwise.
inline int exit_code(const std::vector<CheckReport>& reports) {
  bool error = false, bad = false;
  for (const auto& r : reports) {
    error |= r.status == Status::error;
    bad |= r.status != Status::pass;
  }
  return error ? 2 : bad ? 1 : 0;
}

enum class ReportFormat { json, markdown };

inline std::string emit_report(const std::vector<CheckReport>& reports, ReportFormat format) {
  if (format == ReportFormat::json) {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "| check | status | statement | detail | ms |\n";
  out << "|---|---|---|---|---|\n";
  auto cell = [](std::string s) {
    std::string esc;
    for (char c : s) {
      if (c == '|') esc += "\\|";
      else if (c == '\n') esc += ' ';
      else esc += c;
    }
    return esc;
  };
  for (const auto& r : reports) {
    out << "| " << r.check << " | " << to_string(r.status) << " | " << cell(r.claim) << " | " << cell(r.reason) << " | "
        << r.elapsed_ms << " |\n";
  }
  return out.str();
}

}  // namespace pfkit

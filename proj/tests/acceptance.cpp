// Acceptance run: one PASS/FAIL line per criterion, each with its runtime
// limit. Exits non-zero if any criterion fails.

#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "pfkit/pfkit.hpp"

using namespace pfkit;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;  // 0 means no runtime bound
  std::function<void(Outcome&)> body;
};

std::string run_command(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  status = pclose(pipe);
  return out;
}

Json strip_elapsed(Json j) {
  for (auto& r : j) r.erase("elapsed_ms");
  return j;
}

std::vector<Criterion> criteria() {
  std::vector<Criterion> c;

  c.push_back({1, "generation fidelity: t_0..t_5 equal the listed words", 0.001, [](Outcome& o) {
                 for (unsigned n = 0; n < kListedWords.size(); ++n)
                   o.require(pf_word(n).str() == kListedWords[n], "t_" + std::to_string(n) + " differs");
               }});

  c.push_back({2, "self-similarity for p+n+1 <= 12 and (1,10), (3,8)", 5.0, [](Outcome& o) {
                 for (unsigned p = 0; p <= 11; ++p)
                   for (unsigned n = 0; p + n + 1 <= 12; ++n)
                     o.require(verify_self_similarity(p, n).passed(), "fails at p=" + std::to_string(p) + " n=" + std::to_string(n));
                 o.require(verify_self_similarity(1, 10).passed(), "fails at (1,10)");
                 o.require(verify_self_similarity(3, 8).passed(), "fails at (3,8)");
               }});

  c.push_back({3, "anti-palindrome census at generation 20, max_len 8", 30.0, [](Outcome& o) {
                 auto census = antipalindrome_census(20, 8);
                 o.require(census.saturated, "not saturated");
                 o.require(census.counts.at(8) == 0, "length-8 anti-palindrome present");
                 for (std::size_t len : {2, 4, 6}) o.require(census.counts.at(len) >= 1, "no anti-palindrome of length " + std::to_string(len));
                 o.note = o.ok ? "counts " + census.to_json()["counts"].dump() : o.note;
               }});

  c.push_back({4, "anti-reversal closure up to length 16 at generation 20", 60.0, [](Outcome& o) {
                 auto r = check_closure_under_antireversal(LanguageOracle::paperfolding(20, 16), 16);
                 o.require(r.passed(), "status " + std::string(to_string(r.status)) + ": " + r.reason);
               }});

  c.push_back({5, "recurrence windows 3*2^{p+1} for p <= 5 at generation p+8", 30.0, [](Outcome& o) {
                 for (unsigned p = 0; p <= 5; ++p) o.require(verify_recurrence(p, p + 8).passed(), "fails at p=" + std::to_string(p));
               }});

  c.push_back({6, "parity separation and pattern families at K = 10^5 (generation 18)", 10.0, [](Outcome& o) {
                 auto r = parity_class_separation(100000, 18);
                 o.require(r.passed(), r.reason);
               }});

  c.push_back({7, "block code of t[0,2^19) equals r[0,2^18); intertwining on the same prefix", 10.0, [](Outcome& o) {
                 Word x = pf_prefix(std::size_t{1} << 19);
                 o.require(block_code(x) == fixed_prefix(Substitution::paperfolding(), std::size_t{1} << 18), "recoding mismatch");
                 o.require(verify_intertwining(x).passed(), "intertwining mismatch");
               }});

  c.push_back({8, "substitution structure: primitive 3, left-proper (2, 3), matrix M, prefix of r", 1.0, [](Outcome& o) {
                 auto s = Substitution::paperfolding();
                 o.require(is_primitive(s, 10) == 3u, "primitivity exponent");
                 auto lp = is_left_proper(s, 10);
                 o.require(lp && lp->power == 2 && lp->letter == 3, "left-properness");
                 AbelianMatrix m{4, {1, 0, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1}};
                 o.require(abelianization(s) == m, "abelianization");
                 o.require(fixed_prefix(s, 32).str() == kListedFixedPrefix, "fixed point prefix");
               }});

  c.push_back({9, "M^{n+2} equals the closed form for n = 0..20", 1.0, [](Outcome& o) {
                 for (unsigned n = 0; n <= 20; ++n)
                   o.require(mat_pow(substitution_matrix(), n + 2) == closed_form_power(n), "mismatch at n=" + std::to_string(n));
               }});

  c.push_back({10, "lattice properties on 10^4 samples per index 2..12", 60.0, [](Outcome& o) {
                  auto r = verify_lattice(12, 10000, 42);
                  o.require(r.passed(), r.reason + " " + r.witness.dump());
                  o.note = o.ok ? "discrepancies " + r.params["discrepancies"].dump() : o.note;
                }});

  c.push_back({11, "cone identity on the dyadic grid with witnesses; unit (4,0) -> (1,0)", 10.0, [](Outcome& o) {
                  auto r = verify_cone(100000, 42);
                  o.require(r.passed(), r.reason + " " + r.witness.dump());
                  o.note = o.ok ? "points " + r.params["points_checked"].dump() : o.note;
                }});

  c.push_back({12, "involution algebra for 10^3 random dyadic a", 5.0, [](Outcome& o) {
                  auto r = verify_involution(1000, 42);
                  o.require(r.passed(), r.reason + " " + r.witness.dump());
                }});

  c.push_back({13, "discrepancy n+1 at m_n for n <= 20; coboundary sums <= 2", 10.0, [](Outcome& o) {
                  o.require(m_sequence(20) + 1 < (std::uint64_t{1} << 22), "prefix bound");
                  auto r = verify_unbounded_discrepancy(20);
                  o.require(r.passed(), r.reason + " " + r.witness.dump());
                }});

  c.push_back({14, "negative controls", 0.0, [](Outcome& o) {
                  LanguageOracle ones(Word::from_string(std::string(1024, '1')), 16);
                  o.require(check_closure_under_antireversal(ones, 16).status == Status::fail, "all-ones closure did not fail");
                  auto cert = freeness_certificate(LanguageOracle(detail::random_binary_word(std::size_t{1} << 16, 42), 8));
                  o.require(cert.verdict == Status::fail && cert.antipalindrome_counts.at(8) > 0, "random word certificate did not fail at length 8");
                  SuiteOptions faulty;
                  faulty.inject_t4_fault = true;
                  auto reports = run_all(faulty);
                  std::size_t fails = 0;
                  for (const auto& r : reports) fails += r.status == Status::fail;
                  o.require(fails >= 1, "mutated t_4 tripped no check");
                }});

  c.push_back({15, "determinism of `pfkit report --profile quick --seed 42`", 0.0, [](Outcome& o) {
                  std::string cmd = std::string("\"") + PFKIT_CLI_PATH + "\" report --profile quick --seed 42";
                  int s1 = 0, s2 = 0;
                  std::string a = run_command(cmd, s1), b = run_command(cmd, s2);
                  o.require(s1 == 0 && s2 == 0, "report exited non-zero");
                  try {
                    Json ja = Json::parse(a), jb = Json::parse(b);
                    o.require(strip_elapsed(ja) == strip_elapsed(jb), "outputs differ outside elapsed_ms");
                    o.require(ja.size() >= 12, "fewer than 12 checks");
                  } catch (const std::exception& e) {
                    o.require(false, std::string("unparseable output: ") + e.what());
                  }
                }});
  return c;
}

}  // namespace

int main() {
  int failures = 0;
  for (const auto& c : criteria()) {
    Outcome o;
    Stopwatch clock;
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = clock.elapsed_seconds();
    std::ostringstream timing;
    timing.precision(3);
    timing << std::fixed << secs << " s";
    if (c.limit_seconds > 0) {
      timing << " (limit " << c.limit_seconds << " s)";
      if (secs >= c.limit_seconds) o.require(false, "runtime limit exceeded");
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << "  [" << timing.str() << "]";
    if (!o.note.empty()) std::cout << "  " << o.note;
    std::cout << "\n";
    failures += o.ok ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " acceptance criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "oracles.hpp"
#include "pfkit/dihedral.hpp"
#include "pfkit/suite.hpp"

using namespace pfkit;

namespace {

Word W(const std::string& s) { return Word::from_string(s); }

const LanguageOracle& t_oracle() {
  static const LanguageOracle o = LanguageOracle::paperfolding(16, 24);
  return o;
}

}  // namespace

TEST(Oracle, FactorCountsMatchBruteForce) {
  std::string t12 = oracle::pf(12);
  auto o = LanguageOracle::paperfolding(12, 16);
  for (std::size_t n = 1; n <= 16; ++n) {
    EXPECT_EQ(o.factors(n).size(), oracle::factors(t12, n).size()) << "n = " << n;
    EXPECT_TRUE(o.saturated(n));
  }
  // Pinned from the brute-force scan.
  EXPECT_EQ(factor_set(pf_word(12), 8).size(), 32u);
  EXPECT_EQ(o.saturated_through(), 16u);
  EXPECT_THROW(o.factors(17), DomainError);
}

TEST(Closure, ShortAndLongRanges) {
  EXPECT_TRUE(check_closure_under_antireversal(t_oracle(), 1).passed());
  EXPECT_TRUE(check_closure_under_antireversal(t_oracle(), 16).passed());
  LanguageOracle ones(W(std::string(100, '1')), 8);
  auto r = check_closure_under_antireversal(ones, 8);
  ASSERT_EQ(r.status, Status::fail);
  EXPECT_EQ(r.witness["factor"], "1");
}

TEST(Closure, UnsaturatedIsInconclusive) {
  LanguageOracle small(pf_word(4), 16);
  EXPECT_EQ(check_closure_under_antireversal(small, 16).status, Status::inconclusive);
}

TEST(PhiSigmaWindow, Examples) {
  EXPECT_TRUE(is_phi_sigma_fixed_window(Window{W("10"), 0}));
  EXPECT_FALSE(is_phi_sigma_fixed_window(Window{W("11"), 0}));
  EXPECT_THROW(is_phi_sigma_fixed_window(Window{W("10"), 1}), DomainError);
  EXPECT_THROW(is_phi_sigma_fixed_window(Window{W("101"), -1}), DomainError);
}

TEST(PhiSigmaWindow, AgreesWithAntiPalindromeTest) {
  std::mt19937_64 g(1);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t K = 1 + g() % 20;
    std::string s;
    for (std::size_t i = 0; i < 2 * K; ++i) s += static_cast<char>('0' + g() % 2);
    if (g() % 3 == 0) s = s.substr(0, K) + oracle::anti_reverse(s.substr(0, K));
    Window x{W(s), 1 - static_cast<std::int64_t>(K)};
    ASSERT_EQ(is_phi_sigma_fixed_window(x), oracle::is_anti_palindrome(s));
  }
}

TEST(PhiSigmaWindow, NoWideWindowOfT) {
  Word t = pf_word(14);
  for (std::size_t start = 0; start + 8 <= t.size(); ++start)
    ASSERT_FALSE(is_phi_sigma_fixed_window(Window{t.substr(start, 8), -3}));
}

TEST(LeftExtend, ZeroStepsKeepsSeed) {
  Word seed = pf_word(3);
  EXPECT_EQ(left_extend(t_oracle(), seed, 0, 8), seed);
}

TEST(LeftExtend, ResultStaysInLanguage) {
  auto o = LanguageOracle::paperfolding(14, 56);
  Word seed = pf_word(3);
  Word out = left_extend(o, seed, 8, 32);
  ASSERT_EQ(out.size(), seed.size() + 8);
  EXPECT_EQ(out.drop(8), seed);
  std::string t = oracle::pf(14);
  for (std::size_t k = 1; k <= 32; ++k)
    for (std::size_t i = 0; i + k <= out.size(); ++i)
      ASSERT_NE(t.find(out.substr(i, k).str()), std::string::npos);
  EXPECT_TRUE(left_extension_report(14, seed, 8, 32).passed());
}

TEST(LeftExtend, NonRecurrentWordGetsStuck) {
  LanguageOracle o(W("1" + std::string(20, '0')), 64);
  try {
    left_extend(o, W("00"), 30, 24);
    FAIL() << "expected an extension failure";
  } catch (const ExtensionFailure& e) {
    EXPECT_EQ(e.stuck().str(), "1" + std::string(20, '0'));
  }
  EXPECT_THROW(left_extend(t_oracle(), W("0000"), 1, 4), DomainError);
  EXPECT_THROW(left_extend(t_oracle(), W("1"), 20, 10), DomainError);
}

TEST(Freeness, CertificateForT) {
  auto cert = freeness_certificate(t_oracle());
  EXPECT_EQ(cert.verdict, Status::pass);
  EXPECT_EQ(cert.antipalindrome_sup, 6u);
  EXPECT_EQ(cert.antipalindrome_counts.at(8), 0u);
  EXPECT_EQ(cert.closure_checked_to, 24u);
  // Consistency with the census on the same word.
  auto census = antipalindrome_census(16, 8);
  for (auto [len, k] : census.counts) EXPECT_EQ(cert.antipalindrome_counts.at(len), k);
}

TEST(Freeness, NegativeControls) {
  LanguageOracle ones(W(std::string(1000, '1')), 16);
  EXPECT_EQ(freeness_certificate(ones).verdict, Status::fail);
  Word noise = detail::random_binary_word(std::size_t{1} << 16, 42);
  auto cert = freeness_certificate(LanguageOracle(noise, 8));
  EXPECT_EQ(cert.verdict, Status::fail);
  EXPECT_GT(cert.antipalindrome_counts.at(8), 0u);
  EXPECT_EQ(freeness_certificate(LanguageOracle(pf_word(3), 8)).verdict, Status::inconclusive);
}

TEST(Parity, FirstWindowsDiffer) {
  Word t = pf_word(3);
  EXPECT_EQ(t.substr(0, 7).str(), "1101100");
  EXPECT_EQ(t.substr(1, 7).str(), "1011001");
}

TEST(Parity, SeparationScan) {
  auto r = parity_class_separation(10000, 16);
  EXPECT_TRUE(r.passed());
  // Pinned from an independent scan of the first 10^4 + 1 even windows.
  EXPECT_EQ(r.params["distinct_even_windows"], 12);
  EXPECT_THROW(parity_class_separation(100000, 16), DomainError);
}

TEST(Parity, PatternFamiliesAgainstStrings) {
  std::string t = oracle::pf(14);
  auto matches = [](const std::string& pattern, const std::string& w) {
    for (std::size_t i = 0; i < 7; ++i)
      if ((pattern[i] == '0' || pattern[i] == '1') && pattern[i] != w[i]) return false;
    return true;
  };
  for (std::size_t k = 0; 2 * k + 8 <= t.size(); ++k) {
    std::string e = t.substr(2 * k, 7), o = t.substr(2 * k + 1, 7);
    bool in_even = false, in_odd = false;
    for (const auto& p : even_window_patterns()) in_even |= matches(p.text, e);
    for (const auto& p : odd_window_patterns()) in_odd |= matches(p.text, o);
    ASSERT_TRUE(in_even) << e;
    ASSERT_TRUE(in_odd) << o;
    bool cross = false;
    for (const auto& p : odd_window_patterns()) cross |= matches(p.text, e);
    ASSERT_FALSE(cross) << "even window " << e << " matches an odd pattern";
  }
}

TEST(Parity, WindowDistanceBound) {
  // Any even-shift and odd-shift window over [-7, 7] differ within |j| <= 7.
  Word t = pf_word(12);
  for (std::size_t k = 4; k < 300; ++k)
    for (std::size_t l = 4; l < 300; ++l) {
      auto d = window_distance(Window::centered(t, 2 * k, 7), Window::centered(t, 2 * l + 1, 7));
      ASSERT_FALSE(d.agrees_on_range());
      ASSERT_LE(*d.exponent, 7u);
    }
}

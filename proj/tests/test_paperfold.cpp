#include <gtest/gtest.h>

#include <string>

#include "oracles.hpp"
#include "pfkit/paperfold.hpp"

using namespace pfkit;

namespace {

const char* kListed[] = {
    "1",
    "110",
    "1101100",
    "110110011100100",
    "1101100111001001110110001100100",
    "110110011100100111011000110010011101100111001000110110001100100",
};

}  // namespace

TEST(PositionFormula, AgreesWithRecursionBeforeUse) {
  std::string t16 = oracle::pf(16);
  ASSERT_EQ(oracle::pf_closed_form(t16.size()), t16);
}

TEST(Paperfold, ListedGenerations) {
  for (unsigned n = 0; n < 6; ++n) {
    EXPECT_EQ(pf_word(n).str(), kListed[n]) << "n = " << n;
    EXPECT_EQ(oracle::pf(n), kListed[n]);
  }
  EXPECT_THROW(pf_word(kMaxGeneration + 1), ResourceError);
}

TEST(Paperfold, RecursionAndBalance) {
  for (unsigned n = 0; n < 23; ++n) {
    Word t = pf_word(n);
    ASSERT_EQ(t.size(), pf_length(n));
    ASSERT_EQ(count(t, 1), count(t, 0) + 1);
    ASSERT_EQ(pf_word(n + 1), concat(concat(t, Word::from_string("1")), anti_reverse(t)));
    ASSERT_EQ(pf_prefix(pf_length(n)), t);
  }
}

TEST(Paperfold, Prefixes) {
  EXPECT_EQ(pf_prefix(0).str(), "");
  EXPECT_EQ(pf_prefix(15).str(), "110110011100100");
  std::size_t L = std::size_t{1} << 20;
  EXPECT_EQ(pf_prefix(L).str(), oracle::pf_closed_form(L));
  EXPECT_THROW(pf_prefix(pf_length(kMaxGeneration) + 1), ResourceError);
}

TEST(Paperfold, SelfSimilarity) {
  for (unsigned p = 0; p <= 11; ++p)
    for (unsigned n = 0; p + n + 1 <= 12; ++n) EXPECT_TRUE(verify_self_similarity(p, n).passed()) << p << "," << n;
  EXPECT_EQ(interleave_blocks(pf_word(1), pf_word(1)).str(), "110" "1" "100" "1" "110" "0" "100");
  EXPECT_THROW(verify_self_similarity(12, 12), ResourceError);
}

TEST(Paperfold, CensusMatchesBruteForce) {
  auto c = antipalindrome_census(12, 8);
  auto expected = oracle::census(oracle::pf(12), 8);
  EXPECT_TRUE(c.saturated);
  for (auto [len, k] : expected) EXPECT_EQ(c.counts.at(len), k) << "length " << len;
  // Pinned from the brute-force count above.
  EXPECT_EQ(c.counts.at(2), 2u);
  EXPECT_EQ(c.counts.at(4), 2u);
  EXPECT_EQ(c.counts.at(6), 1u);
  EXPECT_EQ(c.counts.at(8), 0u);
  EXPECT_GE(antipalindrome_census(12, 2).counts.at(2), 1u);
  EXPECT_THROW(antipalindrome_census(12, 7), DomainError);
  EXPECT_THROW(antipalindrome_census(2, 8), DomainError);
  EXPECT_FALSE(antipalindrome_census(5, 8).saturated);
}

TEST(Paperfold, CensusReport) {
  EXPECT_TRUE(census_report(12, 8).passed());
  EXPECT_EQ(census_report(5, 8).status, Status::inconclusive);
}

TEST(Paperfold, Recurrence) {
  EXPECT_TRUE(verify_recurrence(0, 4).passed());
  EXPECT_TRUE(verify_recurrence(3, 11).passed());
  EXPECT_TRUE(verify_recurrence(5, 13).passed());
  EXPECT_THROW(verify_recurrence(3, 6), DomainError);
}

TEST(Paperfold, RecurrenceWindowIsTight) {
  // A window of length 3 * 2^{p+1} always contains t_p; the largest gap the
  // scan records must stay below the window length minus |t_p|.
  for (unsigned p = 0; p <= 4; ++p) {
    auto r = verify_recurrence(p, p + 8);
    ASSERT_TRUE(r.passed());
    EXPECT_LE(r.params["max_offset_to_occurrence"].get<std::size_t>() + pf_length(p), 3 * (std::size_t{2} << p));
  }
}

TEST(Paperfold, Aperiodic) {
  EXPECT_TRUE(check_aperiodic(std::size_t{1} << 14, 512, 512).passed());
  EXPECT_TRUE(check_aperiodic(std::size_t{1} << 16, 4096, 4096).passed());
  auto r = check_aperiodic(Word::from_string(std::string(200, '1')), 8, 8);
  ASSERT_EQ(r.status, Status::fail);
  EXPECT_EQ(r.witness["period"], 1);
  EXPECT_EQ(r.witness["cut"], 0);
  auto v = find_eventual_period(Word::from_string("0001" + std::string(100, '0') + "10101010101010101010"), 8, 104);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->period, 2u);
  EXPECT_EQ(v->cut, 103u);
  EXPECT_THROW(check_aperiodic(100, 60, 0), DomainError);
}

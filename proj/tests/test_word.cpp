#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "pfkit/pfw.hpp"
#include "pfkit/word.hpp"

using namespace pfkit;

namespace {

Word W(const std::string& s) { return Word::from_string(s); }
Word Q(const std::string& s) { return Word::from_string(s, Alphabet::quaternary()); }

std::string random_string(std::mt19937_64& g, std::size_t n, unsigned alphabet) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += static_cast<char>('0' + g() % alphabet);
  return s;
}

}  // namespace

TEST(Word, RoundTripsThroughStrings) {
  EXPECT_EQ(W("1101100").str(), "1101100");
  EXPECT_EQ(Q("31213021").str(), "31213021");
  EXPECT_TRUE(W("").empty());
  EXPECT_THROW(W("102"), DomainError);
  EXPECT_THROW(Q("4"), DomainError);
  EXPECT_THROW(W("1x"), DomainError);
}

TEST(Word, ConcatAndSegment) {
  EXPECT_EQ(concat(W("110"), W("1100")).str(), "1101100");
  EXPECT_EQ(concat(W(""), W("10")).str(), "10");
  EXPECT_EQ(concat(Q("31"), Q("21")).str(), "3121");
  EXPECT_THROW(concat(W("1"), Q("1")), DomainError);
  EXPECT_EQ(segment(W("1101100"), 0, 2).str(), "110");
  EXPECT_EQ(segment(W("110110011100100"), 0, 6).str(), "1101100");
  EXPECT_EQ(segment(W("1101100"), 3, 3).str(), "1");
  EXPECT_THROW(segment(W("1101100"), 3, 7), DomainError);
  EXPECT_THROW(segment(W("1101100"), 4, 3), DomainError);
}

TEST(Word, Counts) {
  EXPECT_EQ(count(W("1101100"), 1), 4u);
  EXPECT_EQ(count(W("1101100"), 0), 3u);
  EXPECT_EQ(count(W(""), 1), 0u);
  Word t5 = W("110110011100100111011000110010011101100111001000110110001100100");
  EXPECT_EQ(count(t5, 1) - count(t5, 0), 1u);
  EXPECT_THROW(count(W("1"), 2), DomainError);
  EXPECT_EQ(count(Q("3121302131203021"), 3), 4u);
}

TEST(Word, AntiReversal) {
  EXPECT_EQ(anti_reverse(W("110")).str(), "100");
  EXPECT_EQ(anti_reverse(W("")).str(), "");
  EXPECT_EQ(anti_reverse(W("10")).str(), "10");
  EXPECT_THROW(anti_reverse(Q("10")), DomainError);
  EXPECT_TRUE(is_anti_palindrome(W("10")));
  EXPECT_FALSE(is_anti_palindrome(W("11")));
  EXPECT_FALSE(is_anti_palindrome(W("101")));
  EXPECT_THROW(is_anti_palindrome(Q("10")), DomainError);
}

TEST(Word, FactorSets) {
  auto f = factor_set(W("110"), 2);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_TRUE(f.count(W("11")));
  EXPECT_TRUE(f.count(W("10")));
  EXPECT_THROW(factor_set(W("110"), 0), DomainError);
  EXPECT_TRUE(factor_set(W("110"), 4).empty());
}

TEST(Word, WindowDistance) {
  Window a{W("0000000"), -3}, b{W("0001000"), -3}, c{W("1000001"), -3};
  EXPECT_EQ(window_distance(a, b).exponent, 0u);
  EXPECT_EQ(window_distance(a, c).exponent, 3u);
  EXPECT_TRUE(window_distance(a, a).agrees_on_range());
  Window wide_a{W(std::string(15, '0')), -7};
  Window wide_b{W("1" + std::string(14, '0')), -7};
  EXPECT_EQ(window_distance(wide_a, wide_b).value(), 1.0 / 128);
  EXPECT_THROW(window_distance(a, Window{W("00000"), -2}), DomainError);
  EXPECT_THROW(window_distance(a, Window{W("0000000"), -2}), DomainError);
}

// Randomized agreement with the string oracle, across limb boundaries.
TEST(WordProperty, MatchesStringOracle) {
  std::mt19937_64 g(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = g() % 300;
    std::string s = random_string(g, n, 2);
    Word w = W(s);
    ASSERT_EQ(w.str(), s);
    ASSERT_EQ(anti_reverse(w).str(), oracle::anti_reverse(s));
    ASSERT_EQ(is_anti_palindrome(w), oracle::is_anti_palindrome(s) || s.empty());
    ASSERT_EQ(anti_reverse(anti_reverse(w)), w);
    std::size_t ones = 0;
    for (char c : s) ones += c == '1';
    ASSERT_EQ(count(w, 1), ones);
    ASSERT_EQ(count(w, 0) + count(w, 1), n);
    if (n > 0) {
      std::size_t a = g() % n, b = a + g() % (n - a);
      ASSERT_EQ(segment(w, a, b).str(), s.substr(a, b - a + 1));
      std::size_t len = 1 + g() % std::min<std::size_t>(n, 64);
      auto codes = factor_codes(w, len);
      auto expected = oracle::factors(s, len);
      ASSERT_EQ(codes.size(), expected.size());
      for (auto c : codes) ASSERT_TRUE(expected.count(Word::from_code(c, len).str()));
      std::size_t pos = g() % (n - len + 1);
      ASSERT_EQ(Word::from_code(w.code(pos, len), len).str(), s.substr(pos, len));
    }
    std::string s2 = random_string(g, g() % 200, 2);
    ASSERT_EQ(concat(w, W(s2)).str(), s + s2);
    ASSERT_EQ(W(s) < W(s2), s < s2);
  }
}

TEST(WordProperty, QuaternaryMatchesStringOracle) {
  std::mt19937_64 g(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::string s = random_string(g, 1 + g() % 200, 4);
    Word w = Q(s);
    ASSERT_EQ(w.str(), s);
    for (Symbol a = 0; a < 4; ++a) {
      std::size_t k = 0;
      for (char c : s) k += c == '0' + a;
      ASSERT_EQ(count(w, a), k);
    }
    std::size_t len = 1 + g() % std::min<std::size_t>(s.size(), 32);
    ASSERT_EQ(factor_codes(w, len).size(), oracle::factors(s, len).size());
  }
}

TEST(WordProperty, FindAllAndMismatch) {
  std::mt19937_64 g(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::string text = random_string(g, 50 + g() % 400, 2);
    std::string pat = random_string(g, 1 + g() % 80, 2);
    if (g() % 2 && pat.size() < text.size()) pat = text.substr(g() % (text.size() - pat.size()), pat.size());
    std::vector<std::size_t> expected;
    for (std::size_t i = 0; i + pat.size() <= text.size(); ++i)
      if (text.compare(i, pat.size(), pat) == 0) expected.push_back(i);
    ASSERT_EQ(find_all(W(text), W(pat)), expected);
    std::string other = text;
    std::size_t flip = g() % other.size();
    other[flip] = other[flip] == '0' ? '1' : '0';
    ASSERT_EQ(first_mismatch(W(text), W(other)), flip);
    ASSERT_FALSE(first_mismatch(W(text), W(text)).has_value());
  }
}

TEST(Pfw, RoundTrip) {
  std::mt19937_64 g(5);
  for (unsigned alphabet : {2u, 4u}) {
    for (std::size_t n : {0, 1, 7, 8, 9, 63, 64, 65, 1000}) {
      std::string s = random_string(g, n, alphabet);
      Word w = Word::from_string(s, Alphabet(alphabet));
      std::stringstream buf;
      write_pfw(buf, w);
      std::string bytes = buf.str();
      ASSERT_EQ(bytes.size(), 14 + (n * (alphabet == 2 ? 1 : 2) + 7) / 8);
      EXPECT_EQ(bytes.substr(0, 4), "PFW1");
      EXPECT_EQ(bytes[4], 1);
      EXPECT_EQ(static_cast<unsigned>(bytes[5]), alphabet);
      EXPECT_EQ(read_pfw(buf), w);
    }
  }
}

TEST(Pfw, LayoutIsLsbFirst) {
  std::stringstream buf;
  write_pfw(buf, W("110"));
  std::string bytes = buf.str();
  ASSERT_EQ(bytes.size(), 15u);
  EXPECT_EQ(static_cast<unsigned char>(bytes[6]), 3u);  // u64 LE count
  EXPECT_EQ(static_cast<unsigned char>(bytes[14]), 0b011u);
}

TEST(Pfw, RejectsMalformedInput) {
  std::stringstream bad_magic("XXXX");
  EXPECT_THROW(read_pfw(bad_magic), FormatError);
  std::stringstream buf;
  write_pfw(buf, W("1101100111"));
  std::string truncated = buf.str().substr(0, buf.str().size() - 1);
  std::stringstream t(truncated);
  EXPECT_THROW(read_pfw(t), FormatError);
  std::string wrong_version = buf.str();
  wrong_version[4] = 2;
  std::stringstream v(wrong_version);
  EXPECT_THROW(read_pfw(v), FormatError);
}

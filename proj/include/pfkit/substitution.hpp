#pragma once

// Substitutions on the 2- and 4-letter alphabets, their abelianization
// matrices, primitivity and left-properness, fixed points, and the block code
// that recodes binary sequences in pairs (xy -> 2x + y).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfkit/errors.hpp"
#include "pfkit/paperfold.hpp"
#include "pfkit/report.hpp"
#include "pfkit/word.hpp"

namespace pfkit {

class Substitution {
 public:
  Substitution(Alphabet alphabet, std::vector<Word> rules) : alphabet_(alphabet), rules_(std::move(rules)) {
    if (rules_.size() != alphabet_.size()) throw DomainError("substitution must define a rule for every letter");
    for (const auto& w : rules_) {
      if (w.alphabet() != alphabet_) throw DomainError("rule image over the wrong alphabet");
      if (w.empty()) throw DomainError("rule images must be non-empty");
    }
  }

  /// 3 -> 31, 2 -> 30, 1 -> 21, 0 -> 20.
  static Substitution paperfolding() {
    auto q = [](const char* s) { return Word::from_string(s, Alphabet::quaternary()); };
    return Substitution(Alphabet::quaternary(), {q("20"), q("21"), q("30"), q("31")});
  }

  /// {"alphabet": 4, "rules": {"0": "20", "1": "21", "2": "30", "3": "31"}}
  static Substitution from_json(const nlohmann::json& j) {
    try {
      Alphabet a(j.at("alphabet").get<unsigned>());
      const auto& rules = j.at("rules");
      std::vector<Word> images;
      for (unsigned s = 0; s < a.size(); ++s) {
        std::string key = std::to_string(s);
        if (!rules.contains(key)) throw FormatError("missing rule for letter " + key);
        images.push_back(Word::from_string(rules.at(key).get<std::string>(), a));
      }
      if (rules.size() != a.size()) throw FormatError("rules contain letters outside the alphabet");
      return Substitution(a, std::move(images));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("substitution JSON: ") + e.what());
    }
  }

  Json to_json() const {
    Json rules = Json::object();
    for (unsigned s = 0; s < alphabet_.size(); ++s) rules[std::to_string(s)] = rules_[s].str();
    return Json{{"alphabet", alphabet_.size()}, {"rules", rules}};
  }

  Alphabet alphabet() const { return alphabet_; }
  const Word& image(Symbol a) const {
    if (!alphabet_.contains(a)) throw DomainError("letter not in alphabet");
    return rules_[a];
  }

 private:
  Alphabet alphabet_;
  std::vector<Word> rules_;
};

inline Word apply(const Substitution& s, const Word& w) {
  if (w.alphabet() != s.alphabet()) throw DomainError("apply: alphabet mismatch");
  WordBuilder out(s.alphabet(), 2 * w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out.append(s.image(w[i]));
  return std::move(out).build();
}

inline Word apply_power(const Substitution& s, Word w, unsigned n) {
  for (unsigned k = 0; k < n; ++k) w = apply(s, w);
  return w;
}

/// Entry (i, j) counts occurrences of letter j in the image of letter i.
struct AbelianMatrix {
  unsigned size = 0;
  std::vector<std::uint64_t> entries;  // row-major

  std::uint64_t at(unsigned i, unsigned j) const { return entries[i * size + j]; }
  std::uint64_t row_sum(unsigned i) const {
    std::uint64_t s = 0;
    for (unsigned j = 0; j < size; ++j) s += at(i, j);
    return s;
  }
  std::uint64_t column_sum(unsigned j) const {
    std::uint64_t s = 0;
    for (unsigned i = 0; i < size; ++i) s += at(i, j);
    return s;
  }
  Json to_json() const {
    Json rows = Json::array();
    for (unsigned i = 0; i < size; ++i) {
      Json row = Json::array();
      for (unsigned j = 0; j < size; ++j) row.push_back(at(i, j));
      rows.push_back(row);
    }
    return rows;
  }
  friend bool operator==(const AbelianMatrix&, const AbelianMatrix&) = default;
};

inline AbelianMatrix abelianization(const Substitution& s) {
  unsigned k = s.alphabet().size();
  AbelianMatrix m{k, std::vector<std::uint64_t>(k * k, 0)};
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) m.entries[i * k + j] = count(s.image(static_cast<Symbol>(i)), static_cast<Symbol>(j));
  return m;
}

/// Least n <= n_max such that every s^n(a) contains every letter.
/// Letter j occurs in s^n(i) iff the abelianization has a length-n path i -> j,
/// so this works on the 0/1 pattern of the matrix instead of the words.
inline std::optional<unsigned> is_primitive(const Substitution& s, unsigned n_max) {
  if (n_max < 1) throw DomainError("is_primitive: n_max must be at least 1");
  AbelianMatrix m = abelianization(s);
  unsigned k = m.size;
  std::vector<char> step(k * k), reach(k * k);
  for (unsigned i = 0; i < k * k; ++i) step[i] = reach[i] = m.entries[i] > 0;
  for (unsigned n = 1; n <= n_max; ++n) {
    if (std::all_of(reach.begin(), reach.end(), [](char c) { return c != 0; })) return n;
    std::vector<char> next(k * k, 0);
    for (unsigned i = 0; i < k; ++i)
      for (unsigned l = 0; l < k; ++l)
        if (reach[i * k + l])
          for (unsigned j = 0; j < k; ++j) next[i * k + j] |= step[l * k + j];
    reach = std::move(next);
  }
  return std::nullopt;
}

struct LeftProperness {
  unsigned power = 0;
  Symbol letter = 0;
  friend bool operator==(const LeftProperness&, const LeftProperness&) = default;
};

/// Least p <= p_max such that every s^p(a) starts with the same letter. The
/// first letter of s^p(a) is f^p(a) for f(a) = first letter of s(a).
inline std::optional<LeftProperness> is_left_proper(const Substitution& s, unsigned p_max) {
  if (p_max < 1) throw DomainError("is_left_proper: p_max must be at least 1");
  unsigned k = s.alphabet().size();
  std::vector<Symbol> first(k);
  for (unsigned a = 0; a < k; ++a) first[a] = static_cast<Symbol>(a);
  for (unsigned p = 1; p <= p_max; ++p) {
    for (auto& f : first) f = s.image(f)[0];
    if (std::all_of(first.begin(), first.end(), [&](Symbol f) { return f == first[0]; })) return LeftProperness{p, first[0]};
  }
  return std::nullopt;
}

/// First L symbols of the fixed point reached from the common first letter.
inline Word fixed_prefix(const Substitution& s, std::size_t L) {
  unsigned k = s.alphabet().size();
  auto proper = is_left_proper(s, k);
  if (!proper) throw DomainError("fixed_prefix: substitution is not left-proper");
  if (!is_primitive(s, (k - 1) * (k - 1) + 1)) throw DomainError("fixed_prefix: substitution is not primitive");
  if (L > pf_length(kMaxGeneration)) throw ResourceError("fixed_prefix: length beyond resource cap");
  Word w = Word::from_symbols(std::vector<Symbol>{proper->letter}, s.alphabet());
  while (w.size() < L) {
    Word next = apply_power(s, w, proper->power);
    if (next.size() <= w.size() || next.prefix(w.size()) != w) throw DomainError("fixed_prefix: iteration is not prefix-stable");
    w = std::move(next);
  }
  return w.prefix(L);
}

/// Pairs (offset + 2i, offset + 2i + 1) of a binary word into quaternary
/// symbols 2x + y. Offset 0 is the alignment that recodes t into the fixed
/// point of the paper-folding substitution.
inline Word block_code(const Word& x, std::size_t offset = 0) {
  detail::require_binary(x, "block_code");
  if (offset > x.size() || (x.size() - offset) % 2 != 0) throw DomainError("block_code: need an even number of symbols after offset");
  std::size_t n = (x.size() - offset) / 2;
  WordBuilder out(Alphabet::quaternary(), n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(static_cast<Symbol>(2 * x[offset + 2 * i] + x[offset + 2 * i + 1]));
  return std::move(out).build();
}

/// block_code(drop 2) == drop 1 of block_code on the overlap.
inline CheckReport verify_intertwining(const Word& x) {
  Stopwatch clock;
  CheckReport r;
  r.check = "subst.intertwining";
  r.claim = "block_code o shift^2 = shift o block_code";
  r.params = {{"length", x.size()}};
  if (x.size() < 4 || x.size() % 2 != 0) throw DomainError("verify_intertwining: length must be even and at least 4");
  Word lhs = block_code(x.drop(2));
  Word rhs = block_code(x).drop(1);
  if (auto pos = first_mismatch(lhs, rhs)) r.fail("shifted codes disagree", {{"position", *pos}});
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

inline CheckReport verify_intertwining(std::size_t L) {
  if (L < 4 || L % 2 != 0) throw DomainError("verify_intertwining: L must be even and at least 4");
  return verify_intertwining(pf_prefix(L));
}

/// block_code(t[0, 2L)) equals the first L symbols of the substitution fixed point.
inline CheckReport verify_recoding(std::size_t L) {
  Stopwatch clock;
  CheckReport r;
  r.check = "subst.recoding";
  r.claim = "pairing t as xy -> 2x+y yields the fixed point r of the substitution";
  r.params = {{"length", L}};
  Word coded = block_code(pf_prefix(2 * L));
  Word fixed = fixed_prefix(Substitution::paperfolding(), L);
  if (auto pos = first_mismatch(coded, fixed)) r.fail("recoded t differs from r", {{"position", *pos}});
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

}  // namespace pfkit

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pfkit/errors.hpp"
#include "pfkit/paperfold.hpp"
#include "pfkit/word.hpp"

namespace pfkit {

/// Finite approximation of a language by the factors of a stored word.
///
/// Membership is exact for queries up to max_len against the stored word.
/// Length n is marked saturated when the first half of the word already has
/// every length-n factor of the whole word; for t_g the first half is t_{g-1}.
/// Immutable after construction, so concurrent queries are safe.
class LanguageOracle {
 public:
  LanguageOracle(Word source, std::size_t max_len) : source_(std::move(source)), max_len_(max_len) {
    if (max_len_ == 0) throw DomainError("oracle max_len must be positive");
    if (max_len_ > source_.alphabet().max_code_length())
      throw DomainError("oracle max_len exceeds " + std::to_string(source_.alphabet().max_code_length()));
    Word reference = source_.prefix(source_.size() / 2);
    factors_.resize(max_len_ + 1);
    saturated_.assign(max_len_ + 1, false);
    saturated_[0] = true;
    for (std::size_t n = 1; n <= max_len_; ++n) {
      factors_[n] = factor_codes(source_, n);
      saturated_[n] = !factors_[n].empty() && factor_codes(reference, n).size() == factors_[n].size();
    }
  }

  static LanguageOracle paperfolding(unsigned generation, std::size_t max_len) {
    return LanguageOracle(pf_word(generation), max_len);
  }

  const Word& source() const { return source_; }
  Alphabet alphabet() const { return source_.alphabet(); }
  std::size_t max_len() const { return max_len_; }

  std::span<const std::uint64_t> factors(std::size_t n) const {
    check_length(n);
    return factors_[n];
  }

  bool contains_code(std::uint64_t code, std::size_t n) const {
    if (n == 0) return true;
    auto f = factors(n);
    return std::binary_search(f.begin(), f.end(), code);
  }

  bool contains(const Word& v) const {
    if (v.alphabet() != alphabet()) throw DomainError("oracle query: alphabet mismatch");
    if (v.empty()) return true;
    return contains_code(v.code(0, v.size()), v.size());
  }

  bool saturated(std::size_t n) const {
    check_length(n);
    return saturated_[n];
  }

  /// Largest L <= max_len with every length 1..L saturated.
  std::size_t saturated_through() const {
    std::size_t L = 0;
    while (L < max_len_ && saturated_[L + 1]) ++L;
    return L;
  }

 private:
  void check_length(std::size_t n) const {
    if (n > max_len_) throw DomainError("oracle query length " + std::to_string(n) + " exceeds max_len");
  }

  Word source_;
  std::size_t max_len_;
  std::vector<std::vector<std::uint64_t>> factors_;
  std::vector<bool> saturated_;
};

}  // namespace pfkit

#pragma once

// Bit-packed finite words over the binary alphabet {0,1} and the quaternary
// alphabet {0,1,2,3}, plus the combinatorial primitives used throughout the
// toolkit: segments, occurrence counts, anti-reversal, factor sets and the
// cylinder metric on finite windows of bi-infinite sequences.
//
// Storage is 1 bit per symbol (binary) or 2 bits per symbol (quaternary),
// least-significant bit first, in 64-bit limbs. Bits past the last symbol are
// always zero, so limb equality is word equality.
//
// All positions are 0-indexed. A word x_1...x_n in 1-indexed notation is
// stored with x_1 at index 0.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pfkit/errors.hpp"
#include "pfkit/parallel.hpp"

namespace pfkit {

using Symbol = std::uint8_t;

class Alphabet {
 public:
  constexpr Alphabet() = default;
  explicit constexpr Alphabet(unsigned size) : size_(validate(size)) {}

  static constexpr Alphabet binary() { return Alphabet(2); }
  static constexpr Alphabet quaternary() { return Alphabet(4); }

  constexpr unsigned size() const { return size_; }
  constexpr unsigned bits() const { return size_ == 2 ? 1u : 2u; }
  constexpr bool contains(Symbol s) const { return s < size_; }
  constexpr bool is_binary() const { return size_ == 2; }
  /// Longest word whose packed form fits one 64-bit code.
  constexpr std::size_t max_code_length() const { return 64 / bits(); }

  static constexpr char to_char(Symbol s) { return static_cast<char>('0' + s); }

  friend constexpr bool operator==(Alphabet, Alphabet) = default;

 private:
  static constexpr std::uint8_t validate(unsigned size) {
    if (size != 2 && size != 4) throw DomainError("alphabet size must be 2 or 4");
    return static_cast<std::uint8_t>(size);
  }

  std::uint8_t size_ = 2;
};

namespace detail {

inline constexpr std::uint64_t low_mask(unsigned n) { return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1); }

inline std::size_t limbs_for(std::size_t bits) { return (bits + 63) / 64; }

// Reads n <= 64 bits starting at bit offset pos. The caller guarantees that
// pos + n does not run past the stored bits.
inline std::uint64_t read_bits(std::span<const std::uint64_t> limbs, std::size_t pos, unsigned n) {
  if (n == 0) return 0;
  std::size_t li = pos / 64;
  unsigned off = static_cast<unsigned>(pos % 64);
  std::uint64_t v = limbs[li] >> off;
  if (off != 0 && off + n > 64) v |= limbs[li + 1] << (64 - off);
  return v & low_mask(n);
}

inline std::uint64_t reverse_bits(std::uint64_t x) {
  x = ((x >> 1) & 0x5555555555555555ULL) | ((x & 0x5555555555555555ULL) << 1);
  x = ((x >> 2) & 0x3333333333333333ULL) | ((x & 0x3333333333333333ULL) << 2);
  x = ((x >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((x & 0x0F0F0F0F0F0F0F0FULL) << 4);
  x = ((x >> 8) & 0x00FF00FF00FF00FFULL) | ((x & 0x00FF00FF00FF00FFULL) << 8);
  x = ((x >> 16) & 0x0000FFFF0000FFFFULL) | ((x & 0x0000FFFF0000FFFFULL) << 16);
  return (x >> 32) | (x << 32);
}

}  // namespace detail

class WordBuilder;

/// Immutable packed word.
class Word {
 public:
  Word() = default;
  explicit Word(Alphabet alphabet) : alphabet_(alphabet) {}

  static Word from_string(std::string_view text, Alphabet alphabet = Alphabet::binary());
  static Word from_symbols(std::span<const Symbol> symbols, Alphabet alphabet = Alphabet::binary());
  /// Inverse of code(): `length` symbols packed LSB-first in `code`.
  static Word from_code(std::uint64_t code, std::size_t length, Alphabet alphabet = Alphabet::binary());
  /// Adopts packed limbs; bits past the last symbol are cleared.
  static Word from_limbs(Alphabet alphabet, std::size_t length, std::vector<std::uint64_t> limbs);

  Alphabet alphabet() const { return alphabet_; }
  std::size_t size() const { return length_; }
  bool empty() const { return length_ == 0; }

  Symbol operator[](std::size_t i) const {
    unsigned b = alphabet_.bits();
    return static_cast<Symbol>(detail::read_bits(limbs_, i * b, b));
  }
  Symbol at(std::size_t i) const {
    if (i >= length_) throw DomainError("symbol index " + std::to_string(i) + " out of range");
    return (*this)[i];
  }

  /// Packed symbols [pos, pos+count), symbol pos in the lowest bits.
  std::uint64_t code(std::size_t pos, std::size_t count) const {
    unsigned b = alphabet_.bits();
    if (count > alphabet_.max_code_length()) throw DomainError("factor too long for a 64-bit code");
    if (pos > length_ || count > length_ - pos) throw DomainError("code range out of bounds");
    return detail::read_bits(limbs_, pos * b, static_cast<unsigned>(count * b));
  }

  /// Symbols [pos, pos+len).
  Word substr(std::size_t pos, std::size_t len) const;
  Word prefix(std::size_t len) const { return substr(0, len); }
  /// Drops the first k symbols.
  Word drop(std::size_t k) const {
    if (k > length_) throw DomainError("drop past end of word");
    return substr(k, length_ - k);
  }

  std::string str() const {
    std::string s(length_, '0');
    for (std::size_t i = 0; i < length_; ++i) s[i] = Alphabet::to_char((*this)[i]);
    return s;
  }

  std::span<const std::uint64_t> limbs() const { return limbs_; }

  friend bool operator==(const Word& a, const Word& b) {
    return a.alphabet_ == b.alphabet_ && a.length_ == b.length_ && a.limbs_ == b.limbs_;
  }
  /// Lexicographic on symbols; a proper prefix sorts first.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.alphabet_.size() <=> b.alphabet_.size(); c != 0) return c;
    std::size_t n = std::min(a.length_, b.length_);
    for (std::size_t i = 0; i < n; ++i)
      if (auto c = a[i] <=> b[i]; c != 0) return c;
    return a.length_ <=> b.length_;
  }

 private:
  friend class WordBuilder;
  Word(Alphabet a, std::size_t len, std::vector<std::uint64_t> limbs) : alphabet_(a), length_(len), limbs_(std::move(limbs)) {}

  Alphabet alphabet_{};
  std::size_t length_ = 0;
  std::vector<std::uint64_t> limbs_;
};

/// Append-only construction of a Word.
class WordBuilder {
 public:
  explicit WordBuilder(Alphabet alphabet = Alphabet::binary(), std::size_t reserve = 0) : alphabet_(alphabet) {
    limbs_.reserve(detail::limbs_for(reserve * alphabet.bits()));
  }

  Alphabet alphabet() const { return alphabet_; }
  std::size_t size() const { return length_; }

  WordBuilder& push_back(Symbol s) {
    if (!alphabet_.contains(s)) throw DomainError("symbol " + std::to_string(s) + " not in alphabet");
    write_bits(s, alphabet_.bits());
    ++length_;
    return *this;
  }

  WordBuilder& append(const Word& w) { return append(w, 0, w.size()); }

  WordBuilder& append(const Word& w, std::size_t pos, std::size_t len) {
    if (w.alphabet() != alphabet_) throw DomainError("alphabet mismatch");
    if (pos > w.size() || len > w.size() - pos) throw DomainError("append range out of bounds");
    unsigned b = alphabet_.bits();
    std::size_t src = pos * b;
    std::size_t remaining = len * b;
    while (remaining > 0) {
      unsigned chunk = static_cast<unsigned>(std::min<std::size_t>(remaining, 64));
      write_bits(detail::read_bits(w.limbs(), src, chunk), chunk);
      src += chunk;
      remaining -= chunk;
    }
    length_ += len;
    return *this;
  }

  Word build() && { return Word(alphabet_, std::exchange(length_, 0), std::move(limbs_)); }

 private:
  void write_bits(std::uint64_t v, unsigned n) {
    std::size_t pos = bit_length_;
    std::size_t need = detail::limbs_for(pos + n);
    if (limbs_.size() < need) limbs_.resize(need, 0);
    std::size_t li = pos / 64;
    unsigned off = static_cast<unsigned>(pos % 64);
    limbs_[li] |= v << off;
    if (off != 0 && off + n > 64) limbs_[li + 1] |= v >> (64 - off);
    bit_length_ += n;
  }

  Alphabet alphabet_;
  std::size_t length_ = 0;
  std::size_t bit_length_ = 0;
  std::vector<std::uint64_t> limbs_;
};

inline Word Word::from_string(std::string_view text, Alphabet alphabet) {
  WordBuilder b(alphabet, text.size());
  for (char c : text) {
    if (c < '0' || c > '3' || !alphabet.contains(static_cast<Symbol>(c - '0')))
      throw DomainError(std::string("invalid symbol '") + c + "' for alphabet of size " + std::to_string(alphabet.size()));
    b.push_back(static_cast<Symbol>(c - '0'));
  }
  return std::move(b).build();
}

inline Word Word::from_symbols(std::span<const Symbol> symbols, Alphabet alphabet) {
  WordBuilder b(alphabet, symbols.size());
  for (Symbol s : symbols) b.push_back(s);
  return std::move(b).build();
}

inline Word Word::from_code(std::uint64_t code, std::size_t length, Alphabet alphabet) {
  if (length > alphabet.max_code_length()) throw DomainError("code length exceeds 64 bits");
  unsigned bits = static_cast<unsigned>(length * alphabet.bits());
  if (length == 0) return Word(alphabet);
  return Word(alphabet, length, std::vector<std::uint64_t>{code & detail::low_mask(bits)});
}

inline Word Word::from_limbs(Alphabet alphabet, std::size_t length, std::vector<std::uint64_t> limbs) {
  std::size_t bits = length * alphabet.bits();
  if (limbs.size() != detail::limbs_for(bits)) throw DomainError("from_limbs: limb count does not match length");
  if (bits % 64 != 0) limbs.back() &= detail::low_mask(static_cast<unsigned>(bits % 64));
  return Word(alphabet, length, std::move(limbs));
}

inline Word Word::substr(std::size_t pos, std::size_t len) const {
  if (pos > length_ || len > length_ - pos) throw DomainError("substring out of range");
  WordBuilder b(alphabet_, len);
  b.append(*this, pos, len);
  return std::move(b).build();
}

// ---------------------------------------------------------------------------
// Word operations

inline Word concat(const Word& a, const Word& b) {
  if (a.alphabet() != b.alphabet()) throw DomainError("concat: alphabet mismatch");
  WordBuilder out(a.alphabet(), a.size() + b.size());
  out.append(a).append(b);
  return std::move(out).build();
}

/// Inclusive segment w[k..l], 0-indexed.
inline Word segment(const Word& w, std::size_t k, std::size_t l) {
  if (k > l || l >= w.size())
    throw DomainError("segment [" + std::to_string(k) + "," + std::to_string(l) + "] out of range for length " +
                      std::to_string(w.size()));
  return w.substr(k, l - k + 1);
}

inline std::size_t count(const Word& w, Symbol a) {
  if (!w.alphabet().contains(a)) throw DomainError("count: symbol not in alphabet");
  std::size_t total = 0;
  auto limbs = w.limbs();
  if (w.alphabet().is_binary()) {
    for (std::uint64_t l : limbs) total += static_cast<std::size_t>(std::popcount(l));
    return a == 1 ? total : w.size() - total;
  }
  // Quaternary: a lane matches when (lane XOR a) == 0.
  std::uint64_t pattern = 0;
  for (int lane = 0; lane < 32; ++lane) pattern |= std::uint64_t{a} << (2 * lane);
  std::size_t bits = w.size() * 2;
  for (std::size_t i = 0; i < limbs.size(); ++i) {
    std::uint64_t t = limbs[i] ^ pattern;
    std::uint64_t zero_lanes = ~(t | (t >> 1)) & 0x5555555555555555ULL;
    std::size_t valid = std::min<std::size_t>(64, bits - i * 64);
    zero_lanes &= detail::low_mask(static_cast<unsigned>(valid));
    total += static_cast<std::size_t>(std::popcount(zero_lanes));
  }
  return total;
}

namespace detail {
inline void require_binary(const Word& v, const char* op) {
  if (!v.alphabet().is_binary()) throw DomainError(std::string(op) + " is defined only on the binary alphabet");
}
}  // namespace detail

/// Reverse and swap 0 <-> 1.
inline Word anti_reverse(const Word& v) {
  detail::require_binary(v, "anti_reverse");
  std::size_t n = v.size();
  if (n == 0) return v;
  auto src = v.limbs();
  std::size_t L = src.size();
  unsigned pad = static_cast<unsigned>(L * 64 - n);
  // Reversing the limb array bitwise puts `pad` zero bits in front of the data.
  std::vector<std::uint64_t> rev(L);
  for (std::size_t i = 0; i < L; ++i) rev[i] = detail::reverse_bits(src[L - 1 - i]);
  std::vector<std::uint64_t> out(L);
  for (std::size_t i = 0; i < L; ++i) {
    std::uint64_t lo = pad == 0 ? rev[i] : (rev[i] >> pad);
    std::uint64_t hi = (pad == 0 || i + 1 >= L) ? 0 : (rev[i + 1] << (64 - pad));
    out[i] = ~(lo | hi);
  }
  return Word::from_limbs(Alphabet::binary(), n, std::move(out));
}

/// Anti-reversal of a binary code of the given length.
inline std::uint64_t anti_reverse_code(std::uint64_t code, std::size_t length) {
  if (length == 0) return 0;
  std::uint64_t r = detail::reverse_bits(code) >> (64 - length);
  return ~r & detail::low_mask(static_cast<unsigned>(length));
}

inline bool is_anti_palindrome_code(std::uint64_t code, std::size_t length) {
  return length % 2 == 0 && anti_reverse_code(code, length) == code;
}

inline bool is_anti_palindrome(const Word& v) {
  detail::require_binary(v, "is_anti_palindrome");
  std::size_t n = v.size();
  if (n % 2 != 0) return false;
  for (std::size_t i = 0; i < n / 2; ++i)
    if (v[i] == v[n - 1 - i]) return false;
  return true;
}

/// Index of the first differing symbol, or nullopt when the words agree on
/// their common length and have equal length.
inline std::optional<std::size_t> first_mismatch(const Word& a, const Word& b) {
  if (a.alphabet() != b.alphabet()) throw DomainError("first_mismatch: alphabet mismatch");
  unsigned bits = a.alphabet().bits();
  std::size_t n = std::min(a.size(), b.size());
  auto la = a.limbs(), lb = b.limbs();
  std::size_t full = (n * bits) / 64;
  for (std::size_t i = 0; i < full; ++i) {
    if (std::uint64_t x = la[i] ^ lb[i]) return (i * 64 + static_cast<std::size_t>(std::countr_zero(x))) / bits;
  }
  for (std::size_t i = full * 64 / bits; i < n; ++i)
    if (a[i] != b[i]) return i;
  if (a.size() != b.size()) return n;
  return std::nullopt;
}

/// Sorted distinct codes of all length-n factors (n * bits <= 64).
inline std::vector<std::uint64_t> factor_codes(const Word& w, std::size_t n) {
  if (n == 0) throw DomainError("factor length must be positive");
  if (n > w.alphabet().max_code_length()) throw DomainError("factor length too large for packed codes");
  if (n > w.size()) return {};
  std::size_t positions = w.size() - n + 1;
  unsigned width = static_cast<unsigned>(n * w.alphabet().bits());
  unsigned step = w.alphabet().bits();
  std::vector<std::vector<std::uint64_t>> partial(worker_count());
  parallel_chunks(positions, std::size_t{1} << 16, [&](std::size_t b, std::size_t e, std::size_t c) {
    std::unordered_set<std::uint64_t> seen;
    for (std::size_t i = b; i < e; ++i) seen.insert(detail::read_bits(w.limbs(), i * step, width));
    partial[c].assign(seen.begin(), seen.end());
  });
  std::vector<std::uint64_t> all;
  for (auto& p : partial) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

/// All distinct length-n factors of w. Empty when n > |w|.
inline std::set<Word> factor_set(const Word& w, std::size_t n) {
  if (n == 0) throw DomainError("factor_set: n must be positive");
  std::set<Word> out;
  if (n > w.size()) return out;
  if (n <= w.alphabet().max_code_length()) {
    for (std::uint64_t c : factor_codes(w, n)) out.insert(Word::from_code(c, n, w.alphabet()));
    return out;
  }
  for (std::size_t i = 0; i + n <= w.size(); ++i) out.insert(w.substr(i, n));
  return out;
}

/// Start positions of every occurrence of `pattern` in `text`.
inline std::vector<std::size_t> find_all(const Word& text, const Word& pattern) {
  if (text.alphabet() != pattern.alphabet()) throw DomainError("find_all: alphabet mismatch");
  std::vector<std::size_t> hits;
  std::size_t m = pattern.size();
  if (m == 0 || m > text.size()) return hits;
  unsigned bits = text.alphabet().bits();
  std::size_t head = std::min(m, text.alphabet().max_code_length());
  std::uint64_t key = pattern.code(0, head);
  unsigned width = static_cast<unsigned>(head * bits);
  for (std::size_t i = 0; i + m <= text.size(); ++i) {
    if (detail::read_bits(text.limbs(), i * bits, width) != key) continue;
    bool ok = true;
    for (std::size_t j = head; j < m && ok; j += text.alphabet().max_code_length()) {
      std::size_t len = std::min(m - j, text.alphabet().max_code_length());
      ok = text.code(i + j, len) == pattern.code(j, len);
    }
    if (ok) hits.push_back(i);
  }
  return hits;
}

// ---------------------------------------------------------------------------
// Windows on bi-infinite sequences

/// Finite view of x in A^Z: word[0] sits at slot `origin`.
struct Window {
  Word word;
  std::int64_t origin = 0;

  std::int64_t first_slot() const { return origin; }
  std::int64_t end_slot() const { return origin + static_cast<std::int64_t>(word.size()); }
  bool covers(std::int64_t slot) const { return slot >= first_slot() && slot < end_slot(); }
  Symbol at(std::int64_t slot) const {
    if (!covers(slot)) throw DomainError("slot " + std::to_string(slot) + " not covered by window");
    return word[static_cast<std::size_t>(slot - origin)];
  }
  /// The centered window x[-radius..radius] of a one-sided sequence read from `center`.
  static Window centered(const Word& w, std::size_t center, std::size_t radius) {
    if (center < radius || center + radius >= w.size()) throw DomainError("centered window out of range");
    return Window{w.substr(center - radius, 2 * radius + 1), -static_cast<std::int64_t>(radius)};
  }
};

/// d(x, y) = 2^{-n} on windows covering [-K, K]. An empty exponent means the
/// windows agree on the whole covered range; equality of the underlying
/// sequences is not certifiable from finite data.
struct WindowDistance {
  std::optional<unsigned> exponent;

  bool agrees_on_range() const { return !exponent.has_value(); }
  double value() const { return exponent ? 1.0 / static_cast<double>(std::uint64_t{1} << *exponent) : 0.0; }
  std::string str() const { return exponent ? "2^-" + std::to_string(*exponent) : "agree-on-range"; }
  friend bool operator==(const WindowDistance&, const WindowDistance&) = default;
};

inline WindowDistance window_distance(const Window& x, const Window& y) {
  auto radius = [](const Window& w) -> std::int64_t {
    std::int64_t K = -w.origin;
    if (K < 0 || static_cast<std::int64_t>(w.word.size()) != 2 * K + 1)
      throw DomainError("window_distance: window must cover a symmetric range [-K, K]");
    return K;
  };
  std::int64_t K = radius(x);
  if (radius(y) != K) throw DomainError("window_distance: windows cover different ranges");
  if (x.word.alphabet() != y.word.alphabet()) throw DomainError("window_distance: alphabet mismatch");
  for (std::int64_t k = 0; k <= K; ++k) {
    if (x.at(k) != y.at(k) || x.at(-k) != y.at(-k)) return WindowDistance{static_cast<unsigned>(k)};
  }
  return WindowDistance{};
}

}  // namespace pfkit

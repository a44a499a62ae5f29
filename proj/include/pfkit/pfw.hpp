#pragma once

// PFW1 binary word files:
//   "PFW1" | version (0x01) | alphabet size (2 or 4) | u64 LE symbol count |
//   ceil(count * bits / 8) payload bytes, symbols packed LSB-first.

#include <array>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "pfkit/word.hpp"

namespace pfkit {

inline constexpr std::array<char, 4> kPfwMagic{'P', 'F', 'W', '1'};
inline constexpr std::uint8_t kPfwVersion = 0x01;

inline void write_pfw(std::ostream& out, const Word& w) {
  out.write(kPfwMagic.data(), kPfwMagic.size());
  out.put(static_cast<char>(kPfwVersion));
  out.put(static_cast<char>(w.alphabet().size()));
  std::uint64_t n = w.size();
  for (int i = 0; i < 8; ++i) out.put(static_cast<char>((n >> (8 * i)) & 0xFF));
  std::size_t bytes = (w.size() * w.alphabet().bits() + 7) / 8;
  auto limbs = w.limbs();
  for (std::size_t b = 0; b < bytes; ++b) out.put(static_cast<char>((limbs[b / 8] >> (8 * (b % 8))) & 0xFF));
  if (!out) throw FormatError("PFW1: write failed");
}

inline Word read_pfw(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kPfwMagic) throw FormatError("PFW1: bad magic");
  int version = in.get();
  if (version != kPfwVersion) throw FormatError("PFW1: unsupported version " + std::to_string(version));
  int size = in.get();
  if (size != 2 && size != 4) throw FormatError("PFW1: alphabet size must be 2 or 4");
  Alphabet alphabet(static_cast<unsigned>(size));
  std::uint64_t n = 0;
  for (int i = 0; i < 8; ++i) {
    int c = in.get();
    if (c == EOF) throw FormatError("PFW1: truncated header");
    n |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  if (n > (std::uint64_t{1} << 40)) throw FormatError("PFW1: implausible symbol count");
  std::uint64_t bits = n * alphabet.bits();
  std::size_t bytes = static_cast<std::size_t>((bits + 7) / 8);
  std::vector<char> payload(bytes);
  if (bytes > 0 && !in.read(payload.data(), static_cast<std::streamsize>(bytes))) throw FormatError("PFW1: truncated payload");
  std::vector<std::uint64_t> limbs(detail::limbs_for(bits), 0);
  for (std::size_t b = 0; b < bytes; ++b)
    limbs[b / 8] |= static_cast<std::uint64_t>(static_cast<unsigned char>(payload[b])) << (8 * (b % 8));
  return Word::from_limbs(alphabet, static_cast<std::size_t>(n), std::move(limbs));
}

inline void save_pfw(const std::string& path, const Word& w) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open " + path + " for writing");
  write_pfw(f, w);
}

inline Word load_pfw(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open " + path);
  return read_pfw(f);
}

}  // namespace pfkit

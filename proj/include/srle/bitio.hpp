#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "srle/core.hpp"

namespace srle {

/// Width in bits of the c_alpha field of a variable-length code.
inline constexpr unsigned kWidthFieldBits = 4;
/// Largest payload width a variable-length code can carry.
inline constexpr unsigned kMaxVarlenBits = 16;

/// Number of significant bits in `value`; 0 for 0.
unsigned bit_length(std::uint64_t value);

/// Append-only bit buffer, most-significant bit first within each byte.
/// Unwritten trailing bits of the last byte are always zero.
class BitWriter {
 public:
  void write(std::uint64_t value, unsigned bits);

  std::uint64_t bit_length() const { return bit_length_; }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::vector<std::uint8_t> release() && { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t bit_length_ = 0;
};

class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_length);
  explicit BitReader(std::span<const std::uint8_t> bytes)
      : BitReader(bytes, std::uint64_t{bytes.size()} * 8) {}

  /// Throws Truncated when fewer than `bits` bits remain.
  std::uint64_t read(unsigned bits);

  std::uint64_t position() const { return pos_; }
  std::uint64_t remaining() const { return bit_length_ - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::uint64_t bit_length_;
  std::uint64_t pos_ = 0;
};

/// Minimal bit-packing width covering every symbol: max(1, bit_length(max)).
unsigned bitpack_width(std::span<const Symbol> alphabet);

void encode_bitpacked(std::uint64_t value, unsigned width, BitWriter& out);
std::uint64_t decode_bitpacked(BitReader& in, unsigned width);

/// Writes (w - 1) in 4 bits followed by `value` in w bits, w = max(1, bit_length(value)).
void encode_varlen(std::uint64_t value, BitWriter& out);
std::uint64_t decode_varlen(BitReader& in);

/// b_x for one symbol under a representation.
unsigned symbol_width(std::uint64_t value, const Representation& repr);

void encode_symbol(std::uint64_t value, const Representation& repr, BitWriter& out);
std::uint64_t decode_symbol(BitReader& in, const Representation& repr);

}  // namespace srle

#include "srle/bitio.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "srle/error.hpp"

namespace srle {

unsigned bit_length(std::uint64_t value) {
  return static_cast<unsigned>(std::bit_width(value));
}

void BitWriter::write(std::uint64_t value, unsigned bits) {
  if (bits == 0) return;
  if (bits > 64) throw Error(ErrorKind::InvalidArgument, "bit field wider than 64 bits");
  if (bits < 64) value &= (std::uint64_t{1} << bits) - 1;
  while (bits > 0) {
    unsigned used = static_cast<unsigned>(bit_length_ & 7u);
    if (used == 0) bytes_.push_back(0);
    unsigned room = 8 - used;
    unsigned take = std::min(room, bits);
    auto chunk = static_cast<std::uint8_t>((value >> (bits - take)) & ((1u << take) - 1));
    bytes_.back() |= static_cast<std::uint8_t>(chunk << (room - take));
    bits -= take;
    bit_length_ += take;
  }
}

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_length)
    : bytes_(bytes), bit_length_(bit_length) {
  if (bit_length > std::uint64_t{bytes.size()} * 8) {
    throw Error(ErrorKind::InvalidArgument, "bit length exceeds buffer");
  }
}

std::uint64_t BitReader::read(unsigned bits) {
  if (bits > 64) throw Error(ErrorKind::InvalidArgument, "bit field wider than 64 bits");
  if (bits > remaining()) {
    throw Error(ErrorKind::Truncated, "bitstream truncated: need " + std::to_string(bits) +
                                          " bits, " + std::to_string(remaining()) + " left");
  }
  std::uint64_t value = 0;
  while (bits > 0) {
    unsigned used = static_cast<unsigned>(pos_ & 7u);
    unsigned room = 8 - used;
    unsigned take = std::min(room, bits);
    std::uint8_t byte = bytes_[pos_ >> 3];
    std::uint64_t chunk = (byte >> (room - take)) & ((1u << take) - 1);
    value = (value << take) | chunk;
    bits -= take;
    pos_ += take;
  }
  return value;
}

unsigned bitpack_width(std::span<const Symbol> alphabet) {
  if (alphabet.empty()) throw Error(ErrorKind::InvalidArgument, "empty alphabet");
  return std::max(1u, bit_length(*std::max_element(alphabet.begin(), alphabet.end())));
}

void encode_bitpacked(std::uint64_t value, unsigned width, BitWriter& out) {
  if (width == 0 || width > 64) throw Error(ErrorKind::InvalidArgument, "bit-packing width out of range");
  if (bit_length(value) > width) {
    throw Error(ErrorKind::Overflow, "symbol " + std::to_string(value) + " does not fit in " +
                                         std::to_string(width) + " bits");
  }
  out.write(value, width);
}

std::uint64_t decode_bitpacked(BitReader& in, unsigned width) {
  if (width == 0 || width > 64) throw Error(ErrorKind::InvalidArgument, "bit-packing width out of range");
  return in.read(width);
}

void encode_varlen(std::uint64_t value, BitWriter& out) {
  unsigned w = std::max(1u, bit_length(value));
  if (w > kMaxVarlenBits) {
    throw Error(ErrorKind::Overflow, "symbol " + std::to_string(value) +
                                         " needs more than 16 bits for variable-length coding");
  }
  out.write(w - 1, kWidthFieldBits);
  out.write(value, w);
}

std::uint64_t decode_varlen(BitReader& in) {
  auto w = static_cast<unsigned>(in.read(kWidthFieldBits)) + 1;
  return in.read(w);
}

unsigned symbol_width(std::uint64_t value, const Representation& repr) {
  if (const auto* bp = std::get_if<BitPacking>(&repr)) {
    if (bit_length(value) > bp->width) {
      throw Error(ErrorKind::Overflow, "symbol " + std::to_string(value) + " does not fit in " +
                                           std::to_string(bp->width) + " bits");
    }
    return bp->width;
  }
  unsigned w = std::max(1u, bit_length(value));
  if (w > kMaxVarlenBits) {
    throw Error(ErrorKind::Overflow, "symbol " + std::to_string(value) +
                                         " needs more than 16 bits for variable-length coding");
  }
  return kWidthFieldBits + w;
}

void encode_symbol(std::uint64_t value, const Representation& repr, BitWriter& out) {
  if (const auto* bp = std::get_if<BitPacking>(&repr)) {
    encode_bitpacked(value, bp->width, out);
  } else {
    encode_varlen(value, out);
  }
}

std::uint64_t decode_symbol(BitReader& in, const Representation& repr) {
  if (const auto* bp = std::get_if<BitPacking>(&repr)) return decode_bitpacked(in, bp->width);
  return decode_varlen(in);
}

}  // namespace srle

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "srle/core.hpp"

namespace srle {

/// The two logical output streams: symbols, and one run length per symbol
/// that belongs to G.
struct EncodedPair {
  std::vector<Symbol> encoded;
  std::vector<std::uint64_t> run_control;  // each in [1, 2^b_r]

  bool operator==(const EncodedPair&) const = default;
};

inline constexpr std::uint8_t kContainerVersion = 1;

struct ContainerHeader {
  Mode mode = Mode::Ours;
  Representation representation = BitPacking{8};
  unsigned run_bits = 4;
  std::uint64_t length = 0;         // N, symbols after decoding
  std::uint64_t encoded_count = 0;  // entries in the encoded variable
  std::vector<Symbol> members;      // G, strictly ascending; empty under V-RLE

  /// Under V-RLE every symbol is run-length encoded and G is not listed.
  bool is_member(Symbol x) const;

  bool operator==(const ContainerHeader&) const = default;
};

/// A compressed segment: header plus the two bit-packed streams, each
/// zero-padded to a byte boundary.
struct SrleContainer {
  ContainerHeader header;
  std::vector<std::uint8_t> symbols;
  std::uint64_t symbol_bits = 0;
  std::vector<std::uint8_t> run_control;
  std::uint64_t run_control_bits = 0;

  std::uint64_t payload_bits() const { return symbol_bits + run_control_bits; }

  bool operator==(const SrleContainer&) const = default;
};

/// Splits a run of length n into ceil(n / 2^b_r) divisions, full ones first.
std::vector<std::uint64_t> split_run(std::uint64_t n, unsigned run_bits);

/// Logical selective encoding: runs of G members become (symbol, length)
/// divisions, everything else is copied verbatim.
EncodedPair encode_pair(const SymbolSequence& seq, const SuitableSet& g, unsigned run_bits);

/// Inverse of encode_pair.
SymbolSequence decode_pair(const EncodedPair& pair, const SuitableSet& g);

SrleContainer encode(const SymbolSequence& seq, const SuitableSet& g, const CodecConfig& config);
SymbolSequence decode(const SrleContainer& container);

/// Raw size of the input in bits: the sum of symbol_width over all elements.
std::uint64_t raw_payload_bits(const SymbolSequence& seq, const Representation& repr);

/// Two-pass baseline: keeps x iff b_x N_x >= (b_x + b_r) D_x, with D_x the
/// actual number of divisions a full V-RLE pass produces for x.
SuitableSet exploratory_suitable_set(const SymbolSequence& seq, const CodecConfig& config);

/// Serialized `.srle` layout, all integers little-endian:
///   "SRLE" | version u8 | flags u8 | b_r u8 | b_x u8 | N u64 | encoded_count u64
///   | g_count u16 | g_count * u64 | symbol stream | run-control stream
/// flags: bit0 representation (1 = variable-length), bits1-2 mode, others zero.
std::vector<std::uint8_t> serialize(const SrleContainer& container);

/// Validates the whole artifact, including that the streams decode to
/// exactly N symbols. Throws Corrupt or Truncated.
SrleContainer deserialize(std::span<const std::uint8_t> bytes);

/// Size of the fixed header plus the G listing.
std::uint64_t header_bytes(const ContainerHeader& header);

}  // namespace srle

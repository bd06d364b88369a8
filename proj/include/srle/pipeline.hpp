#pragma once

#include <cstdint>

#include "srle/codec.hpp"
#include "srle/core.hpp"
#include "srle/ingest.hpp"

namespace srle {

enum class RepresentationKind { BitPacking, VariableLength };

struct CompressOptions {
  Mode mode = Mode::Ours;
  unsigned run_bits = 4;
  RepresentationKind representation = RepresentationKind::BitPacking;
  std::uint64_t sample_size = ingest::kDefaultSampleSize;
  std::uint64_t seed = 0;
};

/// Everything decided before encoding: the concrete config, the estimate G
/// was built from, and G itself.
struct CompressionPlan {
  CodecConfig config;
  DistributionEstimate estimate;
  SuitableSet suitable;
};

/// Bit-packing widths are derived from the largest symbol in `seq`.
CompressionPlan plan_compression(const SymbolSequence& seq, const CompressOptions& options);

struct CompressResult {
  CompressionPlan plan;
  SrleContainer container;
  std::uint64_t input_bits = 0;  // raw input under the chosen representation
  std::uint64_t header_bytes = 0;

  std::uint64_t payload_bits() const { return container.payload_bits(); }
  /// input_bits / payload_bits; 1.0 for an empty input.
  double compression_ratio() const;
};

CompressResult compress_sequence(const SymbolSequence& seq, const CompressOptions& options);

}  // namespace srle

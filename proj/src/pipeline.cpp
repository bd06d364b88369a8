#include "srle/pipeline.hpp"

#include <algorithm>

#include "srle/bitio.hpp"

namespace srle {

CompressionPlan plan_compression(const SymbolSequence& seq, const CompressOptions& options) {
  CompressionPlan plan;
  plan.config.run_bits = options.run_bits;
  plan.config.mode = options.mode;
  if (options.representation == RepresentationKind::VariableLength) {
    plan.config.representation = VariableLength{};
  } else {
    plan.config.representation = BitPacking{seq.empty() ? 1u : bitpack_width(seq)};
  }
  plan.config.validate();

  plan.estimate = ingest::sample_distribution(seq, options.sample_size, options.seed);
  switch (options.mode) {
    case Mode::Ours:
      plan.suitable = build_suitable_set(plan.estimate, plan.config);
      break;
    case Mode::VRle:
      plan.suitable = full_set(count_distribution(seq));
      break;
    case Mode::DRle:
      plan.suitable = dominant_set(plan.estimate);
      break;
    case Mode::Exploratory:
      plan.suitable = exploratory_suitable_set(seq, plan.config);
      break;
  }
  return plan;
}

double CompressResult::compression_ratio() const {
  if (payload_bits() == 0) return 1.0;
  return static_cast<double>(input_bits) / static_cast<double>(payload_bits());
}

CompressResult compress_sequence(const SymbolSequence& seq, const CompressOptions& options) {
  CompressResult result;
  result.plan = plan_compression(seq, options);
  result.input_bits = raw_payload_bits(seq, result.plan.config.representation);
  result.container = encode(seq, result.plan.suitable, result.plan.config);
  result.header_bytes = header_bytes(result.container.header);
  return result;
}

}  // namespace srle

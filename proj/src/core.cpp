#include "srle/core.hpp"

#include <algorithm>
#include <string>

#include "srle/bitio.hpp"
#include "srle/error.hpp"
#include "srle/kernels.hpp"

namespace srle {

std::uint64_t DistributionEstimate::count(Symbol x) const {
  auto it = counts.find(x);
  return it == counts.end() ? 0 : it->second;
}

double DistributionEstimate::p_hat(Symbol x) const {
  if (total == 0) return 0.0;
  return static_cast<double>(count(x)) / static_cast<double>(total);
}

DistributionEstimate count_distribution(const SymbolSequence& seq) {
  return kernels::count_symbols(seq);
}

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::Ours: return "ours";
    case Mode::VRle: return "vrle";
    case Mode::DRle: return "drle";
    case Mode::Exploratory: return "oracle";
  }
  return "unknown";
}

void CodecConfig::validate() const {
  if (run_bits < 1 || run_bits > 8) {
    throw Error(ErrorKind::InvalidArgument,
                "run-control width must be in [1, 8], got " + std::to_string(run_bits));
  }
  if (const auto* bp = std::get_if<BitPacking>(&representation)) {
    if (bp->width < 1 || bp->width > 64) {
      throw Error(ErrorKind::InvalidArgument,
                  "bit-packing width must be in [1, 64], got " + std::to_string(bp->width));
    }
  }
}

bool SuitableSet::contains(Symbol x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

double suitability_threshold(unsigned symbol_bits, unsigned run_bits) {
  if (symbol_bits == 0 || run_bits == 0) {
    throw Error(ErrorKind::InvalidArgument, "bit widths must be positive");
  }
  return static_cast<double>(run_bits) / static_cast<double>(symbol_bits + run_bits);
}

bool meets_threshold(std::uint64_t count, std::uint64_t total, unsigned symbol_bits,
                     unsigned run_bits) {
  __extension__ typedef unsigned __int128 u128;
  return u128{count} * (symbol_bits + run_bits) >= u128{total} * run_bits;
}

SuitableSet build_suitable_set(const DistributionEstimate& dist, const CodecConfig& config,
                               const WidthFn& width_of) {
  config.validate();
  SuitableSet g;
  g.mode = Mode::Ours;
  for (const auto& [x, n] : dist.counts) {
    unsigned bx = width_of(x);
    g.thresholds[x] = suitability_threshold(bx, config.run_bits);
    if (n > 0 && meets_threshold(n, dist.total, bx, config.run_bits)) g.members.push_back(x);
  }
  return g;
}

SuitableSet build_suitable_set(const DistributionEstimate& dist, const CodecConfig& config) {
  const Representation repr = config.representation;
  return build_suitable_set(dist, config, [repr](Symbol x) { return symbol_width(x, repr); });
}

SuitableSet dominant_set(const DistributionEstimate& dist) {
  SuitableSet g;
  g.mode = Mode::DRle;
  const std::pair<const Symbol, std::uint64_t>* best = nullptr;
  // std::map iterates in ascending ID order, so strict > keeps the smallest ID on ties.
  for (const auto& entry : dist.counts) {
    if (entry.second > 0 && (best == nullptr || entry.second > best->second)) best = &entry;
  }
  if (best != nullptr) g.members.push_back(best->first);
  return g;
}

SuitableSet full_set(const DistributionEstimate& dist) {
  SuitableSet g;
  g.mode = Mode::VRle;
  for (const auto& [x, n] : dist.counts) {
    if (n > 0) g.members.push_back(x);
  }
  return g;
}

}  // namespace srle

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <variant>
#include <vector>

namespace srle {

using Symbol = std::uint64_t;

/// Ordered list of symbol IDs; the input and output of the codec.
using SymbolSequence = std::vector<Symbol>;

struct FullPass {
  bool operator==(const FullPass&) const = default;
};

struct Sampled {
  std::uint64_t sample_size = 0;
  std::uint64_t seed = 0;
  bool operator==(const Sampled&) const = default;
};

/// Occurrence counts of each observed symbol. `total` always equals the sum
/// of `counts`, so p_hat(x) = counts[x] / total lies in (0, 1].
struct DistributionEstimate {
  std::map<Symbol, std::uint64_t> counts;
  std::uint64_t total = 0;
  std::variant<FullPass, Sampled> source = FullPass{};

  bool empty() const { return total == 0; }
  std::uint64_t count(Symbol x) const;
  double p_hat(Symbol x) const;

  bool operator==(const DistributionEstimate&) const = default;
};

/// Builds a full-pass estimate from a sequence.
DistributionEstimate count_distribution(const SymbolSequence& seq);

enum class Mode : std::uint8_t { Ours = 0, VRle = 1, DRle = 2, Exploratory = 3 };

const char* mode_name(Mode mode);

struct BitPacking {
  unsigned width = 8;
  bool operator==(const BitPacking&) const = default;
};

struct VariableLength {
  bool operator==(const VariableLength&) const = default;
};

using Representation = std::variant<BitPacking, VariableLength>;

inline bool is_variable_length(const Representation& r) {
  return std::holds_alternative<VariableLength>(r);
}

struct CodecConfig {
  unsigned run_bits = 4;  // b_r
  Representation representation = BitPacking{8};
  Mode mode = Mode::Ours;

  /// Throws InvalidArgument unless run_bits is in [1, 8] and a bit-packing
  /// width is in [1, 64].
  void validate() const;

  /// Longest run a single run-control element can express: 2^run_bits.
  std::uint64_t max_run() const { return std::uint64_t{1} << run_bits; }
};

/// The symbols chosen for run-length treatment (the set G).
struct SuitableSet {
  std::vector<Symbol> members;  // strictly ascending
  Mode mode = Mode::Ours;
  std::map<Symbol, double> thresholds;  // populated only by build_suitable_set

  bool contains(Symbol x) const;
  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
};

/// Frequency threshold b_r / (b_x + b_r) above which run-length encoding a
/// symbol is expected to save space.
double suitability_threshold(unsigned symbol_bits, unsigned run_bits);

/// Exact form of `count / total >= b_r / (b_x + b_r)`.
bool meets_threshold(std::uint64_t count, std::uint64_t total, unsigned symbol_bits,
                     unsigned run_bits);

using WidthFn = std::function<unsigned(Symbol)>;

SuitableSet build_suitable_set(const DistributionEstimate& dist, const CodecConfig& config,
                               const WidthFn& width_of);

/// Overload deriving b_x from the configured representation.
SuitableSet build_suitable_set(const DistributionEstimate& dist, const CodecConfig& config);

/// D-RLE: the single most frequent symbol, smallest ID on ties.
SuitableSet dominant_set(const DistributionEstimate& dist);

/// V-RLE: every observed symbol.
SuitableSet full_set(const DistributionEstimate& dist);

}  // namespace srle

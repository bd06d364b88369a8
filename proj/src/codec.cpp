#include "srle/codec.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "srle/bitio.hpp"
#include "srle/error.hpp"

namespace srle {

bool ContainerHeader::is_member(Symbol x) const {
  return mode == Mode::VRle || std::binary_search(members.begin(), members.end(), x);
}

std::vector<std::uint64_t> split_run(std::uint64_t n, unsigned run_bits) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "run length must be positive");
  if (run_bits < 1 || run_bits > 8) throw Error(ErrorKind::InvalidArgument, "run-control width out of range");
  const std::uint64_t cap = std::uint64_t{1} << run_bits;
  std::vector<std::uint64_t> divisions(n / cap, cap);
  if (n % cap != 0) divisions.push_back(n % cap);
  return divisions;
}

namespace {

bool member_of(const SuitableSet& g, Symbol x) {
  return g.mode == Mode::VRle ? true : g.contains(x);
}

// Calls emit(symbol, run_length_or_0) for every encoded-variable entry;
// run length 0 marks a verbatim (non-member) entry.
template <typename Emit>
void scan_runs(const SymbolSequence& seq, const SuitableSet& g, unsigned run_bits, Emit&& emit) {
  const std::uint64_t cap = std::uint64_t{1} << run_bits;
  const std::size_t size = seq.size();
  std::size_t i = 0;
  while (i < size) {
    const Symbol x = seq[i];
    if (!member_of(g, x)) {
      emit(x, 0);
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < size && seq[j] == x) ++j;
    std::uint64_t n = j - i;
    while (n > cap) {
      emit(x, cap);
      n -= cap;
    }
    emit(x, n);
    i = j;
  }
}

}  // namespace

EncodedPair encode_pair(const SymbolSequence& seq, const SuitableSet& g, unsigned run_bits) {
  if (run_bits < 1 || run_bits > 8) throw Error(ErrorKind::InvalidArgument, "run-control width out of range");
  EncodedPair pair;
  scan_runs(seq, g, run_bits, [&](Symbol x, std::uint64_t run) {
    pair.encoded.push_back(x);
    if (run > 0) pair.run_control.push_back(run);
  });
  return pair;
}

SymbolSequence decode_pair(const EncodedPair& pair, const SuitableSet& g) {
  SymbolSequence out;
  std::size_t next_run = 0;
  for (Symbol x : pair.encoded) {
    if (!member_of(g, x)) {
      out.push_back(x);
      continue;
    }
    if (next_run >= pair.run_control.size()) throw Error(ErrorKind::Truncated, "run-control variable exhausted");
    out.insert(out.end(), pair.run_control[next_run++], x);
  }
  if (next_run != pair.run_control.size()) throw Error(ErrorKind::Corrupt, "unused run-control entries");
  return out;
}

SrleContainer encode(const SymbolSequence& seq, const SuitableSet& g, const CodecConfig& config) {
  config.validate();
  SrleContainer c;
  c.header.mode = g.mode;
  c.header.representation = config.representation;
  c.header.run_bits = config.run_bits;
  c.header.length = seq.size();
  if (g.mode != Mode::VRle) c.header.members = g.members;
  for (Symbol m : c.header.members) symbol_width(m, config.representation);

  BitWriter symbols;
  BitWriter runs;
  std::uint64_t entries = 0;
  scan_runs(seq, g, config.run_bits, [&](Symbol x, std::uint64_t run) {
    encode_symbol(x, config.representation, symbols);
    if (run > 0) runs.write(run - 1, config.run_bits);
    ++entries;
  });
  c.header.encoded_count = entries;
  c.symbol_bits = symbols.bit_length();
  c.run_control_bits = runs.bit_length();
  c.symbols = std::move(symbols).release();
  c.run_control = std::move(runs).release();
  return c;
}

SymbolSequence decode(const SrleContainer& container) {
  const ContainerHeader& h = container.header;
  BitReader symbol_in(container.symbols, container.symbol_bits);
  BitReader run_in(container.run_control, container.run_control_bits);

  if (h.encoded_count > container.symbol_bits) {
    throw Error(ErrorKind::Corrupt, "encoded count exceeds symbol stream size");
  }
  std::vector<Symbol> encoded;
  encoded.reserve(h.encoded_count);
  for (std::uint64_t i = 0; i < h.encoded_count; ++i) {
    encoded.push_back(decode_symbol(symbol_in, h.representation));
  }
  if (symbol_in.remaining() != 0) throw Error(ErrorKind::Corrupt, "trailing bits in symbol stream");

  std::vector<std::uint64_t> runs;
  for (Symbol x : encoded) {
    if (h.is_member(x)) runs.push_back(run_in.read(h.run_bits) + 1);
  }
  if (run_in.remaining() != 0) throw Error(ErrorKind::Corrupt, "trailing bits in run-control stream");

  SymbolSequence out;
  out.reserve(std::min<std::uint64_t>(h.length, encoded.size() << h.run_bits));
  std::size_t next_run = 0;
  for (Symbol x : encoded) {
    const std::uint64_t n = h.is_member(x) ? runs[next_run++] : 1;
    if (n > h.length - out.size()) {
      throw Error(ErrorKind::Corrupt, "decoded length exceeds header length " + std::to_string(h.length));
    }
    out.insert(out.end(), n, x);
  }
  if (out.size() != h.length) {
    throw Error(ErrorKind::Corrupt, "decoded " + std::to_string(out.size()) + " symbols, header says " +
                                        std::to_string(h.length));
  }
  return out;
}

std::uint64_t raw_payload_bits(const SymbolSequence& seq, const Representation& repr) {
  if (const auto* bp = std::get_if<BitPacking>(&repr)) {
    for (Symbol x : seq) symbol_width(x, repr);
    return std::uint64_t{seq.size()} * bp->width;
  }
  std::uint64_t bits = 0;
  for (Symbol x : seq) bits += symbol_width(x, repr);
  return bits;
}

SuitableSet exploratory_suitable_set(const SymbolSequence& seq, const CodecConfig& config) {
  config.validate();
  struct Tally {
    std::uint64_t occurrences = 0;
    std::uint64_t divisions = 0;
  };
  std::unordered_map<Symbol, Tally> tally;
  SuitableSet all;
  all.mode = Mode::VRle;
  scan_runs(seq, all, config.run_bits, [&](Symbol x, std::uint64_t run) {
    auto& t = tally[x];
    t.occurrences += run;
    ++t.divisions;
  });

  SuitableSet g;
  g.mode = Mode::Exploratory;
  __extension__ typedef unsigned __int128 u128;
  for (const auto& [x, t] : tally) {
    const unsigned bx = symbol_width(x, config.representation);
    if (u128{bx} * t.occurrences >= u128{bx + config.run_bits} * t.divisions) g.members.push_back(x);
  }
  std::sort(g.members.begin(), g.members.end());
  return g;
}

}  // namespace srle

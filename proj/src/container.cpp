#include <algorithm>
#include <array>
#include <cstring>
#include <string>

#include "srle/bitio.hpp"
#include "srle/codec.hpp"
#include "srle/error.hpp"

namespace srle {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'S', 'R', 'L', 'E'};
constexpr std::size_t kFixedHeaderBytes = 4 + 1 + 1 + 1 + 1 + 8 + 8 + 2;

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class ByteCursor {
 public:
  explicit ByteCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint64_t le(int width, const char* field) {
    if (bytes_.size() - pos_ < static_cast<std::size_t>(width)) {
      throw Error(ErrorKind::Truncated, std::string("container truncated in ") + field);
    }
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= std::uint64_t{bytes_[pos_ + i]} << (8 * i);
    pos_ += width;
    return v;
  }

  std::span<const std::uint8_t> take(std::uint64_t n, const char* field) {
    if (bytes_.size() - pos_ < n) throw Error(ErrorKind::Truncated, std::string("container truncated in ") + field);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint64_t bytes_for(std::uint64_t bits) { return (bits + 7) / 8; }

Error corrupt(const std::string& what) { return Error(ErrorKind::Corrupt, "corrupt container: " + what); }

}  // namespace

std::uint64_t header_bytes(const ContainerHeader& header) {
  return kFixedHeaderBytes + 8 * std::uint64_t{header.members.size()};
}

std::vector<std::uint8_t> serialize(const SrleContainer& c) {
  const ContainerHeader& h = c.header;
  if (h.members.size() > UINT16_MAX) {
    throw Error(ErrorKind::Overflow, "suitable set has " + std::to_string(h.members.size()) +
                                         " members; the container holds at most 65535");
  }
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  out.reserve(header_bytes(h) + c.symbols.size() + c.run_control.size());
  out.push_back(kContainerVersion);
  const bool varlen = is_variable_length(h.representation);
  out.push_back(static_cast<std::uint8_t>((varlen ? 1u : 0u) | (static_cast<unsigned>(h.mode) << 1)));
  out.push_back(static_cast<std::uint8_t>(h.run_bits));
  out.push_back(varlen ? 0 : static_cast<std::uint8_t>(std::get<BitPacking>(h.representation).width));
  put_le(out, h.length, 8);
  put_le(out, h.encoded_count, 8);
  put_le(out, h.members.size(), 2);
  for (Symbol m : h.members) put_le(out, m, 8);
  out.insert(out.end(), c.symbols.begin(), c.symbols.end());
  out.insert(out.end(), c.run_control.begin(), c.run_control.end());
  return out;
}

SrleContainer deserialize(std::span<const std::uint8_t> bytes) {
  ByteCursor in(bytes);
  auto magic = in.take(4, "magic");
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) {
    throw corrupt("bad magic, expected \"SRLE\"");
  }
  const auto version = in.le(1, "version");
  if (version != kContainerVersion) throw corrupt("unsupported version " + std::to_string(version));

  SrleContainer c;
  ContainerHeader& h = c.header;
  const auto flags = in.le(1, "flags");
  if ((flags & ~0x07u) != 0) throw corrupt("reserved flag bits set");
  const bool varlen = (flags & 1u) != 0;
  h.mode = static_cast<Mode>((flags >> 1) & 3u);
  h.run_bits = static_cast<unsigned>(in.le(1, "b_r"));
  if (h.run_bits < 1 || h.run_bits > 8) throw corrupt("run-control width " + std::to_string(h.run_bits));
  const auto bx = static_cast<unsigned>(in.le(1, "b_x"));
  if (varlen) {
    if (bx != 0) throw corrupt("b_x must be 0 under variable-length representation");
    h.representation = VariableLength{};
  } else {
    if (bx < 1 || bx > 64) throw corrupt("bit-packing width " + std::to_string(bx));
    h.representation = BitPacking{bx};
  }
  h.length = in.le(8, "N");
  h.encoded_count = in.le(8, "encoded count");
  const auto g_count = in.le(2, "G count");

  if (h.mode == Mode::VRle && g_count != 0) throw corrupt("V-RLE containers list no members");
  if (h.mode == Mode::DRle && g_count > 1) throw corrupt("D-RLE containers have at most one member");
  if (g_count * 8 > in.remaining()) throw corrupt("G count exceeds container size");
  h.members.reserve(g_count);
  for (std::uint64_t i = 0; i < g_count; ++i) {
    const Symbol m = in.le(8, "G members");
    if (!h.members.empty() && m <= h.members.back()) throw corrupt("G members not strictly ascending");
    try {
      symbol_width(m, h.representation);
    } catch (const Error&) {
      throw corrupt("G member " + std::to_string(m) + " does not fit the representation");
    }
    h.members.push_back(m);
  }

  // Both streams are parsed here so that any inconsistency surfaces before
  // the caller touches the payload.
  const auto payload = in.rest();
  if (h.encoded_count > std::uint64_t{payload.size()} * 8) throw corrupt("encoded count exceeds payload");
  if (h.encoded_count > h.length) throw corrupt("more entries than decoded symbols");

  BitReader symbol_in(payload);
  std::uint64_t member_entries = 0;
  std::uint64_t verbatim_entries = 0;
  for (std::uint64_t i = 0; i < h.encoded_count; ++i) {
    const Symbol x = decode_symbol(symbol_in, h.representation);
    if (h.is_member(x)) {
      ++member_entries;
    } else {
      ++verbatim_entries;
    }
  }
  c.symbol_bits = symbol_in.position();
  const std::uint64_t symbol_bytes = bytes_for(c.symbol_bits);
  c.run_control_bits = member_entries * h.run_bits;
  const std::uint64_t run_bytes = bytes_for(c.run_control_bits);
  if (payload.size() != symbol_bytes + run_bytes) {
    throw corrupt("payload is " + std::to_string(payload.size()) + " bytes, streams need " +
                  std::to_string(symbol_bytes + run_bytes));
  }
  c.symbols.assign(payload.begin(), payload.begin() + static_cast<std::ptrdiff_t>(symbol_bytes));
  c.run_control.assign(payload.begin() + static_cast<std::ptrdiff_t>(symbol_bytes), payload.end());

  auto padding_clear = [](const std::vector<std::uint8_t>& buf, std::uint64_t bits) {
    const unsigned used = static_cast<unsigned>(bits & 7u);
    return used == 0 || (buf.back() & ((1u << (8 - used)) - 1)) == 0;
  };
  if (!padding_clear(c.symbols, c.symbol_bits) || !padding_clear(c.run_control, c.run_control_bits)) {
    throw corrupt("non-zero padding bits");
  }

  BitReader run_in(c.run_control, c.run_control_bits);
  std::uint64_t decoded = verbatim_entries;
  for (std::uint64_t i = 0; i < member_entries; ++i) decoded += run_in.read(h.run_bits) + 1;
  if (decoded != h.length) {
    throw corrupt("streams decode to " + std::to_string(decoded) + " symbols, header says " +
                  std::to_string(h.length));
  }
  return c;
}

}  // namespace srle

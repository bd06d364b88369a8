#include "srle/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

#include "rng.hpp"
#include "srle/error.hpp"

namespace srle::ingest {

MappedColumn dictionary_map(std::span<const std::string> strings) {
  MappedColumn out;
  out.symbols.reserve(strings.size());
  auto& dict = out.dictionary;
  for (const auto& s : strings) {
    auto [it, inserted] = dict.index.try_emplace(s, dict.entries.size());
    if (inserted) dict.entries.push_back(s);
    out.symbols.push_back(it->second);
  }
  return out;
}

std::vector<std::string> dictionary_unmap(const SymbolSequence& seq, const Dictionary& dict) {
  std::vector<std::string> out;
  out.reserve(seq.size());
  for (Symbol id : seq) {
    if (id >= dict.size()) {
      throw Error(ErrorKind::InvalidArgument, "symbol " + std::to_string(id) + " outside dictionary of " +
                                                  std::to_string(dict.size()) + " entries");
    }
    out.push_back(dict.entries[id]);
  }
  return out;
}

std::vector<std::uint8_t> write_dictionary(const Dictionary& dict) {
  std::vector<std::uint8_t> out;
  for (const auto& e : dict.entries) {
    if (e.size() > UINT32_MAX) throw Error(ErrorKind::Overflow, "dictionary entry too long");
    const auto len = static_cast<std::uint32_t>(e.size());
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
    out.insert(out.end(), e.begin(), e.end());
  }
  return out;
}

Dictionary read_dictionary(std::span<const std::uint8_t> bytes) {
  Dictionary dict;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    if (bytes.size() - pos < 4) throw Error(ErrorKind::Truncated, "dictionary truncated in entry length");
    std::uint32_t len = 0;
    for (int i = 0; i < 4; ++i) len |= std::uint32_t{bytes[pos + i]} << (8 * i);
    pos += 4;
    if (bytes.size() - pos < len) throw Error(ErrorKind::Truncated, "dictionary truncated in entry bytes");
    std::string entry(reinterpret_cast<const char*>(bytes.data() + pos), len);
    pos += len;
    if (!dict.index.try_emplace(entry, dict.entries.size()).second) {
      throw Error(ErrorKind::Corrupt, "duplicate dictionary entry");
    }
    dict.entries.push_back(std::move(entry));
  }
  return dict;
}

DistributionEstimate sample_distribution(const SymbolSequence& seq, std::uint64_t sample_size,
                                         std::uint64_t seed) {
  if (sample_size < 1) throw Error(ErrorKind::InvalidArgument, "sample size must be at least 1");
  const std::uint64_t n = seq.size();
  if (n <= sample_size) return count_distribution(seq);

  // Floyd's algorithm: sample_size distinct indices from [0, n).
  auto rng = detail::stream_rng(seed, 0);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(sample_size * 2);
  for (std::uint64_t j = n - sample_size; j < n; ++j) {
    const std::uint64_t t = detail::bounded(rng, j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  DistributionEstimate dist;
  for (std::uint64_t i : chosen) ++dist.counts[seq[i]];
  dist.total = sample_size;
  dist.source = Sampled{sample_size, seed};
  return dist;
}

SymbolSequence ingest_raw(std::span<const std::uint8_t> bytes, ElementKind kind) {
  if (kind == ElementKind::U8) return SymbolSequence(bytes.begin(), bytes.end());
  if (bytes.size() % 8 != 0) {
    throw Error(ErrorKind::Parse, "input of " + std::to_string(bytes.size()) +
                                      " bytes is not a whole number of u64 elements");
  }
  SymbolSequence seq(bytes.size() / 8);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= std::uint64_t{bytes[8 * i + b]} << (8 * b);
    seq[i] = v;
  }
  return seq;
}

std::vector<std::uint8_t> emit_raw(const SymbolSequence& seq, ElementKind kind) {
  std::vector<std::uint8_t> out;
  if (kind == ElementKind::U8) {
    out.reserve(seq.size());
    for (Symbol x : seq) {
      if (x > 0xFF) throw Error(ErrorKind::Overflow, "symbol " + std::to_string(x) + " does not fit a byte");
      out.push_back(static_cast<std::uint8_t>(x));
    }
    return out;
  }
  out.reserve(seq.size() * 8);
  for (Symbol x : seq) {
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(x >> (8 * b)));
  }
  return out;
}

std::vector<CsvRecord> parse_csv(std::string_view text) {
  std::vector<CsvRecord> records;
  CsvRecord record;
  std::string field;
  std::size_t line = 1;
  std::size_t record_line = 1;
  bool in_quotes = false;
  bool field_quoted = false;
  bool record_open = false;

  auto end_field = [&] {
    record.fields.push_back(std::move(field));
    field.clear();
    field_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    record.line = record_line;
    records.push_back(std::move(record));
    record = {};
    record_open = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (!record_open) {
      record_open = true;
      record_line = line;
    }
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (!field.empty() || field_quoted) {
          throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": stray quote inside field");
        }
        in_quotes = true;
        field_quoted = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        field.push_back(ch);
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        if (field_quoted) {
          throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": text after closing quote");
        }
        field.push_back(ch);
    }
  }
  if (in_quotes) throw Error(ErrorKind::Parse, "line " + std::to_string(record_line) + ": unterminated quote");
  if (record_open) end_record();
  return records;
}

namespace {

std::optional<std::size_t> parse_index(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

CsvColumn ingest_csv_column(std::string_view text, std::string_view column, bool has_header) {
  const auto records = parse_csv(text);

  CsvColumn out;
  std::size_t first_data = 0;
  std::optional<std::size_t> col;
  if (has_header) {
    if (records.empty()) throw Error(ErrorKind::Parse, "CSV has no header row");
    const auto& head = records.front().fields;
    for (std::size_t i = 0; i < head.size(); ++i) {
      if (head[i] == column) {
        col = i;
        break;
      }
    }
    if (!col) col = parse_index(column);
    first_data = 1;
  } else {
    col = parse_index(column);
  }
  const std::size_t width = records.empty() ? 0 : records.front().fields.size();
  if (!col || (!records.empty() && *col >= width)) {
    throw Error(ErrorKind::Parse, "CSV column \"" + std::string(column) + "\" not found");
  }
  if (has_header) out.header = records.front().fields[*col];

  std::vector<std::string> cells;
  cells.reserve(records.size());
  for (std::size_t r = first_data; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != width) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(rec.line) + ": expected " + std::to_string(width) +
                                        " fields, found " + std::to_string(rec.fields.size()));
    }
    cells.push_back(rec.fields[*col]);
  }
  auto mapped = dictionary_map(cells);
  out.symbols = std::move(mapped.symbols);
  out.dictionary = std::move(mapped.dictionary);
  return out;
}

namespace {

void append_cell(std::string& out, const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) {
    out += cell;
    return;
  }
  out.push_back('"');
  for (char ch : cell) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
}

}  // namespace

std::string write_csv_column(std::span<const std::string> values, const std::optional<std::string>& header) {
  std::string out;
  if (header) {
    append_cell(out, *header);
    out.push_back('\n');
  }
  for (const auto& v : values) {
    append_cell(out, v);
    out.push_back('\n');
  }
  return out;
}

}  // namespace srle::ingest

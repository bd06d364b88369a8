#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "srle/core.hpp"

namespace srle::ingest {

/// Maps opaque strings to IDs 0, 1, 2, ... in order of first appearance.
struct Dictionary {
  std::vector<std::string> entries;
  std::unordered_map<std::string, Symbol> index;

  std::size_t size() const { return entries.size(); }
  bool operator==(const Dictionary& other) const { return entries == other.entries; }
};

struct MappedColumn {
  SymbolSequence symbols;
  Dictionary dictionary;
};

MappedColumn dictionary_map(std::span<const std::string> strings);

/// Throws InvalidArgument on an ID outside the dictionary.
std::vector<std::string> dictionary_unmap(const SymbolSequence& seq, const Dictionary& dict);

/// Sidecar `.dict` format: for each entry in ID order, a u32 little-endian
/// byte length followed by the raw bytes.
std::vector<std::uint8_t> write_dictionary(const Dictionary& dict);
Dictionary read_dictionary(std::span<const std::uint8_t> bytes);

inline constexpr std::uint64_t kDefaultSampleSize = 10000;

/// Counts `sample_size` positions drawn uniformly without replacement, or
/// the whole sequence when it is no longer than the sample.
DistributionEstimate sample_distribution(const SymbolSequence& seq, std::uint64_t sample_size,
                                         std::uint64_t seed);

enum class ElementKind { U8, U64LE };

SymbolSequence ingest_raw(std::span<const std::uint8_t> bytes, ElementKind kind);
/// Inverse of ingest_raw; throws Overflow for symbols wider than a byte under U8.
std::vector<std::uint8_t> emit_raw(const SymbolSequence& seq, ElementKind kind);

struct CsvRecord {
  std::size_t line = 1;  // physical line the record starts on
  std::vector<std::string> fields;
};

/// Comma-separated, optional double-quote quoting with "" escapes, LF or
/// CRLF record ends. Quoted fields may span lines.
std::vector<CsvRecord> parse_csv(std::string_view text);

struct CsvColumn {
  SymbolSequence symbols;
  Dictionary dictionary;
  std::optional<std::string> header;
};

/// `column` is a header name, or a zero-based index. Every record must have
/// the same number of fields as the first one.
CsvColumn ingest_csv_column(std::string_view text, std::string_view column, bool has_header);

/// Single-column CSV, one record per value, quoting only where needed.
std::string write_csv_column(std::span<const std::string> values, const std::optional<std::string>& header);

}  // namespace srle::ingest

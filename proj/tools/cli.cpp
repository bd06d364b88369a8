#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "srle/analysis.hpp"
#include "srle/bitio.hpp"
#include "srle/codec.hpp"
#include "srle/error.hpp"
#include "srle/ingest.hpp"
#include "srle/pipeline.hpp"

namespace srle::cli {

namespace fs = std::filesystem;

namespace {

struct InputFormat {
  enum class Kind { U8, U64LE, Csv } kind = Kind::U8;
  std::string column;
};

InputFormat parse_format(const std::string& text) {
  if (text == "u8") return {InputFormat::Kind::U8, {}};
  if (text == "u64le") return {InputFormat::Kind::U64LE, {}};
  if (text.rfind("csv:", 0) == 0 && text.size() > 4) return {InputFormat::Kind::Csv, text.substr(4)};
  throw Error(ErrorKind::InvalidArgument, "unknown format \"" + text + "\" (expected u8, u64le or csv:<column>)");
}

std::string validate_format(const std::string& text) {
  try {
    parse_format(text);
    return {};
  } catch (const Error& e) {
    return e.what();
  }
}

struct Common {
  std::string input;
  std::string output;
  std::string dict;
  std::string mode = "ours";
  unsigned run_bits = 4;
  std::string repr = "bitpack";
  std::string format = "u8";
  bool no_header = false;
  std::uint64_t sample_size = ingest::kDefaultSampleSize;
  std::uint64_t seed = 0;

  CompressOptions options() const;
};

const std::map<std::string, Mode> kModes = {
    {"ours", Mode::Ours}, {"vrle", Mode::VRle}, {"drle", Mode::DRle}, {"oracle", Mode::Exploratory}};
const std::map<std::string, RepresentationKind> kReprs = {
    {"bitpack", RepresentationKind::BitPacking}, {"varlen", RepresentationKind::VariableLength}};

// Values are already validated and lower-cased by the option checks.
CompressOptions Common::options() const {
  return {kModes.at(mode), run_bits, kReprs.at(repr), sample_size, seed};
}

void add_common(CLI::App* cmd, Common& c, bool needs_input = true) {
  auto* in = cmd->add_option("input", c.input, "Input file");
  if (needs_input) in->required();
  cmd->add_option("-o,--output", c.output, "Output file");
  cmd->add_option("--mode", c.mode, "Suitable-set policy: ours, vrle, drle, oracle (default ours)")
      ->transform(CLI::IsMember({"ours", "vrle", "drle", "oracle"}, CLI::ignore_case).description(""))
      ->type_name("MODE");
  cmd->add_option("--br", c.run_bits, "Run-control width in bits")->check(CLI::Range(1u, 8u));
  cmd->add_option("--repr", c.repr, "Symbol representation: bitpack, varlen (default bitpack)")
      ->transform(CLI::IsMember({"bitpack", "varlen"}, CLI::ignore_case).description(""))
      ->type_name("REPR");
  cmd->add_option("--format", c.format, "Input format: u8, u64le, csv:<column>")->check(validate_format);
  cmd->add_flag("--no-header", c.no_header, "CSV input has no header row");
  cmd->add_option("--sample-size", c.sample_size, "Elements sampled to estimate the distribution")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "Sampling seed");
  cmd->add_option("--dict", c.dict, "Dictionary sidecar path (CSV only)");
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::Io, "cannot read " + path);
  return bytes;
}

// Writes through a temporary so a failed command never leaves a partial file.
void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot create " + tmp);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(ErrorKind::Io, "cannot write " + tmp);
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot move output into place at " + path);
  }
}

void write_file(const std::string& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

struct Ingested {
  SymbolSequence symbols;
  std::optional<ingest::Dictionary> dictionary;
  std::optional<std::string> header;
};

Ingested ingest_input(const Common& c) {
  const auto fmt = parse_format(c.format);
  auto bytes = read_file(c.input);
  Ingested result;
  switch (fmt.kind) {
    case InputFormat::Kind::U8:
      result.symbols = ingest::ingest_raw(bytes, ingest::ElementKind::U8);
      break;
    case InputFormat::Kind::U64LE:
      result.symbols = ingest::ingest_raw(bytes, ingest::ElementKind::U64LE);
      break;
    case InputFormat::Kind::Csv: {
      std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
      auto column = ingest::ingest_csv_column(text, fmt.column, !c.no_header);
      result.symbols = std::move(column.symbols);
      result.dictionary = std::move(column.dictionary);
      result.header = std::move(column.header);
      break;
    }
  }
  return result;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
}

int cmd_compress(const Common& c, std::ostream& out) {
  auto in = ingest_input(c);
  auto result = compress_sequence(in.symbols, c.options());
  const auto bytes = serialize(result.container);
  const std::string output = c.output.empty() ? c.input + ".srle" : c.output;
  write_file(output, bytes);
  if (in.dictionary) {
    write_file(c.dict.empty() ? output + ".dict" : c.dict, ingest::write_dictionary(*in.dictionary));
  }

  nlohmann::ordered_json line;
  line["N"] = in.symbols.size();
  line["mode"] = mode_name(kModes.at(c.mode));
  line["g_size"] = result.plan.suitable.size();
  line["input_bits"] = result.input_bits;
  line["payload_bits"] = result.payload_bits();
  line["header_bytes"] = result.header_bytes;
  line["output_bytes"] = bytes.size();
  line["compression_ratio"] = result.compression_ratio();
  out << line.dump() << '\n';
  return kOk;
}

int cmd_decompress(const Common& c, std::ostream&) {
  const auto fmt = parse_format(c.format);
  auto container = deserialize(read_file(c.input));
  auto symbols = decode(container);

  std::string output = c.output;
  if (output.empty()) {
    const std::string suffix = ".srle";
    const bool has_suffix = c.input.size() > suffix.size() &&
                            c.input.compare(c.input.size() - suffix.size(), suffix.size(), suffix) == 0;
    output = has_suffix ? c.input.substr(0, c.input.size() - suffix.size()) : c.input + ".out";
  }

  switch (fmt.kind) {
    case InputFormat::Kind::U8:
      write_file(output, ingest::emit_raw(symbols, ingest::ElementKind::U8));
      break;
    case InputFormat::Kind::U64LE:
      write_file(output, ingest::emit_raw(symbols, ingest::ElementKind::U64LE));
      break;
    case InputFormat::Kind::Csv: {
      const auto dict = ingest::read_dictionary(read_file(c.dict.empty() ? c.input + ".dict" : c.dict));
      const auto values = ingest::dictionary_unmap(symbols, dict);
      std::optional<std::string> header;
      const bool by_index = fmt.column.find_first_not_of("0123456789") == std::string::npos;
      if (!c.no_header && !by_index) header = fmt.column;
      write_file(output, ingest::write_csv_column(values, header));
      break;
    }
  }
  return kOk;
}

int cmd_stats(const Common& c, std::ostream& out) {
  auto in = ingest_input(c);
  const auto plan = plan_compression(in.symbols, c.options());
  const auto& est = plan.estimate;
  const auto& repr = plan.config.representation;

  std::ostringstream csv;
  csv << "symbol,count,p_hat,b_x,threshold,rx_approx,expected_savings_bits,in_G\n";
  for (const auto& [x, count] : est.counts) {
    const unsigned bx = symbol_width(x, repr);
    const double p = est.p_hat(x);
    const double rx = analysis::rx_approx(p, est.total);
    const bool member = plan.suitable.mode == Mode::VRle || plan.suitable.contains(x);
    csv << x << ',' << count << ',' << fmt_double(p) << ',' << bx << ','
        << fmt_double(suitability_threshold(bx, plan.config.run_bits)) << ',' << fmt_double(rx) << ','
        << fmt_double(analysis::expected_savings_bits(count, est.total, bx, plan.config.run_bits, rx)) << ','
        << (member ? 1 : 0) << '\n';
  }
  emit(out, c.output, csv.str());
  return kOk;
}

struct SweepArgs {
  std::vector<double> p{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<std::uint64_t> n{100, 1000, 10000};
  std::vector<unsigned> run_bits{4, 8};
  std::string output;
};

int cmd_sweep(const SweepArgs& s, std::ostream& out) {
  const auto rows = analysis::sweep_rx(s.p, s.n, s.run_bits);
  std::ostringstream csv;
  analysis::write_sweep_csv(csv, rows);
  emit(out, s.output, csv.str());
  return kOk;
}

int cmd_bench(const Common& c, std::ostream& out) {
  auto in = ingest_input(c);
  std::ostringstream csv;
  csv << "method,g_size,input_bits,payload_bits,header_bytes,compression_ratio,seconds\n";
  for (Mode mode : {Mode::Ours, Mode::VRle, Mode::DRle, Mode::Exploratory}) {
    auto options = c.options();
    options.mode = mode;
    const auto start = std::chrono::steady_clock::now();
    const auto result = compress_sequence(in.symbols, options);
    const auto decoded = decode(result.container);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    if (decoded != in.symbols) throw Error(ErrorKind::Corrupt, std::string("round trip failed for ") + mode_name(mode));
    csv << mode_name(mode) << ',' << result.plan.suitable.size() << ',' << result.input_bits << ','
        << result.payload_bits() << ',' << result.header_bytes << ',' << fmt_double(result.compression_ratio())
        << ',' << fmt_double(elapsed.count()) << '\n';
  }
  emit(out, c.output, csv.str());
  return kOk;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return kUsage;
    case ErrorKind::Io: return kIo;
    default: return kFormat;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Selective run-length encoding", "srle"};
  app.require_subcommand(1);

  Common compress_args, decompress_args, stats_args, bench_args;
  SweepArgs sweep_args;
  auto* compress = app.add_subcommand("compress", "Compress a file into an .srle container");
  add_common(compress, compress_args);
  auto* decompress = app.add_subcommand("decompress", "Restore a file from an .srle container");
  add_common(decompress, decompress_args);
  auto* stats = app.add_subcommand("stats", "Per-symbol suitability diagnostics as CSV");
  add_common(stats, stats_args);
  auto* bench = app.add_subcommand("bench", "Compare ours, vrle, drle and oracle on one input");
  add_common(bench, bench_args);
  auto* sweep = app.add_subcommand("sweep", "Exact vs approximate reclaim over a parameter grid");
  sweep->add_option("--p", sweep_args.p, "Probabilities")->delimiter(',');
  sweep->add_option("--n", sweep_args.n, "Sequence lengths")->delimiter(',');
  sweep->add_option("--br", sweep_args.run_bits, "Run-control widths")->delimiter(',')->check(CLI::Range(1u, 8u));
  sweep->add_option("-o,--output", sweep_args.output, "Output file");

  // CLI11 wants argv order reversed when given a vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*compress) return cmd_compress(compress_args, out);
    if (*decompress) return cmd_decompress(decompress_args, out);
    if (*stats) return cmd_stats(stats_args, out);
    if (*sweep) return cmd_sweep(sweep_args, out);
    if (*bench) return cmd_bench(bench_args, out);
  } catch (const Error& e) {
    err << "srle: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "srle: " << e.what() << '\n';
    return kFormat;
  }
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace srle::cli

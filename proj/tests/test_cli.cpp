#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = srle::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("srle_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

void write(const std::string& path, const std::string& bytes) {
  std::ofstream(path, std::ios::binary) << bytes;
}

std::string read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct BenchRow {
  std::size_t g_size;
  double ratio;
};

std::map<std::string, BenchRow> parse_bench(const std::string& csv) {
  std::map<std::string, BenchRow> rows;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    rows[f[0]] = {std::stoul(f[1]), std::stod(f[5])};
  }
  return rows;
}

const std::string kExample("\x00\x01\x01\x01\x00\x00\x02\x02", 8);

}  // namespace

TEST_CASE("compress then decompress restores the worked example") {
  TempDir dir;
  write(dir.file("ex.u8"), kExample);
  auto c = run({"compress", dir.file("ex.u8"), "--mode", "ours"});
  REQUIRE(c.code == 0);
  CHECK(c.out ==
        "{\"N\":8,\"mode\":\"ours\",\"g_size\":0,\"input_bits\":16,\"payload_bits\":16,"
        "\"header_bytes\":26,\"output_bytes\":28,\"compression_ratio\":1.0}\n");
  auto d = run({"decompress", dir.file("ex.u8.srle"), "-o", dir.file("back.u8")});
  REQUIRE(d.code == 0);
  CHECK(read(dir.file("back.u8")) == kExample);
  CHECK(run({"decompress", dir.file("ex.u8.srle")}).code == 0);
  CHECK(read(dir.file("ex.u8")) == kExample);
}

TEST_CASE("round trips across formats, modes and representations") {
  TempDir dir;
  std::mt19937_64 rng(2);
  std::string u8;
  while (u8.size() < 5000) u8.append(1 + rng() % 12, static_cast<char>(rng() % 6));
  std::string u64;
  for (int i = 0; i < 3000; ++i) {
    const std::uint64_t v = (rng() % 3 == 0) ? rng() % 40000 : 7;
    for (int b = 0; b < 8; ++b) u64.push_back(static_cast<char>(v >> (8 * b)));
  }
  write(dir.file("a.u8"), u8);
  write(dir.file("a.u64le"), u64);
  for (const char* mode : {"ours", "vrle", "drle", "oracle"}) {
    for (const char* repr : {"bitpack", "varlen"}) {
      for (const char* br : {"1", "4", "8"}) {
        for (auto [file, fmt] : {std::pair{"a.u8", "u8"}, std::pair{"a.u64le", "u64le"}}) {
          CAPTURE(mode);
          CAPTURE(repr);
          CAPTURE(fmt);
          const auto packed = dir.file("out.srle");
          REQUIRE(run({"compress", dir.file(file), "-o", packed, "--mode", mode, "--repr", repr, "--br", br,
                       "--format", fmt, "--sample-size", "500"})
                      .code == 0);
          REQUIRE(run({"decompress", packed, "-o", dir.file("back"), "--format", fmt}).code == 0);
          CHECK(read(dir.file("back")) == read(dir.file(file)));
        }
      }
    }
  }
}

TEST_CASE("CSV column round trip through the dictionary sidecar") {
  TempDir dir;
  const std::string csv = "answer\nyes\nno\n\"maybe, later\"\nyes\nyes\n\"two\nlines\"\n";
  write(dir.file("s.csv"), csv);
  auto c = run({"compress", dir.file("s.csv"), "--format", "csv:answer", "-o", dir.file("s.srle")});
  REQUIRE(c.code == 0);
  CHECK(fs::exists(dir.file("s.srle.dict")));
  auto d = run({"decompress", dir.file("s.srle"), "--format", "csv:answer", "-o", dir.file("s2.csv")});
  REQUIRE(d.code == 0);
  CHECK(read(dir.file("s2.csv")) == csv);

  write(dir.file("bad.csv"), "a,b\n1,2\n3\n");
  auto bad = run({"compress", dir.file("bad.csv"), "--format", "csv:a"});
  CHECK(bad.code == 3);
  CHECK(bad.err.find("line 3") != std::string::npos);
}

TEST_CASE("inflation behaviour of vrle and oracle") {
  TempDir dir;
  std::string alt;
  for (int i = 0; i < 4000; ++i) alt.push_back(static_cast<char>(i % 2));
  write(dir.file("alt.u8"), alt);
  auto v = nlohmann::json::parse(run({"compress", dir.file("alt.u8"), "--mode", "vrle"}).out);
  CHECK(v["compression_ratio"].get<double>() < 1.0);
  auto o = nlohmann::json::parse(run({"compress", dir.file("alt.u8"), "--mode", "oracle"}).out);
  CHECK(o["compression_ratio"].get<double>() >= 1.0);
}

TEST_CASE("decompress errors leave no output behind") {
  TempDir dir;
  write(dir.file("ex.u8"), kExample);
  REQUIRE(run({"compress", dir.file("ex.u8"), "-o", dir.file("ex.srle")}).code == 0);
  auto bytes = read(dir.file("ex.srle"));

  write(dir.file("trunc.srle"), bytes.substr(0, bytes.size() - 1));
  auto t = run({"decompress", dir.file("trunc.srle"), "-o", dir.file("out.u8")});
  CHECK(t.code == 3);
  CHECK_FALSE(fs::exists(dir.file("out.u8")));
  CHECK_FALSE(fs::exists(dir.file("out.u8.tmp")));

  bytes[0] = 'Z';
  write(dir.file("magic.srle"), bytes);
  auto m = run({"decompress", dir.file("magic.srle"), "-o", dir.file("out.u8")});
  CHECK(m.code == 3);
  CHECK(m.err.find("SRLE") != std::string::npos);
  CHECK_FALSE(fs::exists(dir.file("out.u8")));
}

TEST_CASE("exit codes for usage and I/O failures") {
  TempDir dir;
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  write(dir.file("x.u8"), "abc");
  CHECK(run({"compress", dir.file("x.u8"), "--br", "9"}).code == 1);
  CHECK(run({"compress", dir.file("x.u8"), "--br", "0"}).code == 1);
  CHECK(run({"compress", dir.file("x.u8"), "--mode", "best"}).code == 1);
  CHECK(run({"compress", dir.file("x.u8"), "--format", "csv:"}).code == 1);
  CHECK(run({"compress", dir.file("x.u8"), "--sample-size", "0"}).code == 1);
  CHECK(run({"compress", dir.file("missing.u8")}).code == 2);
  CHECK(run({"compress", dir.file("x.u8"), "-o", dir.file("no/such/dir/out")}).code == 2);
  CHECK(run({"compress", dir.file("x.u8"), "--format", "u64le"}).code == 3);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("stats") {
  TempDir dir;
  // Counts 5 x 0, 3 x 1, 2 x 2 with b_x = 2, b_r = 4: threshold 2/3.
  write(dir.file("s.u8"), std::string("\x00\x00\x00\x00\x00\x01\x01\x01\x02\x02", 10));
  auto s = run({"stats", dir.file("s.u8")});
  REQUIRE(s.code == 0);
  CHECK(s.out ==
        "symbol,count,p_hat,b_x,threshold,rx_approx,expected_savings_bits,in_G\n"
        "0,5,0.5,2,0.666666666667,2.25,-6.5,0\n"
        "1,3,0.3,2,0.666666666667,0.81,-7.14,0\n"
        "2,2,0.2,2,0.666666666667,0.36,-5.84,0\n");

  auto drle = run({"stats", dir.file("s.u8"), "--mode", "drle"});
  CHECK(drle.out.find("0,5,0.5,2,0.666666666667,2.25,-6.5,1\n") != std::string::npos);
  CHECK(drle.out.find("1,3,0.3,2,0.666666666667,0.81,-7.14,0\n") != std::string::npos);

  write(dir.file("empty.u8"), "");
  auto e = run({"stats", dir.file("empty.u8")});
  CHECK(e.out == "symbol,count,p_hat,b_x,threshold,rx_approx,expected_savings_bits,in_G\n");
}

TEST_CASE("sweep") {
  auto s = run({"sweep", "--p", "0.5", "--n", "100", "--br", "4"});
  REQUIRE(s.code == 0);
  CHECK(s.out.rfind("p,N,b_r,rx_exact,rx_approx,epsilon1\n0.5,100,4,", 0) == 0);
  CHECK(s.out.find(",24.75,") != std::string::npos);
  CHECK(s.out == run({"sweep", "--p", "0.5", "--n", "100", "--br", "4"}).out);
  auto multi = run({"sweep", "--p", "0.1,0.9", "--n", "10,20", "--br", "2,8"});
  CHECK(std::count(multi.out.begin(), multi.out.end(), '\n') == 9);
  CHECK(run({"sweep", "--p", "1.5"}).code == 1);
}

TEST_CASE("bench on high-cardinality uniform CSV") {
  TempDir dir;
  std::mt19937_64 rng(31);
  std::string csv = "v\n";
  for (int i = 0; i < 100000; ++i) csv += "value" + std::to_string(rng() % 1000) + "\n";
  write(dir.file("u.csv"), csv);
  auto b = run({"bench", dir.file("u.csv"), "--format", "csv:v"});
  REQUIRE(b.code == 0);
  auto rows = parse_bench(b.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows["ours"].ratio >= rows["drle"].ratio);
  CHECK(rows["drle"].ratio >= rows["vrle"].ratio * 0.99);
  CHECK(rows["ours"].ratio >= 0.99);
  CHECK(rows["oracle"].ratio >= 1.0);
}

TEST_CASE("bench on single-symbol and alternating inputs") {
  TempDir dir;
  write(dir.file("one.u8"), std::string(5000, '\x07'));
  auto one = parse_bench(run({"bench", dir.file("one.u8")}).out);
  for (const auto& [name, row] : one) CHECK(row.ratio > 1.0);
  CHECK(one["ours"].ratio == one["vrle"].ratio);

  std::string alt;
  for (int i = 0; i < 5000; ++i) alt.push_back(static_cast<char>(i % 2));
  write(dir.file("alt.u8"), alt);
  auto a = parse_bench(run({"bench", dir.file("alt.u8")}).out);
  CHECK(a["vrle"].ratio < 1.0);
  CHECK(a["ours"].ratio == doctest::Approx(1.0).epsilon(0.01));
}

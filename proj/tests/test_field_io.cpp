#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "moyal/field_io.hpp"
#include "moyal/fields.hpp"

using namespace moyal;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  fs::path p = fs::temp_directory_path() / "moyal_field_io_test";
  fs::create_directories(p);
  return p;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

void write_json(const fs::path& p, const nlohmann::json& j) { std::ofstream(p) << j.dump(); }

}  // namespace

TEST_CASE("symbols round-trip bit for bit") {
  PhaseGrid g(1, 8);
  SymbolField f = FieldSource(g, 1).next();
  std::string path = (scratch_dir() / "f.json").string();
  write_symbol(path, f);
  CHECK(fs::file_size(data_path(path)) == g.size() * 16);
  SymbolField back = read_symbol(path);
  CHECK(back.grid() == g);
  CHECK(back.values() == f.values());
  CHECK(peek_kind(path) == FieldKind::Symbol);
  auto m = read_json(path);
  CHECK(m["order"] == "row-major-x-then-xi");
  CHECK(m["dtype"] == "complex128-interleaved-le");
  CHECK(m["data"] == "f.bin");
}

TEST_CASE("little-endian layout") {
  PhaseGrid g(1, 4);
  std::vector<cplx> v(g.size());
  v[0] = cplx(1.0, -2.0);
  std::string path = (scratch_dir() / "le.json").string();
  write_symbol(path, SymbolField(g, v));
  std::ifstream in(data_path(path), std::ios::binary);
  unsigned char b[16];
  in.read(reinterpret_cast<char*>(b), 16);
  // 1.0 = 0x3ff0000000000000, -2.0 = 0xc000000000000000
  CHECK(b[7] == 0x3f);
  CHECK(b[6] == 0xf0);
  CHECK(b[0] == 0x00);
  CHECK(b[15] == 0xc0);
}

TEST_CASE("doubled fields and kernels round-trip") {
  PhaseGrid g(1, 4);
  auto f = FieldSource(g, 2).take(2);
  DoubleField F = materialize(TensorSum(f[0], f[1]));
  std::string dp = (scratch_dir() / "F.json").string();
  write_double(dp, F);
  CHECK(read_double(dp).values() == F.values());
  CHECK(peek_kind(dp) == FieldKind::Double);

  OperatorKernel K = weyl_op_kernel(f[0]);
  std::string kp = (scratch_dir() / "K.json").string();
  write_kernel(kp, K);
  OperatorKernel back = read_kernel(kp);
  CHECK(back.matrix == K.matrix);
  CHECK_THROWS_AS(read_symbol(kp), FormatError);
}

TEST_CASE("malformed manifests are rejected") {
  PhaseGrid g(1, 4);
  fs::path dir = scratch_dir();
  std::string path = (dir / "bad.json").string();
  write_symbol(path, gauss0(g));
  nlohmann::json good = read_json(path);

  auto expect_reject = [&](nlohmann::json j) {
    write_json(path, j);
    CHECK_THROWS_AS(read_symbol(path), FormatError);
  };
  nlohmann::json j = good;
  j["format_version"] = 2;
  expect_reject(j);
  j = good;
  j["dtype"] = "float32";
  expect_reject(j);
  j = good;
  j["N"] = 5;
  expect_reject(j);
  j = good;
  j["delta"] = 0.5;
  expect_reject(j);
  j = good;
  j["order"] = "column-major";
  expect_reject(j);
  j = good;
  j.erase("kind");
  expect_reject(j);

  write_json(path, good);
  fs::resize_file(data_path(path), 100);
  CHECK_THROWS_AS(read_symbol(path), FormatError);
  CHECK_THROWS_AS(read_symbol((dir / "missing.json").string()), FormatError);
}

TEST_CASE("data path pairing") {
  CHECK(data_path("a/b/field.json") == "a/b/field.bin");
  CHECK(data_path("field") == "field.bin");
}

#include "moyal/field_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace moyal {
namespace {

constexpr const char* kDtype = "complex128-interleaved-le";

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void put_le(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_le(const unsigned char* b) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

std::string kind_name(FieldKind kind) {
  switch (kind) {
    case FieldKind::Symbol: return "symbol";
    case FieldKind::Double: return "double";
    case FieldKind::Kernel: return "kernel";
  }
  return "";
}

std::string order_name(FieldKind kind) {
  switch (kind) {
    case FieldKind::Symbol: return "row-major-x-then-xi";
    case FieldKind::Double: return "row-major-X-then-Y";
    case FieldKind::Kernel: return "row-major-x-then-y";
  }
  return "";
}

std::size_t expected_count(const Manifest& m) {
  std::size_t phase = 1, config = 1;
  for (int i = 0; i < m.n; ++i) config *= static_cast<std::size_t>(m.N);
  phase = config * config;
  switch (m.kind) {
    case FieldKind::Symbol: return phase;
    case FieldKind::Double: return phase * phase;
    case FieldKind::Kernel: return phase;
  }
  return 0;
}

nlohmann::json manifest_json(const Manifest& m, const std::string& data_file) {
  return {{"format_version", 1}, {"kind", kind_name(m.kind)}, {"n", m.n},           {"N", m.N},
          {"delta", m.delta},    {"dtype", kDtype},           {"order", order_name(m.kind)}, {"data", data_file}};
}

Manifest parse_manifest(const nlohmann::json& j) {
  try {
    if (j.at("format_version").get<int>() != 1) throw FormatError("unsupported format_version");
    if (j.at("dtype").get<std::string>() != kDtype) throw FormatError("unsupported dtype");
    std::string kind = j.at("kind").get<std::string>();
    Manifest m{FieldKind::Symbol, j.at("n").get<int>(), j.at("N").get<int>(), j.at("delta").get<double>()};
    if (kind == "symbol")
      m.kind = FieldKind::Symbol;
    else if (kind == "double")
      m.kind = FieldKind::Double;
    else if (kind == "kernel")
      m.kind = FieldKind::Kernel;
    else
      throw FormatError("unknown field kind: " + kind);
    if (j.contains("order") && j.at("order").get<std::string>() != order_name(m.kind))
      throw FormatError("unsupported order for " + kind);
    if (m.n < 1 || m.N < 2 || m.N % 2 != 0) throw FormatError("manifest grid must have n >= 1 and even N >= 2");
    if (std::abs(m.delta - std::sqrt(2.0 * kPi / m.N)) > 1e-12) throw FormatError("manifest delta does not match N");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad manifest: ") + e.what());
  }
}

std::string data_path(const std::string& manifest_path) {
  std::filesystem::path p(manifest_path);
  if (p.extension() == ".json") return p.replace_extension(".bin").string();
  return manifest_path + ".bin";
}

void write_values(const std::string& manifest_path, const Manifest& m, const std::vector<cplx>& values) {
  if (values.size() != expected_count(m)) throw FormatError("value count does not match the manifest");
  std::string bin = data_path(manifest_path);
  {
    std::ofstream out(bin, std::ios::binary);
    if (!out) throw FormatError("cannot write " + bin);
    for (const auto& v : values) {
      put_le(out, v.real());
      put_le(out, v.imag());
    }
    if (!out) throw FormatError("write failed: " + bin);
  }
  std::ofstream out(manifest_path);
  if (!out) throw FormatError("cannot write " + manifest_path);
  out << manifest_json(m, std::filesystem::path(bin).filename().string()).dump(2) << "\n";
}

std::vector<cplx> read_values(const std::string& manifest_path, Manifest& m) {
  m = parse_manifest(load_json(manifest_path));
  std::string bin = data_path(manifest_path);
  std::ifstream in(bin, std::ios::binary);
  if (!in) throw FormatError("cannot open " + bin);
  std::vector<unsigned char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t count = expected_count(m);
  if (raw.size() != count * 16) throw FormatError(bin + ": size does not match the manifest");
  std::vector<cplx> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = cplx(get_le(&raw[16 * i]), get_le(&raw[16 * i + 8]));
  return v;
}

void write_symbol(const std::string& path, const SymbolField& f) {
  const auto& g = f.grid();
  write_values(path, {FieldKind::Symbol, g.n(), g.N(), g.delta()}, f.values());
}

void write_double(const std::string& path, const DoubleField& F) {
  const auto& g = F.grid();
  write_values(path, {FieldKind::Double, g.n(), g.N(), g.delta()}, F.values());
}

void write_kernel(const std::string& path, const OperatorKernel& K) {
  const auto& g = K.grid;
  std::vector<cplx> v(K.matrix.data(), K.matrix.data() + K.matrix.size());
  write_values(path, {FieldKind::Kernel, g.n(), g.N(), g.delta()}, v);
}

namespace {

std::pair<PhaseGrid, std::vector<cplx>> read_kind(const std::string& path, FieldKind want) {
  Manifest m{};
  auto v = read_values(path, m);
  if (m.kind != want) throw FormatError(path + ": expected a " + kind_name(want) + " field, found " + kind_name(m.kind));
  return {make_grid(m.n, m.N), std::move(v)};
}

}  // namespace

SymbolField read_symbol(const std::string& path) {
  auto [g, v] = read_kind(path, FieldKind::Symbol);
  return SymbolField(g, std::move(v));
}

DoubleField read_double(const std::string& path) {
  auto [g, v] = read_kind(path, FieldKind::Double);
  return DoubleField(g, std::move(v));
}

OperatorKernel read_kernel(const std::string& path) {
  auto [g, v] = read_kind(path, FieldKind::Kernel);
  auto rows = static_cast<Eigen::Index>(g.config_size());
  KernelMatrix m = Eigen::Map<KernelMatrix>(v.data(), rows, rows);
  return {g, std::move(m)};
}

FieldKind peek_kind(const std::string& path) { return parse_manifest(load_json(path)).kind; }

}  // namespace moyal

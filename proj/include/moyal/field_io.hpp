#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "moyal/doubled.hpp"
#include "moyal/grid.hpp"
#include "moyal/laws.hpp"

namespace moyal {

// On disk a field is a JSON manifest plus a sibling binary file with the same
// stem and extension .bin: little-endian doubles, (re, im) interleaved, in
// manifest order.
enum class FieldKind { Symbol, Double, Kernel };

struct Manifest {
  FieldKind kind;
  int n;
  int N;
  double delta;
};

std::string kind_name(FieldKind kind);
std::string order_name(FieldKind kind);
std::size_t expected_count(const Manifest& m);

nlohmann::json manifest_json(const Manifest& m, const std::string& data_file);
Manifest parse_manifest(const nlohmann::json& j);

// Path of the binary file paired with a manifest path.
std::string data_path(const std::string& manifest_path);

void write_values(const std::string& manifest_path, const Manifest& m, const std::vector<cplx>& values);
std::vector<cplx> read_values(const std::string& manifest_path, Manifest& m);

void write_symbol(const std::string& path, const SymbolField& f);
void write_double(const std::string& path, const DoubleField& F);
void write_kernel(const std::string& path, const OperatorKernel& K);

SymbolField read_symbol(const std::string& path);
DoubleField read_double(const std::string& path);
OperatorKernel read_kernel(const std::string& path);

// Kind recorded in a manifest, without reading the data.
FieldKind peek_kind(const std::string& path);

}  // namespace moyal

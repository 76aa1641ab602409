#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "moyal/field_io.hpp"
#include "moyal/fields.hpp"
#include "moyal/magnetic.hpp"
#include "moyal/modulation.hpp"
#include "moyal/verify.hpp"

using namespace moyal;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kGridMismatch = 3, kWindow = 4 };

struct Options {
  std::string law = "weyl";
  int n = 1;
  int N = 16;
  std::uint64_t seed = 7;
  std::string window = "gauss0";
  std::string p = "2";
  std::string q = "2";
  std::string out;
};

bool is_builtin_field(const std::string& id) {
  return id == "gauss0" || id == "idempotent" || id == "zero" || id == "one" || id == "random";
}

SymbolField builtin_field(const std::string& id, const PhaseGrid& grid, std::uint64_t seed) {
  if (id == "gauss0") return gauss0(grid);
  if (id == "idempotent") return idempotent_gaussian(grid);
  if (id == "zero") return SymbolField(grid);
  if (id == "one") return SymbolField::constant(grid, 1.0);
  return FieldSource(grid, seed).next();
}

// Files fix the grid; built-in ids follow it, or the flags when no file is given.
std::vector<SymbolField> load_fields(const std::vector<std::string>& ids, const Options& o) {
  std::optional<PhaseGrid> grid;
  std::vector<std::optional<SymbolField>> loaded;
  for (const auto& id : ids) {
    if (is_builtin_field(id)) {
      loaded.emplace_back();
      continue;
    }
    SymbolField f = read_symbol(id);
    if (grid) require_same_grid(*grid, f.grid());
    grid = f.grid();
    loaded.emplace_back(std::move(f));
  }
  if (!grid) grid = PhaseGrid(o.n, o.N);
  std::vector<SymbolField> out;
  for (std::size_t i = 0; i < ids.size(); ++i)
    out.push_back(loaded[i] ? *loaded[i] : builtin_field(ids[i], *grid, o.seed));
  return out;
}

double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "infinity") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw FormatError("exponent '" + s + "' is not a number");
  }
  if (used != s.size() || !(v >= 1.0) || std::isinf(v)) throw FormatError("exponent must be >= 1 or inf");
  return v;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

int cmd_compose(const Options& o, const std::string& a, const std::string& b) {
  CompositionLaw law = find_law(o.law);
  auto fs = load_fields({a, b}, o);
  require_law_dimension(law, fs[0].grid());
  SymbolField r = law(fs[0], fs[1]);
  if (!o.out.empty()) write_symbol(o.out, r);
  emit({{"command", "compose"},
        {"law", law.name},
        {"n", r.grid().n()},
        {"N", r.grid().N()},
        {"crichi_defect", check_integral_identity(law, fs[0], fs[1])},
        {"out", o.out}});
  return kOk;
}

int cmd_transform(const Options& o, const std::string& kind, const std::string& field) {
  if (kind != "M" && kind != "N" && kind != "R" && kind != "stft") throw FormatError("unknown transform '" + kind + "'");
  CompositionLaw law = find_law(o.law);
  if (kind == "stft" && law.name != "weyl" && law.name != "weyl-direct")
    throw FormatError("the STFT is defined for the Weyl law only");
  SymbolField f = load_fields({field}, o)[0];
  require_law_dimension(law, f.grid());
  check_doubled_guard(f.grid());
  Window h = resolve_window(law, f.grid(), o.window);
  DoubleField F = kind == "M"   ? mod_map(law, f, h)
                  : kind == "N" ? map_N(law, f, h.h)
                  : kind == "R" ? map_R(law, f, h.h)
                                : stft(f, h.h);
  if (!o.out.empty()) write_double(o.out, F);
  emit({{"command", "transform"},
        {"kind", kind},
        {"law", law.name},
        {"window", h.id},
        {"n", f.grid().n()},
        {"N", f.grid().N()},
        {"l22_norm", lpq_norm(F, 2.0, 2.0)},
        {"out", o.out}});
  return kOk;
}

int cmd_modnorm(const Options& o, const std::string& field) {
  double p = parse_exponent(o.p), q = parse_exponent(o.q);
  CompositionLaw law = find_law(o.law);
  SymbolField f = load_fields({field}, o)[0];
  require_law_dimension(law, f.grid());
  check_doubled_guard(f.grid());
  ModNormSpec spec{p, q, resolve_window(law, f.grid(), o.window)};
  double v = modulation_norm(law, f, spec);
  std::printf("law,p,q,window_id,field_id,norm_value\n");
  std::printf("%s,%s,%s,%s,%s,%.17g\n", law.name.c_str(), o.p.c_str(), o.q.c_str(), spec.window.id.c_str(),
              field.c_str(), v);
  return kOk;
}

int cmd_verify(const Options& o) {
  CheckReport r = run_suite(o.law, o.n, o.N, o.seed);
  json j = report_json(r);
  if (!o.out.empty()) std::ofstream(o.out) << j.dump(2) << "\n";
  emit(j);
  return has_unexpected_failure(r) ? kCheckFailed : kOk;
}

CheckReport load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return report_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

int cmd_compare(const std::string& a, const std::string& b) {
  auto diff = compare_reports(load_report(a), load_report(b));
  for (const auto& d : diff)
    emit({{"check_id", d.id}, {"reason", d.reason}, {"status_a", d.status_a}, {"status_b", d.status_b},
          {"defect_a", d.defect_a}, {"defect_b", d.defect_b}});
  emit({{"command", "compare"}, {"changed", diff.size()}});
  return kOk;
}

int cmd_gen(const Options& o, const std::string& kind) {
  if (is_magnetic_name(kind)) {
    MagneticSetup s = magnetic_setup(kind);
    json gauges = json::object();
    for (const auto& [name, A] : s.gauges) gauges[name] = A.to_json();
    json j = {{"name", s.name}, {"field", s.field.to_json()}, {"gauges", gauges}};
    if (!o.out.empty()) std::ofstream(o.out) << j.dump(2) << "\n";
    emit(j);
    return kOk;
  }
  if (!is_builtin_field(kind)) throw FormatError("unknown field kind '" + kind + "'");
  if (o.out.empty()) throw FormatError("gen needs --out");
  SymbolField f = builtin_field(kind, PhaseGrid(o.n, o.N), o.seed);
  write_symbol(o.out, f);
  emit({{"command", "gen"}, {"kind", kind}, {"n", o.n}, {"N", o.N}, {"norm", f.norm()}, {"out", o.out}});
  return kOk;
}

int cmd_info(const std::string& path) {
  if (path.empty()) {
    emit({{"laws", law_names()}, {"windows", builtin_windows()}, {"checks", check_registry()},
          {"registry_version", kRegistryVersion}});
    return kOk;
  }
  FieldKind kind = peek_kind(path);
  json j = {{"path", path}, {"kind", kind_name(kind)}};
  if (kind == FieldKind::Symbol) {
    SymbolField f = read_symbol(path);
    j.update({{"n", f.grid().n()}, {"N", f.grid().N()}, {"delta", f.grid().delta()}, {"norm", f.norm()}});
  } else if (kind == FieldKind::Double) {
    DoubleField F = read_double(path);
    j.update({{"n", F.grid().n()}, {"N", F.grid().N()}, {"delta", F.grid().delta()}, {"l22_norm", lpq_norm(F, 2, 2)}});
  } else {
    OperatorKernel K = read_kernel(path);
    j.update({{"n", K.grid.n()}, {"N", K.grid.N()}, {"delta", K.grid.delta()}, {"frobenius", K.matrix.norm()}});
  }
  emit(j);
  return kOk;
}

int fail(int code, const std::string& msg) {
  std::cerr << "moyal: " << msg << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-space symbol calculus on a discrete torus"};
  app.require_subcommand(1);
  Options o;
  auto common = [&o](CLI::App* c) {
    c->add_option("--law", o.law, "composition law");
    c->add_option("--n", o.n, "configuration dimension");
    c->add_option("--N", o.N, "points per axis (even)");
    c->add_option("--seed", o.seed, "random field seed");
    c->add_option("--out", o.out, "output path");
  };

  std::string a, b, kind, path;
  auto* compose = app.add_subcommand("compose", "compose two symbols");
  common(compose);
  compose->add_option("f", a, "field file or built-in id")->required();
  compose->add_option("g", b, "field file or built-in id")->required();

  auto* transform = app.add_subcommand("transform", "M, N, R or stft of a symbol");
  common(transform);
  transform->add_option("kind", kind, "M | N | R | stft")->required();
  transform->add_option("f", a, "field file or built-in id")->required();
  transform->add_option("--window", o.window, "gauss0 | idempotent | window file");

  auto* modnorm = app.add_subcommand("modnorm", "modulation space norm as a CSV row");
  common(modnorm);
  modnorm->add_option("f", a, "field file or built-in id")->required();
  modnorm->add_option("--window", o.window, "gauss0 | idempotent | window file");
  modnorm->add_option("--p", o.p, "exponent >= 1 or inf");
  modnorm->add_option("--q", o.q, "exponent >= 1 or inf");

  auto* verify = app.add_subcommand("verify", "run the check suite");
  verify->add_option("--out", o.out, "write the report here as well");
  verify->add_option("law", o.law, "composition law");
  verify->add_option("n", o.n, "configuration dimension");
  verify->add_option("N", o.N, "points per axis");
  verify->add_option("seed", o.seed, "random field seed");

  auto* compare = app.add_subcommand("compare", "diff two verify reports");
  compare->add_option("a", a, "report")->required();
  compare->add_option("b", b, "report")->required();

  auto* gen = app.add_subcommand("gen", "write a built-in field or print a magnetic setup");
  common(gen);
  gen->add_option("kind", kind, "gauss0 | idempotent | zero | one | random | magnetic law id")->required();

  auto* info = app.add_subcommand("info", "describe a field file, or list laws and checks");
  info->add_option("path", path, "field manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*compose) return cmd_compose(o, a, b);
    if (*transform) return cmd_transform(o, kind, a);
    if (*modnorm) return cmd_modnorm(o, a);
    if (*verify) return cmd_verify(o);
    if (*compare) return cmd_compare(a, b);
    if (*gen) return cmd_gen(o, kind);
    return cmd_info(path);
  } catch (const GridMismatch& e) {
    return fail(kGridMismatch, e.what());
  } catch (const IdempotencyFailure& e) {
    return fail(kWindow, e.what());
  } catch (const Error& e) {
    return fail(kUsage, e.what());
  } catch (const std::exception& e) {
    return fail(kUsage, e.what());
  }
}

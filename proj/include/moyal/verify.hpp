#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "moyal/laws.hpp"

namespace moyal {

std::vector<std::string> law_names();
// Throws FormatError for unknown names.
CompositionLaw find_law(const std::string& name);
// Rejects grids the law cannot run on (DimensionMismatch).
void require_law_grid(const CompositionLaw& law, const PhaseGrid& grid);

enum class Status { Pass, Fail, ExpectedFail, NonCheck };

std::string status_name(Status s);
Status parse_status(const std::string& s);

struct CheckResult {
  std::string id;
  Status status = Status::NonCheck;
  double defect = 0.0;     // NaN when nothing was measured
  double tolerance = 0.0;  // NaN for non-checks
  long runtime_ms = 0;
  std::string note;
};

struct CheckReport {
  std::string law;
  int n = 1;
  int N = 16;
  std::uint64_t seed = 7;
  std::string registry_version;
  std::vector<CheckResult> checks;

  const CheckResult* find(const std::string& id) const;
};

extern const char* const kRegistryVersion;
const std::vector<std::string>& check_registry();

CheckReport run_suite(const std::string& law, int n, int N, std::uint64_t seed);

bool has_unexpected_failure(const CheckReport& r);

nlohmann::json report_json(const CheckReport& r, bool with_runtime = true);
CheckReport report_from_json(const nlohmann::json& j);
// Report JSON without timings, compact: equal for identical runs.
std::string canonical_report(const CheckReport& r);

struct ReportDiff {
  std::string id;
  std::string status_a;
  std::string status_b;
  double defect_a;
  double defect_b;
  std::string reason;  // "status" or "defect"
};

// Checks whose status changed or whose defect moved by more than 10x.
// Throws Error when the registries differ.
std::vector<ReportDiff> compare_reports(const CheckReport& a, const CheckReport& b);

}  // namespace moyal

#include <set>

#include "doctest.h"
#include "moyal/verify.hpp"

using namespace moyal;

namespace {

const CheckReport& weyl8() {
  static const CheckReport r = run_suite("weyl", 1, 8, 7);
  return r;
}

const CheckReport& pointwise16() {
  static const CheckReport r = run_suite("pointwise", 1, 16, 7);
  return r;
}

}  // namespace

TEST_CASE("every registered check appears once") {
  for (const CheckReport* r : {&weyl8(), &pointwise16()}) {
    REQUIRE(r->checks.size() == check_registry().size());
    std::set<std::string> seen;
    for (const auto& c : r->checks) seen.insert(c.id);
    CHECK(seen.size() == check_registry().size());
    CHECK(r->registry_version == kRegistryVersion);
  }
}

TEST_CASE("expected_fail only where the theory predicts failure") {
  for (const CheckReport* r : {&weyl8(), &pointwise16()})
    for (const auto& c : r->checks)
      if (c.status == Status::ExpectedFail) {
        CHECK(r->law == "pointwise");
        CHECK((c.id == "hypothesis_c" || c.id == "unitarity"));
      }
}

TEST_CASE("pointwise suite") {
  const CheckReport& r = pointwise16();
  CHECK(r.find("crichi")->status == Status::Pass);
  CHECK(r.find("cyclicity")->status == Status::Pass);
  CHECK(r.find("hypothesis_c")->status == Status::ExpectedFail);
  CHECK(r.find("unitarity")->status == Status::ExpectedFail);
  CHECK(r.find("hypothesis_b")->status == Status::NonCheck);
  CHECK_FALSE(has_unexpected_failure(r));
}

TEST_CASE("Weyl algebraic checks pass on a small grid") {
  const CheckReport& r = weyl8();
  for (const char* id : {"fourier_involution", "plancherel", "unit", "crichi", "cyclicity", "involution_antimorphism",
                         "associativity", "theta_translation", "hypothesis_c", "oracle_agreement", "relation_M_NC",
                         "unitarity", "morphism", "morphism_involution", "inversion", "isometry"})
    CHECK_MESSAGE(r.find(id)->status == Status::Pass, id);
  CHECK(r.find("diamond_associativity")->note == "N=8");
}

TEST_CASE("reports are deterministic") {
  CHECK(canonical_report(run_suite("weyl", 1, 8, 7)) == canonical_report(weyl8()));
  CHECK(canonical_report(run_suite("weyl", 1, 8, 8)) != canonical_report(weyl8()));
}

TEST_CASE("report JSON round trip") {
  nlohmann::json j = report_json(weyl8());
  CHECK(j["checks"][9]["check_id"] == "hypothesis_b");
  CHECK(j["checks"][9]["defect"].is_null());
  CheckReport back = report_from_json(nlohmann::json::parse(j.dump()));
  CHECK(canonical_report(back) == canonical_report(weyl8()));
  CHECK(report_json(weyl8(), false)["checks"][0].count("runtime_ms") == 0);
}

TEST_CASE("comparing reports") {
  CHECK(compare_reports(weyl8(), weyl8()).empty());

  std::set<std::string> changed;
  for (const auto& d : compare_reports(run_suite("weyl", 1, 16, 7), pointwise16()))
    if (d.reason == "status") changed.insert(d.id);
  CHECK(changed.count("hypothesis_c") == 1);
  CHECK(changed.count("unitarity") == 1);

  for (const auto& d : compare_reports(weyl8(), run_suite("weyl", 1, 8, 11))) CHECK_MESSAGE(d.reason != "status", d.id);

  CheckReport other = weyl8();
  other.registry_version = "0";
  CHECK_THROWS_AS(compare_reports(weyl8(), other), Error);
}

TEST_CASE("suite preconditions") {
  CHECK_THROWS_AS(run_suite("nonsense", 1, 16, 7), FormatError);
  CHECK_THROWS_AS(run_suite("weyl", 1, 15, 7), GridError);
  CHECK_THROWS_AS(run_suite("magnetic-b1", 1, 16, 7), DimensionMismatch);
  CHECK(law_names().size() == 7);
}

TEST_CASE("magnetic suite on the smallest grid") {
  CheckReport r = run_suite("magnetic-b1", 2, 4, 7);
  for (const char* id : {"gauge_covariance", "stokes", "cocycle", "crichi", "cyclicity", "associativity",
                         "hypothesis_c", "unitarity", "morphism"})
    CHECK_MESSAGE(r.find(id)->status == Status::Pass, id);
  CHECK(r.find("stft_proportionality")->status == Status::NonCheck);
}

// Report plumbing: deterministic JSON, RFC-4180 CSV, schema validation.
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <fstream>

#include "furthlab/report.hpp"
#include "furthlab/rng.hpp"

using namespace furthlab;
namespace rep = furthlab::report;

#ifndef FURTHLAB_SCHEMA_PATH
#define FURTHLAB_SCHEMA_PATH "report.schema.json"
#endif

namespace {
rep::ExperimentReport sample_report() {
  rep::ExperimentReport r;
  r.experiment = "paths";
  r.config_echo["seed"] = "42";
  r.config_echo["preset"] = "full";
  paths::EstimatorReport est;
  est.name = "diffusivity";
  est.estimate = 0.499;
  est.stderr_of_mean = 0.002;
  est.n_samples = 1000;
  est.attach_claim(0.5);
  r.add_estimator(est);
  r.add_result("slope", -0.5002);
  r.add_gate("diffusion_recovery", 0.5, 3.0);
  r.add_gate("exactness", 2.0, 1.0);  // deliberately failing gate
  return r;
}
}  // namespace

TEST_SUITE("report") {

TEST_CASE("gate comparisons and all_pass") {
  rep::ExperimentReport r;
  CHECK(r.add_gate("a", 1.0, 2.0, "<"));
  CHECK(r.add_gate("b", 2.0, 2.0, "<="));
  CHECK(r.add_gate("c", 3.0, 2.0, ">"));
  CHECK(r.add_gate("d", 2.0, 2.0, ">="));
  CHECK(r.all_pass());
  CHECK_FALSE(r.add_gate("e", 3.0, 2.0, "<"));
  CHECK_FALSE(r.all_pass());
  CHECK_THROWS_AS(r.add_gate("f", 1.0, 2.0, "!="), std::invalid_argument);
}

TEST_CASE("discrepancy sigma is |estimate - claim| / stderr") {
  paths::EstimatorReport est;
  est.estimate = 1.0;
  est.stderr_of_mean = 0.1;
  est.attach_claim(1.25);
  CHECK(est.discrepancy_sigma.value() == doctest::Approx(2.5));
}

TEST_CASE("JSON serialization is deterministic and round-trips") {
  const auto r = sample_report();
  const std::string a = rep::to_json_string(r);
  const std::string b = rep::to_json_string(r);
  CHECK(a == b);
  const auto parsed = rep::ExperimentReport::from_json(nlohmann::json::parse(a));
  CHECK(rep::to_json_string(parsed) == a);
  CHECK_FALSE(parsed.all_pass());
  CHECK(parsed.results[0].paper_claim.value() == 0.5);
}

TEST_CASE("report validates against the shipped schema") {
  std::ifstream in(FURTHLAB_SCHEMA_PATH);
  REQUIRE(in.good());
  nlohmann::json schema;
  in >> schema;
  const auto doc = sample_report().to_json();
  const auto errors = rep::validate_against_schema(doc, schema);
  for (const auto& e : errors) INFO(e);
  CHECK(errors.empty());

  SUBCASE("violations are caught") {
    auto bad = doc;
    bad.erase("experiment");
    bad["gates"][0]["comparison"] = "!=";
    const auto errs = rep::validate_against_schema(bad, schema);
    CHECK(errs.size() >= 2);
  }
}

TEST_CASE("CSV writer is RFC 4180: CRLF, quoting, round-trip doubles") {
  rep::CsvWriter csv({"name", "x"});
  csv.add_row({"plain", rep::CsvWriter::format_double(0.1)});
  csv.add_row({"needs,quote", "1"});
  csv.add_row({"has\"quote", "2"});
  const std::string text = csv.str();
  CHECK(text == "name,x\r\nplain,0.1\r\n\"needs,quote\",1\r\n\"has\"\"quote\",2\r\n");
  CHECK_THROWS_AS(csv.add_row({"too", "many", "cells"}), std::invalid_argument);
}

TEST_CASE("format_double round-trips arbitrary doubles") {
  CounterRng rng(5, 0);
  for (int i = 0; i < 500; ++i) {
    double v = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<double>(i % 40) - 20.0);
    const std::string s = rep::CsvWriter::format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(rep::CsvWriter::format_double(0.25) == "0.25");
  CHECK(rep::CsvWriter::format_double(1.0) == "1");
}

TEST_CASE("atomic write leaves no temp file behind") {
  const auto dir = std::filesystem::temp_directory_path() / "furthlab_report_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.txt";
  rep::write_text_atomic(path, "payload");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "payload");
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE

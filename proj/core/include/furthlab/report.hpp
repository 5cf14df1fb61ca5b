#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "furthlab/paths.hpp"

namespace furthlab::report {

struct ScalarResult {
  std::string name;
  double value = 0.0;
  std::optional<double> stderr_of_mean;
  std::optional<double> paper_claim;
  std::optional<double> discrepancy_sigma;
  std::optional<std::string> note;
};

struct Gate {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string comparison = "<";  // measured <op> tolerance
  bool pass = false;
};

/// Structured record of one experiment run. Serializes deterministically:
/// fixed array order, lexicographic object keys, shortest-round-trip doubles.
/// Wall time deliberately lives outside the JSON (stdout) so reruns with the
/// same config are byte-identical.
struct ExperimentReport {
  int schema_version = 1;
  std::string experiment;
  std::map<std::string, std::string> config_echo;
  std::vector<ScalarResult> results;
  std::vector<Gate> gates;

  bool all_pass() const;

  void add_result(ScalarResult r) { results.push_back(std::move(r)); }
  void add_result(const std::string& name, double value);
  void add_estimator(const paths::EstimatorReport& est);
  /// Adds a gate measuring `measured <op> tolerance`, returns pass.
  bool add_gate(const std::string& name, double measured, double tolerance,
                const std::string& comparison = "<");

  nlohmann::json to_json() const;
  static ExperimentReport from_json(const nlohmann::json& j);
};

/// Serializes with sorted keys and a trailing newline; stable byte-for-byte
/// for identical reports.
std::string to_json_string(const ExperimentReport& report);

/// Write-temp-then-rename.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

/// RFC 4180 CSV: CRLF line endings, quoting only when needed, doubles at
/// shortest round-trip precision.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);
  void add_row(const std::vector<std::string>& cells);
  void add_row(std::initializer_list<double> cells);
  std::string str() const;
  void write(const std::filesystem::path& path) const;

  static std::string format_double(double v);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Minimal JSON-schema structural validator (type / required / properties /
/// items / enum / additionalProperties). Returns the list of violations.
std::vector<std::string> validate_against_schema(const nlohmann::json& document,
                                                 const nlohmann::json& schema);

}  // namespace furthlab::report

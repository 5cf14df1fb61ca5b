#include "furthlab/report.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace furthlab::report {

using nlohmann::json;

bool ExperimentReport::all_pass() const {
  for (const auto& g : gates)
    if (!g.pass) return false;
  return true;
}

void ExperimentReport::add_result(const std::string& name, double value) {
  results.push_back(ScalarResult{name, value, {}, {}, {}, {}});
}

void ExperimentReport::add_estimator(const paths::EstimatorReport& est) {
  ScalarResult r;
  r.name = est.name;
  r.value = est.estimate;
  r.stderr_of_mean = est.stderr_of_mean;
  r.paper_claim = est.paper_claim;
  r.discrepancy_sigma = est.discrepancy_sigma;
  results.push_back(std::move(r));
}

bool ExperimentReport::add_gate(const std::string& name, double measured, double tolerance,
                                const std::string& comparison) {
  Gate g{name, measured, tolerance, comparison, false};
  if (comparison == "<") g.pass = measured < tolerance;
  else if (comparison == "<=") g.pass = measured <= tolerance;
  else if (comparison == ">") g.pass = measured > tolerance;
  else if (comparison == ">=") g.pass = measured >= tolerance;
  else throw std::invalid_argument("add_gate: unknown comparison " + comparison);
  gates.push_back(g);
  return g.pass;
}

json ExperimentReport::to_json() const {
  json j;
  j["schema_version"] = schema_version;
  j["experiment"] = experiment;
  j["config"] = json(config_echo);
  json results_j = json::array();
  for (const auto& r : results) {
    json rj;
    rj["name"] = r.name;
    rj["value"] = r.value;
    if (r.stderr_of_mean) rj["stderr"] = *r.stderr_of_mean;
    if (r.paper_claim) rj["paper_claim"] = *r.paper_claim;
    if (r.discrepancy_sigma) rj["discrepancy_sigma"] = *r.discrepancy_sigma;
    if (r.note) rj["note"] = *r.note;
    results_j.push_back(rj);
  }
  j["results"] = results_j;
  json gates_j = json::array();
  for (const auto& g : gates) {
    json gj;
    gj["name"] = g.name;
    gj["measured"] = g.measured;
    gj["tolerance"] = g.tolerance;
    gj["comparison"] = g.comparison;
    gj["pass"] = g.pass;
    gates_j.push_back(gj);
  }
  j["gates"] = gates_j;
  j["all_pass"] = all_pass();
  return j;
}

ExperimentReport ExperimentReport::from_json(const json& j) {
  ExperimentReport rep;
  rep.schema_version = j.at("schema_version").get<int>();
  rep.experiment = j.at("experiment").get<std::string>();
  for (const auto& [k, v] : j.at("config").items())
    rep.config_echo[k] = v.get<std::string>();
  for (const auto& rj : j.at("results")) {
    ScalarResult r;
    r.name = rj.at("name").get<std::string>();
    r.value = rj.at("value").get<double>();
    if (rj.contains("stderr")) r.stderr_of_mean = rj["stderr"].get<double>();
    if (rj.contains("paper_claim")) r.paper_claim = rj["paper_claim"].get<double>();
    if (rj.contains("discrepancy_sigma")) r.discrepancy_sigma = rj["discrepancy_sigma"].get<double>();
    if (rj.contains("note")) r.note = rj["note"].get<std::string>();
    rep.results.push_back(std::move(r));
  }
  for (const auto& gj : j.at("gates")) {
    Gate g;
    g.name = gj.at("name").get<std::string>();
    g.measured = gj.at("measured").get<double>();
    g.tolerance = gj.at("tolerance").get<double>();
    g.comparison = gj.at("comparison").get<std::string>();
    g.pass = gj.at("pass").get<bool>();
    rep.gates.push_back(std::move(g));
  }
  return rep;
}

std::string to_json_string(const ExperimentReport& report) {
  return report.to_json().dump(2) + "\n";
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_text_atomic: cannot open " + tmp);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write_text_atomic: write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}

namespace {
std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}
}  // namespace

std::string CsvWriter::format_double(double v) {
  // shortest representation that round-trips
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size())
    throw std::invalid_argument("CsvWriter: row width mismatch");
  rows_.push_back(cells);
}

void CsvWriter::add_row(std::initializer_list<double> cells) {
  std::vector<std::string> row;
  row.reserve(cells.size());
  for (double v : cells) row.push_back(format_double(v));
  add_row(row);
}

std::string CsvWriter::str() const {
  std::string out;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(columns_[i]);
  }
  out += "\r\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(row[i]);
    }
    out += "\r\n";
  }
  return out;
}

void CsvWriter::write(const std::filesystem::path& path) const {
  write_text_atomic(path, str());
}

namespace {

void validate_node(const json& doc, const json& schema, const std::string& where,
                   std::vector<std::string>& errors) {
  if (schema.contains("type")) {
    const auto type = schema["type"].get<std::string>();
    bool ok = true;
    if (type == "object") ok = doc.is_object();
    else if (type == "array") ok = doc.is_array();
    else if (type == "string") ok = doc.is_string();
    else if (type == "number") ok = doc.is_number();
    else if (type == "integer") ok = doc.is_number_integer();
    else if (type == "boolean") ok = doc.is_boolean();
    if (!ok) {
      errors.push_back(where + ": expected " + type);
      return;
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& v : schema["enum"])
      if (v == doc) { found = true; break; }
    if (!found) errors.push_back(where + ": value not in enum");
  }
  if (doc.is_object()) {
    if (schema.contains("required")) {
      for (const auto& req : schema["required"]) {
        if (!doc.contains(req.get<std::string>()))
          errors.push_back(where + ": missing required key '" + req.get<std::string>() + "'");
      }
    }
    if (schema.contains("properties")) {
      for (const auto& [key, sub] : schema["properties"].items()) {
        if (doc.contains(key)) validate_node(doc[key], sub, where + "/" + key, errors);
      }
      if (schema.contains("additionalProperties") &&
          schema["additionalProperties"].is_boolean() &&
          !schema["additionalProperties"].get<bool>()) {
        for (const auto& [key, _] : doc.items()) {
          if (!schema["properties"].contains(key))
            errors.push_back(where + ": unexpected key '" + key + "'");
        }
      }
    }
  }
  if (doc.is_array() && schema.contains("items")) {
    std::size_t i = 0;
    for (const auto& item : doc) {
      validate_node(item, schema["items"], where + "[" + std::to_string(i++) + "]", errors);
    }
  }
}

}  // namespace

std::vector<std::string> validate_against_schema(const json& document, const json& schema) {
  std::vector<std::string> errors;
  validate_node(document, schema, "$", errors);
  return errors;
}

}  // namespace furthlab::report

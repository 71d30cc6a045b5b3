#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sv/constructions.hpp"

namespace sv {

inline constexpr int kScenarioSchema = 1;

enum class ScenarioKind { Pipeline, ConfigCheck, PlaneCheck, DimsCheck, LatticeCheck };
std::string to_string(ScenarioKind k);
ScenarioKind parse_scenario_kind(const std::string& text);

struct Expectation {
  std::string value;
  std::string tag;  // stated | derived | trivial
};

struct Scenario {
  int schema = kScenarioSchema;
  std::string id;
  std::string title;
  ScenarioKind kind = ScenarioKind::Pipeline;
  Json payload;
  std::map<std::string, Expectation> expect;
};

/// Parse errors carry "line:col" (syntax) or a JSON pointer (schema).
Scenario parse_scenario(const std::string& text, const std::string& origin = "<input>");
Scenario load_scenario(const std::filesystem::path& path);
Json scenario_to_json(const Scenario& s);

struct Record {
  std::string name;
  std::string expected;
  std::string computed;
  AssertionStatus status = AssertionStatus::Fail;
  std::string anchor;
  std::string tag;

  bool operator==(const Record&) const = default;
};

struct ScenarioReport {
  std::string id;
  std::string source;  // file name, never a full path
  std::string kind;
  int exit_code = 0;
  std::string error;  // set when exit_code == 2
  std::vector<Record> records;
  std::map<std::string, std::string> diagnostics;

  bool operator==(const ScenarioReport&) const = default;
};

struct Summary {
  long scenarios = 0;
  long pass = 0;
  long fail = 0;
  long flagged = 0;
  long malformed = 0;
  std::vector<std::string> flagged_ids;  // distinct documented discrepancies

  bool operator==(const Summary&) const = default;
};

struct Report {
  std::string engine_version;
  std::vector<ScenarioReport> scenarios;
  Summary summary;
  int exit_code = 0;

  bool operator==(const Report&) const = default;
};

/// The values a scenario's payload produces, keyed like the expectations.
struct Evaluation {
  std::map<std::string, std::string> values;
  std::vector<Assertion> self_checks;  // only non-pass ones reach the report
  std::map<std::string, std::string> diagnostics;
};
Evaluation evaluate(const Scenario& s);

ScenarioReport run_scenario(const Scenario& s, const std::string& source);
/// Never throws for bad input: malformed files give exit code 2.
ScenarioReport run_scenario_file(const std::filesystem::path& path);

Report assemble(std::vector<ScenarioReport> parts);
Report verify_file(const std::filesystem::path& path);
/// All *.scn files under dir in file-name order, run on `jobs` threads.
Report run_corpus(const std::filesystem::path& dir, unsigned jobs = 1);
/// SURFVERIFY_CORPUS_DIR if set, else the bundled corpus.
std::filesystem::path default_corpus_dir();

Json report_to_json(const Report& r);
Report report_from_json(const Json& j);
std::string report_to_text(const Report& r);

/// Catalog entries with recomputed invariants, and the dimension table.
Json catalog_table();
Json dims_table();
std::string catalog_text();
std::string dims_text();

std::string engine_version();

}  // namespace sv

#include "support.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "sv/scenario.hpp"

using namespace sv;
namespace fs = std::filesystem;

namespace {

const fs::path kData = SV_TEST_DATA;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string parse_error(const std::string& text) {
  try {
    parse_scenario(text, "t.scn");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    return e.what();
  }
  return "no error";
}

// line:col of the first occurrence of `needle`, counted by hand
std::string where(const std::string& text, const std::string& needle) {
  const auto pos = text.find(needle);
  long line = 1, col = 1;
  for (std::size_t i = 0; i < pos; ++i) {
    if (text[i] == '\n') line++, col = 1;
    else col++;
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

std::string minimal(const std::string& expect_body = R"("k": {"value": "0", "tag": "derived"})") {
  return R"({"schema": 1, "id": "m", "kind": "lattice-check",
  "payload": {"check": "section-class", "pa": 1}, "expect": {)" + expect_body + "}}";
}

bool any_float(const Json& j) {
  if (j.is_number_float()) return true;
  if (j.is_structured())
    for (const auto& x : j)
      if (any_float(x)) return true;
  return false;
}

fs::path temp_dir(const std::string& name) {
  auto d = fs::temp_directory_path() / ("sv-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("syntax errors carry line and column") {
  const std::string bad = "{\n  \"schema\": 1,\n  \"id\": ]\n}";
  CHECK(parse_error(bad).rfind("t.scn:" + where(bad, "]"), 0) == 0);
  const auto trunc = slurp(kData / "truncated.scn");
  const auto msg = parse_error(trunc);
  CHECK(msg.find("t.scn:") == 0);
  CHECK(msg.find("unexpected end of input") != std::string::npos);
}

TEST_CASE("schema errors carry JSON pointers") {
  CHECK(parse_error(minimal(R"("k": {"value": "0", "tag": "derived", "w": 1})")).find("/expect/k/w: unknown field") !=
        std::string::npos);
  // '/' inside a key is escaped
  CHECK(parse_error(minimal(R"("a/b": {"value": "0", "tag": "guess"})")).find("/expect/a~1b/tag") !=
        std::string::npos);
  CHECK(parse_error(minimal(R"("k": {"tag": "derived"})")).find("/expect/k/value: missing") != std::string::npos);

  auto with = [](const std::string& from, const std::string& to) {
    auto s = minimal();
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  CHECK(parse_error(with("\"schema\": 1", "\"schema\": 2")).find("/schema: unsupported") != std::string::npos);
  CHECK(parse_error(with("\"schema\": 1", "\"schema\": \"1\"")).find("/schema") != std::string::npos);
  CHECK(parse_error(with("lattice-check", "lattice")).find("/kind") != std::string::npos);
  CHECK(parse_error(with("\"id\": \"m\",", "\"id\": \"m\", \"extra\": 0,")).find("/extra: unknown") !=
        std::string::npos);
  CHECK(parse_error(with("section-class", "volume")).find("/payload/check") != std::string::npos);
  CHECK(parse_error(with("\"pa\": 1", "\"pa\": \"1\"")).find("/payload/pa") != std::string::npos);
  CHECK(parse_error("[1, 2]").find("t.scn: /: ") != std::string::npos);

  const std::string pipe = R"({"schema":1,"id":"p","kind":"pipeline","payload":{"type":"E15"},"expect":{}})";
  CHECK(parse_error(pipe).find("/payload") != std::string::npos);
  const std::string fib = R"({"schema":1,"id":"p","kind":"pipeline","payload":{"type":"E13","fiber":"I9"},"expect":{}})";
  CHECK(parse_error(fib).find("/payload") != std::string::npos);
  const std::string germ = R"({"schema":1,"id":"g","kind":"plane-check","payload":{"germs":{"a/b":{"germ":"y^2+w"}}},"expect":{}})";
  CHECK(parse_error(germ).find("/payload/germs/a~1b") != std::string::npos);
  const std::string dims = R"({"schema":1,"id":"d","kind":"dims-check","payload":{"type":"Z13","variant":"case 9"},"expect":{}})";
  CHECK(parse_error(dims).find("/payload") != std::string::npos);
  const std::string cfg = R"({"schema":1,"id":"c","kind":"config-check","payload":{"catalog":"Q10"},"expect":{}})";
  CHECK(parse_error(cfg).find("/payload/catalog") != std::string::npos);
}

TEST_CASE("scenario round trip over the corpus") {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(default_corpus_dir())) {
    const auto s = load_scenario(e.path());
    const auto back = parse_scenario(scenario_to_json(s).dump(), "rt");
    CHECK(scenario_to_json(back) == scenario_to_json(s));
    CHECK(e.path().stem().string() == s.id);
    ++n;
  }
  CHECK(n > 30);
}

TEST_CASE("judging expectations") {
  Scenario s;
  s.id = "judge";
  s.kind = ScenarioKind::LatticeCheck;
  s.payload = {{"check", "noether"}, {"pipeline", {{"type", "E12"}}}};
  s.expect["X.c2"] = {"23", "stated"};
  s.expect["X.chi"] = {"2", "stated"};
  s.expect["X.nothing"] = {"0", "derived"};
  auto r = run_scenario(s, "judge.scn");
  REQUIRE(r.records.size() == 3);
  CHECK(r.records[0].name == "X.c2");
  CHECK(r.records[0].status == AssertionStatus::Flagged);
  CHECK(r.records[1].name == "X.chi");
  CHECK(r.records[1].status == AssertionStatus::Pass);
  CHECK(r.records[2].name == "X.nothing");
  CHECK(r.records[2].status == AssertionStatus::Fail);
  CHECK(r.records[2].computed == "<missing>");
  CHECK(r.exit_code == 1);

  // a different wrong value is never flagged
  s.expect.clear();
  s.expect["X.c2"] = {"22", "stated"};
  r = run_scenario(s, "judge.scn");
  CHECK(r.records.front().status == AssertionStatus::Fail);
}

TEST_CASE("fault injection names the broken adjunction") {
  const auto r = run_scenario_file(kData / "e12-bad-e1.scn");
  CHECK(r.exit_code == 1);
  bool named = false;
  for (const auto& rec : r.records)
    if (rec.name == "adjunction-integrality:E1") named = rec.status == AssertionStatus::Fail && rec.computed == "false";
  CHECK(named);
  CHECK(run_scenario_file(kData / "truncated.scn").exit_code == 2);
  CHECK(run_scenario_file(kData / "unknown-field.scn").exit_code == 2);
  CHECK(run_scenario_file(kData / "absent.scn").exit_code == 2);
}

TEST_CASE("plane checks against closed forms") {
  Scenario s;
  s.id = "ak";
  s.kind = ScenarioKind::PlaneCheck;
  s.payload = {{"germs", Json::object()}};
  for (int k = 1; k <= 7; ++k)
    s.payload["germs"]["a" + std::to_string(k)] = {{"germ", "y^2+z^" + std::to_string(k + 1)}};
  // same germ written in other letters
  s.payload["germs"]["uv"] = {{"germ", "u^2+v^4"}, {"variables", "uv"}};
  const auto ev = evaluate(s);
  for (int k = 1; k <= 7; ++k) {
    const std::string p = "a" + std::to_string(k) + ".";
    CHECK(ev.values.at(p + "type") == "A" + std::to_string(k));
    CHECK(ev.values.at(p + "milnor") == std::to_string(k));
    CHECK(ev.values.at(p + "tjurina") == std::to_string(k));
    CHECK(ev.values.at(p + "delta") == std::to_string((k + 1) / 2));
    CHECK(ev.values.at(p + "is-33") == "false");
  }
  CHECK(ev.values.at("uv.type") == "A3");
}

TEST_CASE("config checks") {
  for (const auto& e : catalog()) {
    if (e.kodaira_fiber.empty()) continue;
    Scenario s;
    s.id = "c";
    s.kind = ScenarioKind::ConfigCheck;
    s.payload = {{"catalog", e.label}};
    const auto ev = evaluate(s);
    CHECK(ev.values.at("Z^2") == std::to_string(e.z_squared));
    CHECK(ev.values.at("degree") == std::to_string(-e.z_squared));
    CHECK(ev.values.at("fiber") == e.kodaira_fiber);
    CHECK(ev.values.at("fiber-blowup-isomorphic") == "true");
    // the explicit configuration is recognized as the same entry
    s.payload = {{"configuration", configuration_to_json(e.config)}};
    CHECK(evaluate(s).values.at("catalog") == e.label);
  }
}

TEST_CASE("dims check exposes the refined row") {
  Scenario s;
  s.id = "d";
  s.kind = ScenarioKind::DimsCheck;
  s.payload = {{"type", "Z13"}, {"variant", "case 2"}};
  const auto ev = evaluate(s);
  CHECK(ev.values.at("dims:Z13/case 2") == "16");
  CHECK(ev.values.at("dims:Z13/case 2 without yx^4") == "15");
  CHECK(ev.values.at("transported") == "16");
  // affine parameters (projective system + scaling; no lambda here) minus the stabilizer
  const long params = std::stol(ev.values.at("parameters"));
  CHECK(params == std::stol(ev.values.at("linear-system")) + 1);
  CHECK(params - std::stol(ev.values.at("stabilizer")) == 16);
}

TEST_CASE("corpus report") {
  const auto r = run_corpus(default_corpus_dir(), 1);
  CHECK(r.exit_code == 0);
  CHECK(r.summary.fail == 0);
  CHECK(r.summary.malformed == 0);
  CHECK(r.summary.flagged_ids == std::vector<std::string>{"mhat-e13-e14", "noether-c2", "z13-case2-count"});
  for (const auto& s : r.scenarios) {
    CHECK(s.source.find('/') == std::string::npos);
    if (s.id == "e12") CHECK(s.records.size() == 14);
  }

  const auto j = report_to_json(r);
  CHECK_FALSE(any_float(j));
  CHECK(report_from_json(j) == r);
  CHECK(report_from_json(Json::parse(j.dump())) == r);
  CHECK(report_to_text(r).find("exit 0") != std::string::npos);

  const auto par = run_corpus(default_corpus_dir(), 6);
  CHECK(report_to_json(par).dump(2) == j.dump(2));
  CHECK(report_to_text(par) == report_to_text(r));
}

TEST_CASE("corpus follows the directory") {
  const auto dir = temp_dir("corpus");
  long n = 0;
  for (const auto& e : fs::directory_iterator(default_corpus_dir())) {
    if (e.path().filename() == "noether.scn" || e.path().filename().string().rfind("dims-", 0) == 0) continue;
    fs::copy_file(e.path(), dir / e.path().filename());
    ++n;
  }
  auto r = run_corpus(dir, 4);
  CHECK(r.summary.scenarios == n);
  fs::remove(dir / "e12.scn");
  r = run_corpus(dir, 4);
  CHECK(r.summary.scenarios == n - 1);
  // without the dimension rows that discrepancy disappears
  CHECK(r.summary.flagged_ids == std::vector<std::string>{"mhat-e13-e14", "noether-c2"});

  fs::copy_file(kData / "e12-bad-e1.scn", dir / "e12-bad-e1.scn");
  CHECK(run_corpus(dir, 4).exit_code == 1);
  fs::copy_file(kData / "truncated.scn", dir / "truncated.scn");
  r = run_corpus(dir, 4);
  CHECK(r.exit_code == 2);
  CHECK(r.summary.malformed == 1);
  fs::remove_all(dir);
  CHECK_THROWS_AS(run_corpus(dir, 1), Error);
}

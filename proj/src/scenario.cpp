#include "sv/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "sv/plane_curves.hpp"

#ifndef SV_CORPUS_DIR
#define SV_CORPUS_DIR "corpus"
#endif

namespace sv {

namespace {

std::string str(const Rational& r) { return to_string(r); }
std::string str(long v) { return std::to_string(v); }
std::string str(bool b) { return b ? "true" : "false"; }

std::string seq_str(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

std::string opt_str(const std::optional<long>& v) { return v ? std::to_string(*v) : "unknown"; }

// RFC 6901 escaping; expectation names contain '/'.
std::string pointer_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

[[noreturn]] void schema_error(const std::string& origin, const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::Parse, origin + ": " + (pointer.empty() ? "/" : pointer) + ": " + what);
}

void only_fields(const Json& j, std::initializer_list<const char*> allowed, const std::string& origin,
                 const std::string& pointer) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) schema_error(origin, pointer + "/" + pointer_token(key), "unknown field");
  }
}

const Json& need(const Json& j, const char* key, const std::string& origin, const std::string& pointer) {
  if (!j.contains(key)) schema_error(origin, pointer + "/" + key, "missing required field");
  return j[key];
}

std::string need_string(const Json& j, const char* key, const std::string& origin, const std::string& pointer) {
  const Json& v = need(j, key, origin, pointer);
  if (!v.is_string()) schema_error(origin, pointer + "/" + key, "expected a string");
  return v.get<std::string>();
}

long need_integer(const Json& j, const char* key, const std::string& origin, const std::string& pointer) {
  const Json& v = need(j, key, origin, pointer);
  if (!v.is_number_integer()) schema_error(origin, pointer + "/" + key, "expected an integer");
  return v.get<long>();
}

// Point coordinates may be integers or "p/q" strings.
MarkedPoint point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::Parse, "a point needs three coordinates");
  std::array<Rational, 3> c;
  for (std::size_t i = 0; i < 3; ++i) {
    if (j[i].is_number_integer()) c[i] = make_rational(j[i].get<long>());
    else if (j[i].is_string()) c[i] = parse_rational(j[i].get<std::string>());
    else throw Error(ErrorCode::Parse, "coordinates must be integers or rational strings");
  }
  return MarkedPoint(c[0], c[1], c[2]);
}

struct GermSpec {
  Germ germ;
  int depth = 8;
  std::optional<std::pair<Germ, Germ>> factors;
};

GermSpec germ_spec_from_json(const Json& j, const std::string& origin, const std::string& pointer) {
  if (!j.is_object()) schema_error(origin, pointer, "expected an object");
  only_fields(j, {"germ", "variables", "form", "point", "depth", "factors"}, origin, pointer);
  GermSpec g;
  std::array<char, 2> names{'y', 'z'};
  if (j.contains("variables")) {
    const Json& v = j["variables"];
    if (!v.is_string() || v.get<std::string>().size() != 2)
      schema_error(origin, pointer + "/variables", "expected two variable letters");
    names = {v.get<std::string>()[0], v.get<std::string>()[1]};
  }
  try {
    if (j.contains("germ") == j.contains("form"))
      schema_error(origin, pointer, "give exactly one of 'germ' and 'form'");
    if (j.contains("germ")) {
      g.germ = parse_germ(need_string(j, "germ", origin, pointer), names);
    } else {
      const auto f = parse_form(need_string(j, "form", origin, pointer));
      g.germ = f.local_germ(point_from_json(need(j, "point", origin, pointer)));
    }
    if (j.contains("depth")) g.depth = static_cast<int>(need_integer(j, "depth", origin, pointer));
    if (g.depth < 1 || g.depth > 24) schema_error(origin, pointer + "/depth", "depth must lie in 1..24");
    if (j.contains("factors")) {
      const Json& fs = j["factors"];
      if (!fs.is_array() || fs.size() != 2 || !fs[0].is_string() || !fs[1].is_string())
        schema_error(origin, pointer + "/factors", "expected two germ strings");
      g.factors = {parse_germ(fs[0].get<std::string>(), names), parse_germ(fs[1].get<std::string>(), names)};
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse && std::string(e.what()).rfind(origin + ":", 0) == 0) throw;
    schema_error(origin, pointer, e.what());
  }
  return g;
}

// Validates the payload for its kind; throws Parse with a pointer.
void validate_payload(const Scenario& s, const std::string& origin) {
  const Json& p = s.payload;
  const std::string at = "/payload";
  auto wrap = [&](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      if (std::string(e.what()).rfind(origin + ":", 0) == 0) throw;
      schema_error(origin, at, e.what());
    } catch (const nlohmann::json::exception& e) {
      schema_error(origin, at, e.what());
    }
  };
  switch (s.kind) {
    case ScenarioKind::Pipeline:
      wrap([&] { pipeline_spec_from_json(p); });
      break;
    case ScenarioKind::ConfigCheck:
      only_fields(p, {"catalog", "configuration"}, origin, at);
      if (p.contains("catalog") == p.contains("configuration"))
        schema_error(origin, at, "give exactly one of 'catalog' and 'configuration'");
      if (p.contains("catalog")) {
        const auto label = need_string(p, "catalog", origin, at);
        const auto& cat = catalog();
        if (std::none_of(cat.begin(), cat.end(), [&](const CatalogEntry& e) { return e.label == label; }))
          schema_error(origin, at + "/catalog", "unknown catalog label '" + label + "'");
      } else {
        wrap([&] { configuration_from_json(p["configuration"]); });
      }
      break;
    case ScenarioKind::PlaneCheck: {
      only_fields(p, {"germs"}, origin, at);
      const Json& g = need(p, "germs", origin, at);
      if (!g.is_object() || g.empty()) schema_error(origin, at + "/germs", "expected a non-empty object");
      for (const auto& [label, spec] : g.items())
        germ_spec_from_json(spec, origin, at + "/germs/" + pointer_token(label));
      break;
    }
    case ScenarioKind::DimsCheck: {
      only_fields(p, {"type", "variant", "transport", "family"}, origin, at);
      const auto type = need_string(p, "type", origin, at);
      const auto variant = need_string(p, "variant", origin, at);
      for (const char* flag : {"transport", "family"})
        if (p.contains(flag) && !p[flag].is_boolean()) schema_error(origin, at + "/" + flag, "expected a boolean");
      wrap([&] { find_family(type, variant); });
      break;
    }
    case ScenarioKind::LatticeCheck: {
      only_fields(p, {"check", "pa", "pipeline"}, origin, at);
      const auto check = need_string(p, "check", origin, at);
      if (check != "section-class" && check != "riemann-hurwitz" && check != "noether")
        schema_error(origin, at + "/check", "unknown check '" + check + "'");
      if (check != "noether") need_integer(p, "pa", origin, at);
      if (check == "noether" && !p.contains("pipeline")) schema_error(origin, at + "/pipeline", "noether needs a pipeline");
      if (p.contains("pipeline")) {
        const Json& pp = p["pipeline"];
        try {
          pipeline_spec_from_json(pp);
        } catch (const Error& e) {
          schema_error(origin, at + "/pipeline", e.what());
        }
      }
      break;
    }
  }
}

std::size_t line_col_offset(const std::string& text, std::size_t byte, std::size_t& col) {
  std::size_t line = 1;
  col = 1;
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return line;
}

// Kodaira fiber underneath a catalog entry: undo the smooth-point blow-ups.
CurveConfiguration base_fiber(const CatalogEntry& e) {
  std::vector<Component> comps = e.config.components();
  for (std::size_t i = 0; i < comps.size() && i < e.blowups.size(); ++i) comps[i].self_int += e.blowups[i];
  return CurveConfiguration(comps, e.config.contacts(), e.config.concurrent());
}

std::string class_name(EllipticClass c) {
  switch (c) {
    case EllipticClass::MinimallyElliptic: return "minimally-elliptic";
    case EllipticClass::Rational: return "rational";
    case EllipticClass::NotElliptic: return "not-elliptic";
  }
  return "?";
}

void eval_config(const Scenario& s, Evaluation& ev) {
  const Json& p = s.payload;
  CurveConfiguration config;
  std::optional<CatalogEntry> entry;
  if (p.contains("catalog")) {
    for (const auto& e : catalog())
      if (e.label == p["catalog"].get<std::string>()) entry = e;
    config = entry->config;
  } else {
    config = configuration_from_json(p["configuration"]);
    entry = match_catalog(config);
  }
  const bool nd = is_negative_definite(config);
  ev.values["components"] = str(long(config.size()));
  ev.values["negative-definite"] = str(nd);
  ev.values["catalog"] = entry ? entry->label : "none";
  if (!nd) return;
  const auto verdict = classify_minimally_elliptic(config);
  const auto& z = verdict.cycle;
  ev.values["Z^2"] = str(z.self_intersection);
  ev.values["K.Z"] = str(z.canonical_degree);
  ev.values["pa(Z)"] = str(z.arithmetic_genus);
  std::vector<int> coeffs(z.coeffs.begin(), z.coeffs.end());
  ev.values["fundamental-cycle"] = seq_str(coeffs);
  ev.values["class"] = class_name(verdict.kind);
  if (verdict.kind == EllipticClass::MinimallyElliptic) ev.values["degree"] = str(verdict.degree);
  if (!entry) return;
  const std::string anchor = "table:exceptional-configurations";
  auto self = [&](const std::string& name, const std::string& expected) {
    const auto& computed = ev.values[name];
    ev.self_checks.push_back({name, expected, computed, judge(name, expected, computed), anchor});
  };
  self("Z^2", str(entry->z_squared));
  self("K.Z", str(entry->k_dot_z));
  if (!entry->kodaira_fiber.empty()) {
    const auto fiber = recognize_kodaira_fiber(base_fiber(*entry));
    ev.values["fiber"] = fiber ? fiber->label() : "none";
    ev.values["equation"] = entry->equation;
    std::vector<int> b(entry->blowups.begin(), entry->blowups.end());
    ev.values["blowups"] = seq_str(b);
    bool iso = false;
    if (fiber) iso = isomorphic(blown_up_fiber(base_fiber(*entry), entry->blowups), config);
    ev.values["fiber-blowup-isomorphic"] = str(iso);
    self("fiber", entry->kodaira_fiber);
    self("fiber-blowup-isomorphic", "true");
  }
}

void eval_plane(const Scenario& s, Evaluation& ev) {
  for (const auto& [label, spec] : s.payload["germs"].items()) {
    const auto g = germ_spec_from_json(spec, "<payload>", "");
    const std::string k = label + ".";
    const auto tree = mult_sequence(g.germ, g.depth);
    ev.values[k + "mult-sequence"] = seq_str(principal_sequence(tree));
    const auto prof = detect_33_point(g.germ);
    ev.values[k + "is-33"] = str(prof.is_33);
    if (prof.is_33) ev.values[k + "n"] = str(long{prof.n});
    ev.values[k + "type"] = an_type_at(g.germ).label();
    ev.values[k + "milnor"] = opt_str(milnor_number(g.germ));
    ev.values[k + "tjurina"] = opt_str(tjurina_number(g.germ));
    ev.values[k + "delta"] = delta_complete(tree) ? str(delta_of(tree)) : "incomplete";
    ev.diagnostics[k + "tree"] = to_string(tree);
    if (g.factors) {
      const auto d = check_decomposition(g.germ, g.factors->first, g.factors->second);
      ev.values[k + "factors.product"] = str(d.product_matches);
      ev.values[k + "factors.intersection"] = opt_str(d.intersection);
      ev.values[k + "factors.first-type"] = d.first_type.label();
    }
  }
}

// A fixed projectivity of determinant 3 used for the equivariance check.
Matrix transport_matrix() {
  return Matrix::from_rows({{make_rational(1), make_rational(1), make_rational(0)},
                            {make_rational(0), make_rational(1), make_rational(2)},
                            {make_rational(1), make_rational(0), make_rational(1)}});
}

void family_values(const SexticFamily& fam, Evaluation& ev) {
  const std::string anchor = "table:ZW-dimension-counts";
  const auto chk = check_family(fam);
  auto self = [&](const std::string& name, bool ok) {
    ev.values[name] = str(ok);
    ev.self_checks.push_back({name, "true", str(ok), judge(name, "true", str(ok)), anchor});
  };
  std::vector<int> want = fam.pattern;
  want.push_back(0);
  bool patterns = chk.lambda_stable;
  for (const auto& pt : chk.patterns) patterns = patterns && pt == want;
  self("family.restriction-pattern", patterns);
  if (fam.singular_an) {
    bool marks = !chk.singular_types.empty();
    for (const auto& ty : chk.singular_types) marks = marks && ty.label() == "A" + std::to_string(*fam.singular_an);
    self("family.A-marks", marks);
  }
  bool tau = true;
  for (std::size_t i = 0; i < chk.global_tau.size(); ++i)
    tau = tau && chk.global_tau[i] && *chk.global_tau[i] == chk.local_tau_sum[i];
  self("family.smooth-elsewhere", tau);
  ev.diagnostics["family.member-count-agrees"] = str(chk.count == orbit_dim_count(fam));
}

void eval_dims(const Scenario& s, Evaluation& ev) {
  const Json& p = s.payload;
  const auto& fam = find_family(p["type"].get<std::string>(), p["variant"].get<std::string>());
  const std::string key = "dims:" + fam.type + "/" + fam.variant;
  const long count = orbit_dim_count(fam);
  ev.values[key] = str(count);
  ev.values["parameters"] = str(fam.parameter_count());
  ev.values["linear-system"] = str(linear_system_dim(fam.conditions()));
  ev.values["stabilizer"] = str(stabilizer_dim(fam.points, fam.lines));
  ev.self_checks.push_back({key, str(fam.table_count), str(count), judge(key, str(fam.table_count), str(count)),
                            "table:ZW-dimension-counts"});
  if (p.value("transport", true)) ev.values["transported"] = str(orbit_dim_count_transported(fam, transport_matrix()));
  // refinements of the same row, e.g. a variant with one monomial dropped
  for (const auto& other : sextic_families())
    if (other.type == fam.type && other.variant.rfind(fam.variant + " ", 0) == 0)
      ev.values["dims:" + other.type + "/" + other.variant] = str(orbit_dim_count(other));
  if (p.value("family", false)) family_values(fam, ev);
}

void absorb_pipeline(const PipelineResult& r, Evaluation& ev) {
  for (const auto& [k, v] : r.values) ev.values[k] = v;
  for (const auto& a : r.assertions) {
    ev.values.try_emplace(a.name, a.computed);
    ev.self_checks.push_back(a);
  }
}

void eval_lattice(const Scenario& s, Evaluation& ev) {
  const Json& p = s.payload;
  const auto check = p["check"].get<std::string>();
  if (p.contains("pipeline")) absorb_pipeline(run_pipeline(pipeline_spec_from_json(p["pipeline"])), ev);
  if (check == "section-class") {
    const auto sc = section_class(p["pa"].get<long>());
    ev.values["k"] = str(sc.k);
    ev.values["hirzebruch-n"] = str(sc.hirzebruch_n);
    ev.values["base"] = "F" + std::to_string(sc.hirzebruch_n);
    ev.values["class"] = "C_inf + " + str(sc.k) + "Gamma";
  } else if (check == "riemann-hurwitz") {
    ev.values["degree"] = str(riemann_hurwitz_degree(p["pa"].get<long>()));
  }
}

Json record_to_json(const Record& r) {
  return {{"name", r.name}, {"expected", r.expected}, {"computed", r.computed},
          {"status", to_string(r.status)}, {"anchor", r.anchor}, {"tag", r.tag}};
}

Record record_from_json(const Json& j) {
  return {j.at("name"), j.at("expected"), j.at("computed"), parse_assertion_status(j.at("status")),
          j.at("anchor"), j.at("tag")};
}

long as_long(const Json& j) { return std::stol(j.get<std::string>()); }

}  // namespace

std::string to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Pipeline: return "pipeline";
    case ScenarioKind::ConfigCheck: return "config-check";
    case ScenarioKind::PlaneCheck: return "plane-check";
    case ScenarioKind::DimsCheck: return "dims-check";
    case ScenarioKind::LatticeCheck: return "lattice-check";
  }
  return "?";
}

ScenarioKind parse_scenario_kind(const std::string& text) {
  for (auto k : {ScenarioKind::Pipeline, ScenarioKind::ConfigCheck, ScenarioKind::PlaneCheck, ScenarioKind::DimsCheck,
                 ScenarioKind::LatticeCheck})
    if (to_string(k) == text) return k;
  throw Error(ErrorCode::Parse, "unknown scenario kind '" + text + "'");
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t col = 0;
    const std::size_t line = line_col_offset(text, e.byte, col);
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw Error(ErrorCode::Parse, origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
  if (!j.is_object()) schema_error(origin, "", "a scenario must be a JSON object");
  only_fields(j, {"schema", "id", "title", "kind", "payload", "expect"}, origin, "");
  Scenario s;
  const long schema = need_integer(j, "schema", origin, "");
  if (schema != kScenarioSchema)
    schema_error(origin, "/schema", "unsupported schema version " + std::to_string(schema));
  s.schema = static_cast<int>(schema);
  s.id = need_string(j, "id", origin, "");
  if (s.id.empty()) schema_error(origin, "/id", "empty id");
  if (j.contains("title")) s.title = need_string(j, "title", origin, "");
  try {
    s.kind = parse_scenario_kind(need_string(j, "kind", origin, ""));
  } catch (const Error& e) {
    if (std::string(e.what()).rfind(origin + ":", 0) == 0) throw;
    schema_error(origin, "/kind", e.what());
  }
  s.payload = need(j, "payload", origin, "");
  if (!s.payload.is_object()) schema_error(origin, "/payload", "expected an object");
  const Json& ex = need(j, "expect", origin, "");
  if (!ex.is_object()) schema_error(origin, "/expect", "expected an object");
  for (const auto& [name, e] : ex.items()) {
    const std::string at = "/expect/" + pointer_token(name);
    if (!e.is_object()) schema_error(origin, at, "expected an object");
    only_fields(e, {"value", "tag"}, origin, at);
    Expectation x;
    x.value = need_string(e, "value", origin, at);
    x.tag = need_string(e, "tag", origin, at);
    if (x.tag != "stated" && x.tag != "derived" && x.tag != "trivial")
      schema_error(origin, at + "/tag", "tag must be stated, derived or trivial");
    s.expect[name] = x;
  }
  validate_payload(s, origin);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.filename().string());
}

Json scenario_to_json(const Scenario& s) {
  Json expect = Json::object();
  for (const auto& [name, e] : s.expect) expect[name] = {{"value", e.value}, {"tag", e.tag}};
  Json j = {{"schema", s.schema}, {"id", s.id}, {"kind", to_string(s.kind)}, {"payload", s.payload}, {"expect", expect}};
  if (!s.title.empty()) j["title"] = s.title;
  return j;
}

Evaluation evaluate(const Scenario& s) {
  Evaluation ev;
  switch (s.kind) {
    case ScenarioKind::Pipeline: absorb_pipeline(run_pipeline(pipeline_spec_from_json(s.payload)), ev); break;
    case ScenarioKind::ConfigCheck: eval_config(s, ev); break;
    case ScenarioKind::PlaneCheck: eval_plane(s, ev); break;
    case ScenarioKind::DimsCheck: eval_dims(s, ev); break;
    case ScenarioKind::LatticeCheck: eval_lattice(s, ev); break;
  }
  return ev;
}

ScenarioReport run_scenario(const Scenario& s, const std::string& source) {
  ScenarioReport r;
  r.id = s.id;
  r.source = source;
  r.kind = to_string(s.kind);
  Evaluation ev;
  try {
    ev = evaluate(s);
  } catch (const std::exception& e) {
    r.records.push_back({"evaluation", "ok", std::string("error: ") + e.what(), AssertionStatus::Fail,
                         "scenario:" + s.id, "engine"});
    r.exit_code = 1;
    return r;
  }
  std::map<std::string, std::string> anchors;
  for (const auto& a : ev.self_checks) anchors.try_emplace(a.name, a.anchor);
  for (const auto& [name, e] : s.expect) {
    auto it = ev.values.find(name);
    const std::string computed = it == ev.values.end() ? "<missing>" : it->second;
    auto an = anchors.find(name);
    r.records.push_back({name, e.value, computed, judge(name, e.value, computed),
                         an == anchors.end() ? "scenario:" + s.id : an->second, e.tag});
  }
  std::set<std::string> seen;
  for (const auto& a : ev.self_checks) {
    if (a.status == AssertionStatus::Pass || s.expect.count(a.name) || !seen.insert(a.name).second) continue;
    r.records.push_back({a.name, a.expected, a.computed, a.status, a.anchor, "engine"});
  }
  for (const auto& [k, v] : ev.values)
    if (!s.expect.count(k)) r.diagnostics[k] = v;
  for (const auto& [k, v] : ev.diagnostics) r.diagnostics[k] = v;
  for (const auto& rec : r.records)
    if (rec.status == AssertionStatus::Fail) r.exit_code = 1;
  return r;
}

ScenarioReport run_scenario_file(const std::filesystem::path& path) {
  const std::string source = path.filename().string();
  try {
    return run_scenario(load_scenario(path), source);
  } catch (const std::exception& e) {
    ScenarioReport r;
    r.id = path.stem().string();
    r.source = source;
    r.kind = "malformed";
    r.exit_code = 2;
    r.error = e.what();
    return r;
  }
}

Report assemble(std::vector<ScenarioReport> parts) {
  Report rep;
  rep.engine_version = engine_version();
  std::set<std::string> flagged;
  for (const auto& p : parts) {
    ++rep.summary.scenarios;
    rep.exit_code = std::max(rep.exit_code, p.exit_code);
    if (p.exit_code == 2) {
      ++rep.summary.malformed;
      continue;
    }
    for (const auto& rec : p.records) {
      if (rec.status == AssertionStatus::Pass) ++rep.summary.pass;
      else if (rec.status == AssertionStatus::Fail) ++rep.summary.fail;
      else {
        ++rep.summary.flagged;
        if (const auto* d = match_discrepancy(rec.name, rec.expected, rec.computed)) flagged.insert(d->id);
      }
    }
  }
  rep.summary.flagged_ids.assign(flagged.begin(), flagged.end());
  rep.scenarios = std::move(parts);
  return rep;
}

Report verify_file(const std::filesystem::path& path) { return assemble({run_scenario_file(path)}); }

Report run_corpus(const std::filesystem::path& dir, unsigned jobs) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw Error(ErrorCode::Io, "corpus directory not found: " + dir.string());
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".scn") files.push_back(entry.path());
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
  std::vector<ScenarioReport> parts(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) parts[i] = run_scenario_file(files[i]);
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(files.size(), 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return assemble(std::move(parts));
}

std::filesystem::path default_corpus_dir() {
  if (const char* env = std::getenv("SURFVERIFY_CORPUS_DIR"); env && *env) return env;
  return SV_CORPUS_DIR;
}

Json report_to_json(const Report& r) {
  Json scenarios = Json::array();
  for (const auto& s : r.scenarios) {
    Json recs = Json::array();
    for (const auto& rec : s.records) recs.push_back(record_to_json(rec));
    Json j = {{"id", s.id}, {"source", s.source}, {"kind", s.kind}, {"exit_code", std::to_string(s.exit_code)},
              {"records", recs}, {"diagnostics", s.diagnostics}};
    if (!s.error.empty()) j["error"] = s.error;
    scenarios.push_back(j);
  }
  const auto& m = r.summary;
  Json summary = {{"scenarios", std::to_string(m.scenarios)}, {"pass", std::to_string(m.pass)},
                  {"fail", std::to_string(m.fail)},           {"flagged", std::to_string(m.flagged)},
                  {"malformed", std::to_string(m.malformed)}, {"flagged_ids", m.flagged_ids}};
  return {{"engine", {{"name", "surfverify"}, {"version", r.engine_version}}},
          {"exit_code", std::to_string(r.exit_code)},
          {"scenarios", scenarios},
          {"summary", summary}};
}

Report report_from_json(const Json& j) {
  try {
    Report r;
    r.engine_version = j.at("engine").at("version");
    r.exit_code = static_cast<int>(as_long(j.at("exit_code")));
    for (const auto& s : j.at("scenarios")) {
      ScenarioReport p;
      p.id = s.at("id");
      p.source = s.at("source");
      p.kind = s.at("kind");
      p.exit_code = static_cast<int>(as_long(s.at("exit_code")));
      p.error = s.value("error", std::string());
      for (const auto& rec : s.at("records")) p.records.push_back(record_from_json(rec));
      p.diagnostics = s.at("diagnostics").get<std::map<std::string, std::string>>();
      r.scenarios.push_back(std::move(p));
    }
    const Json& m = j.at("summary");
    r.summary = {as_long(m.at("scenarios")), as_long(m.at("pass")),    as_long(m.at("fail")),
                 as_long(m.at("flagged")),   as_long(m.at("malformed")), m.at("flagged_ids")};
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed report: ") + e.what());
  } catch (const std::logic_error& e) {
    throw Error(ErrorCode::Parse, std::string("malformed report: ") + e.what());
  }
}

std::string report_to_text(const Report& r) {
  std::ostringstream out;
  out << "surfverify " << r.engine_version << "\n";
  for (const auto& s : r.scenarios) {
    long pass = 0, fail = 0, flagged = 0;
    for (const auto& rec : s.records) {
      if (rec.status == AssertionStatus::Pass) ++pass;
      else if (rec.status == AssertionStatus::Fail) ++fail;
      else ++flagged;
    }
    const char* verdict = s.exit_code == 2 ? "MALFORMED" : s.exit_code == 1 ? "FAIL" : "PASS";
    out << "[" << verdict << "] " << s.id << " (" << s.source << ", " << s.kind << ")";
    if (s.exit_code == 2) {
      out << "\n    " << s.error << "\n";
      continue;
    }
    out << ": " << pass << " pass, " << fail << " fail, " << flagged << " flagged\n";
    for (const auto& rec : s.records) {
      if (rec.status == AssertionStatus::Pass) continue;
      out << "    " << (rec.status == AssertionStatus::Fail ? "FAIL    " : "FLAGGED ") << rec.name << ": expected "
          << rec.expected << ", computed " << rec.computed << " [" << rec.anchor << "]";
      if (const auto* d = match_discrepancy(rec.name, rec.expected, rec.computed)) out << " {" << d->id << "}";
      out << "\n";
    }
  }
  const auto& m = r.summary;
  out << "scenarios " << m.scenarios << ", assertions " << m.pass << " pass / " << m.fail << " fail / " << m.flagged
      << " flagged, malformed " << m.malformed;
  if (!m.flagged_ids.empty()) {
    out << ", discrepancies:";
    for (const auto& id : m.flagged_ids) out << " " << id;
  }
  out << "\nexit " << r.exit_code << "\n";
  return out.str();
}

Json catalog_table() {
  Json rows = Json::array();
  for (const auto& e : catalog()) {
    if (e.kodaira_fiber.empty()) continue;
    const auto verdict = classify_minimally_elliptic(e.config);
    const auto fiber = recognize_kodaira_fiber(base_fiber(e));
    std::vector<int> coeffs(verdict.cycle.coeffs.begin(), verdict.cycle.coeffs.end());
    Json comps = Json::array();
    for (const auto& c : e.config.components()) comps.push_back(c.name + "(" + std::to_string(c.self_int) + ")");
    rows.push_back({{"label", e.label},
                    {"equation", e.equation},
                    {"components", comps},
                    {"fiber", e.kodaira_fiber},
                    {"fiber_recognized", fiber ? fiber->label() : "none"},
                    {"blowups", seq_str(e.blowups)},
                    {"Z^2", str(verdict.cycle.self_intersection)},
                    {"K.Z", str(verdict.cycle.canonical_degree)},
                    {"pa(Z)", str(verdict.cycle.arithmetic_genus)},
                    {"fundamental_cycle", seq_str(coeffs)},
                    {"class", class_name(verdict.kind)},
                    {"degree", str(verdict.degree)}});
  }
  return rows;
}

Json dims_table() {
  Json rows = Json::array();
  for (const auto& f : sextic_families()) {
    const long count = orbit_dim_count(f);
    const std::string key = "dims:" + f.type + "/" + f.variant;
    Json row = {{"type", f.type},
                {"variant", f.variant},
                {"computed", str(count)},
                {"parameters", str(f.parameter_count())},
                {"stabilizer", str(stabilizer_dim(f.points, f.lines))}};
    if (f.table_count > 0) {
      row["stated"] = str(f.table_count);
      row["status"] = to_string(judge(key, str(f.table_count), str(count)));
    }
    if (!f.discrepancy.empty()) row["discrepancy"] = f.discrepancy;
    rows.push_back(row);
  }
  return rows;
}

std::string catalog_text() {
  std::ostringstream out;
  for (const auto& row : catalog_table()) {
    out << row["label"].get<std::string>() << "  " << row["equation"].get<std::string>() << "\n    curves";
    for (const auto& c : row["components"]) out << " " << c.get<std::string>();
    out << "\n    fiber " << row["fiber"].get<std::string>() << " (recognized " << row["fiber_recognized"].get<std::string>()
        << "), blow-ups " << row["blowups"].get<std::string>() << "\n    Z " << row["fundamental_cycle"].get<std::string>()
        << ", Z^2 " << row["Z^2"].get<std::string>() << ", K.Z " << row["K.Z"].get<std::string>() << ", pa "
        << row["pa(Z)"].get<std::string>() << ", " << row["class"].get<std::string>() << "\n";
  }
  return out.str();
}

std::string dims_text() {
  std::ostringstream out;
  for (const auto& row : dims_table()) {
    out << row["type"].get<std::string>() << " " << row["variant"].get<std::string>() << ": computed "
        << row["computed"].get<std::string>();
    if (row.contains("stated"))
      out << ", stated " << row["stated"].get<std::string>() << " (" << row["status"].get<std::string>() << ")";
    if (row.contains("discrepancy")) out << " {" << row["discrepancy"].get<std::string>() << "}";
    out << "\n";
  }
  return out.str();
}

std::string engine_version() { return SV_VERSION; }

}  // namespace sv

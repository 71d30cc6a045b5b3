#include "sv/surfverify.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "sv/scenario.hpp"

struct sv_report {
  sv::Report report;
  std::string json;
  std::string text;
};

namespace {

thread_local std::string last_error;

template <class Fn>
sv_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return SV_OK;
  } catch (const sv::Error& e) {
    last_error = e.what();
    return static_cast<sv_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return SV_INTERNAL;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sv_status null_arg(const char* what) {
  last_error = std::string(what) + " must not be NULL";
  return SV_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* sv_version(void) {
  static const std::string v = sv::engine_version();
  return v.c_str();
}

const char* sv_last_error(void) { return last_error.c_str(); }

sv_status sv_verify_file(const char* path, sv_report** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new sv_report{sv::verify_file(path), {}, {}}; });
}

sv_status sv_verify_text(const char* text, const char* origin, sv_report** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    const std::string name = origin ? origin : "<input>";
    sv::ScenarioReport part;
    try {
      part = sv::run_scenario(sv::parse_scenario(text, name), name);
    } catch (const sv::Error& e) {
      part.id = name;
      part.source = name;
      part.kind = "malformed";
      part.exit_code = 2;
      part.error = e.what();
    }
    *out = new sv_report{sv::assemble({part}), {}, {}};
  });
}

sv_status sv_run_corpus(const char* dir, unsigned jobs, sv_report** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    const auto d = dir ? std::filesystem::path(dir) : sv::default_corpus_dir();
    *out = new sv_report{sv::run_corpus(d, jobs), {}, {}};
  });
}

int sv_report_exit_code(const sv_report* report) { return report ? report->report.exit_code : 2; }

size_t sv_report_scenario_count(const sv_report* report) { return report ? report->report.scenarios.size() : 0; }

const char* sv_report_json(sv_report* report) {
  if (!report) return nullptr;
  if (report->json.empty()) report->json = sv::report_to_json(report->report).dump(2) + "\n";
  return report->json.c_str();
}

const char* sv_report_text(sv_report* report) {
  if (!report) return nullptr;
  if (report->text.empty()) report->text = sv::report_to_text(report->report);
  return report->text.c_str();
}

void sv_report_free(sv_report* report) { delete report; }

char* sv_catalog_json(void) {
  char* out = nullptr;
  guarded([&] { out = dup(sv::catalog_table().dump(2) + "\n"); });
  return out;
}

char* sv_dims_json(void) {
  char* out = nullptr;
  guarded([&] { out = dup(sv::dims_table().dump(2) + "\n"); });
  return out;
}

char* sv_catalog_text(void) {
  char* out = nullptr;
  guarded([&] { out = dup(sv::catalog_text()); });
  return out;
}

char* sv_dims_text(void) {
  char* out = nullptr;
  guarded([&] { out = dup(sv::dims_text()); });
  return out;
}

void sv_string_free(char* s) { std::free(s); }

}  // extern "C"

// Thin front end over the C API.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <string>
#include <thread>

#include "sv/surfverify.h"

namespace {

int emit_report(sv_report* rep, const std::string& format) {
  std::fputs(format == "json" ? sv_report_json(rep) : sv_report_text(rep), stdout);
  const int code = sv_report_exit_code(rep);
  sv_report_free(rep);
  return code;
}

int emit_string(char* s) {
  if (!s) {
    std::fprintf(stderr, "surfverify: %s\n", sv_last_error());
    return 2;
  }
  std::fputs(s, stdout);
  sv_string_free(s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks surface constructions and singularity data against scenario files."};
  app.set_version_flag("--version", std::string(sv_version()));
  app.require_subcommand(1);

  std::string format = "text";
  const auto formats = CLI::IsMember({"text", "json"});

  std::string file;
  auto* verify = app.add_subcommand("verify", "Run one scenario file");
  verify->add_option("file", file, "Scenario file (.scn)")->required();
  verify->add_option("--report", format, "Report format")->check(formats);

  std::string dir;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* corpus = app.add_subcommand("corpus", "Run every scenario in a directory");
  corpus->add_option("dir", dir, "Directory of .scn files (default: bundled corpus)");
  corpus->add_option("--report", format, "Report format")->check(formats);
  corpus->add_option("-j,--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));

  auto* catalog = app.add_subcommand("catalog", "Exceptional configurations with recomputed invariants");
  catalog->add_option("--report", format, "Output format")->check(formats);
  auto* dims = app.add_subcommand("dims", "Dimension counts of the sextic families");
  dims->add_option("--report", format, "Output format")->check(formats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // usage errors share the malformed-input exit code
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  sv_report* rep = nullptr;
  if (*verify) {
    if (sv_verify_file(file.c_str(), &rep) != SV_OK) {
      std::fprintf(stderr, "surfverify: %s\n", sv_last_error());
      return 2;
    }
    return emit_report(rep, format);
  }
  if (*corpus) {
    if (sv_run_corpus(dir.empty() ? nullptr : dir.c_str(), jobs, &rep) != SV_OK) {
      std::fprintf(stderr, "surfverify: %s\n", sv_last_error());
      return 2;
    }
    return emit_report(rep, format);
  }
  if (*catalog) return emit_string(format == "json" ? sv_catalog_json() : sv_catalog_text());
  return emit_string(format == "json" ? sv_dims_json() : sv_dims_text());
}

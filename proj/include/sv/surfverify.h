#ifndef SURFVERIFY_H
#define SURFVERIFY_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(SV_BUILDING_LIBRARY)
#define SV_API __attribute__((visibility("default")))
#else
#define SV_API
#endif

/* Values match the engine's error codes. */
typedef enum sv_status {
  SV_OK = 0,
  SV_INVALID_ARGUMENT = 1,
  SV_LATTICE_MISMATCH = 2,
  SV_NOT_NEGATIVE_DEFINITE = 3,
  SV_NON_GORENSTEIN = 4,
  SV_UNKNOWN_CURVE = 5,
  SV_INCONCLUSIVE = 6,
  SV_PARSE = 7,
  SV_IO = 8,
  SV_INTERNAL = 9
} sv_status;

typedef struct sv_report sv_report;

SV_API const char* sv_version(void);

/* Message of the last failing call on this thread, "" if none. */
SV_API const char* sv_last_error(void);

/* A report is produced even for malformed scenarios (exit code 2), so these
   only fail on bad arguments, unreadable directories or internal errors. */
SV_API sv_status sv_verify_file(const char* path, sv_report** out);
SV_API sv_status sv_verify_text(const char* text, const char* origin, sv_report** out);
/* dir NULL means the bundled corpus (or SURFVERIFY_CORPUS_DIR). */
SV_API sv_status sv_run_corpus(const char* dir, unsigned jobs, sv_report** out);

/* 0 all pass or flagged, 1 some assertion failed, 2 malformed input. */
SV_API int sv_report_exit_code(const sv_report* report);
SV_API size_t sv_report_scenario_count(const sv_report* report);
/* Owned by the report; valid until sv_report_free. */
SV_API const char* sv_report_json(sv_report* report);
SV_API const char* sv_report_text(sv_report* report);
SV_API void sv_report_free(sv_report* report);

/* Caller frees with sv_string_free. NULL on error. */
SV_API char* sv_catalog_json(void);
SV_API char* sv_dims_json(void);
SV_API char* sv_catalog_text(void);
SV_API char* sv_dims_text(void);
SV_API void sv_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif

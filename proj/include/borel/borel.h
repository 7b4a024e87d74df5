#ifndef BOREL_BOREL_H
#define BOREL_BOREL_H

/* C interface to the workbench: build a configuration, run a command, read
   the report.  Handles are opaque.  Every function returning bw_status leaves
   a message for bw_last_error() on failure (per thread). */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(BOREL_BUILDING_LIBRARY)
#define BW_API __attribute__((visibility("default")))
#else
#define BW_API
#endif

#define BW_EXIT_USAGE 64

typedef enum bw_status {
  BW_OK = 0,
  BW_INVALID_ARGUMENT = 1, /* null handle or pointer */
  BW_CONFIG_ERROR = 2,     /* unknown key, malformed or out-of-range value */
  BW_PARSE_ERROR = 3,      /* malformed JSON */
  BW_INTERNAL_ERROR = 4
} bw_status;

typedef enum bw_format { BW_FORMAT_JSON = 0, BW_FORMAT_TEXT = 1 } bw_format;

typedef struct bw_config bw_config;
typedef struct bw_report bw_report;

BW_API const char* bw_version(void);
/* Message of the last failed call on this thread; "" if none. */
BW_API const char* bw_last_error(void);

BW_API bw_status bw_config_create(bw_config** out);
BW_API void bw_config_destroy(bw_config* config);
/* Keys: command, p, k, weight ("r,m"), chi ("i1,i2,s1,s2"), ideal, R,
   R_target, N, trials, seed, bound, L, R_max, N_max, timing. */
BW_API bw_status bw_config_set(bw_config* config, const char* key, const char* value);
/* Applies every key of a JSON object given as text. */
BW_API bw_status bw_config_load_json(bw_config* config, const char* json_text);
BW_API bw_status bw_config_validate(const bw_config* config);

BW_API size_t bw_command_count(void);
BW_API const char* bw_command_name(size_t index); /* NULL past the end */

/* Validates, then runs.  A report is produced even when checks fail. */
BW_API bw_status bw_run(const bw_config* config, bw_report** out);
BW_API int bw_report_exit_code(const bw_report* report);
BW_API size_t bw_report_check_count(const bw_report* report);
/* *out is allocated by the library; release it with bw_string_free. */
BW_API bw_status bw_report_serialize(const bw_report* report, bw_format format, char** out);
BW_API void bw_report_destroy(bw_report* report);
BW_API void bw_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif

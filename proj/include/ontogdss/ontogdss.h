/*
 * ontogdss C API.
 *
 * All strings are UTF-8 JSON. Strings returned through `char**` out
 * parameters are owned by the caller and must be released with
 * ontogdss_string_free(). On failure, ontogdss_last_error() returns a
 * thread-local description of the most recent error on the calling thread.
 */
#ifndef ONTOGDSS_H
#define ONTOGDSS_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(ONTOGDSS_BUILDING)
#    define ONTOGDSS_API __declspec(dllexport)
#  else
#    define ONTOGDSS_API __declspec(dllimport)
#  endif
#else
#  define ONTOGDSS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ontogdss_engine ontogdss_engine;

typedef enum ontogdss_status {
  ONTOGDSS_OK = 0,
  /* A null or otherwise unusable argument. */
  ONTOGDSS_E_INVALID_ARGUMENT = 1,
  /* Input text was not valid JSON or not a valid command/document. */
  ONTOGDSS_E_PARSE = 2,
  /* The engine rejected the command; the response body carries the code. */
  ONTOGDSS_E_COMMAND = 3,
  /* Store could not be read or written, or is locked. */
  ONTOGDSS_E_IO = 4,
  ONTOGDSS_E_INTERNAL = 5
} ontogdss_status;

ONTOGDSS_API const char* ontogdss_version(void);
ONTOGDSS_API const char* ontogdss_last_error(void);
ONTOGDSS_API void ontogdss_string_free(char* str);

/* `store_dir` may be NULL for an in-memory engine. `config_json` may be NULL
 * or {"extension_bound": n, "structured_similarity": x}. */
ONTOGDSS_API ontogdss_status ontogdss_engine_new(const char* store_dir, const char* config_json,
                                                 ontogdss_engine** out);
ONTOGDSS_API void ontogdss_engine_free(ontogdss_engine* engine);

/* Applies one command {"verb", "session", "payload"}. `response_json`
 * receives {"status": <http-like code>, "body": {...}} for both success and
 * ONTOGDSS_E_COMMAND. */
ONTOGDSS_API ontogdss_status ontogdss_engine_apply(ontogdss_engine* engine, const char* command_json,
                                                   char** response_json);

/* Runs the script embedded in a session document. On ONTOGDSS_E_COMMAND,
 * `failed_command` (if non-NULL) receives the 1-based index of the failing
 * command; it is set to 0 otherwise. */
ONTOGDSS_API ontogdss_status ontogdss_run_batch(const char* document_json, char** output_json,
                                                size_t* failed_command);

ONTOGDSS_API ontogdss_status ontogdss_demo_document(char** document_json);

#ifdef __cplusplus
}
#endif

#endif /* ONTOGDSS_H */

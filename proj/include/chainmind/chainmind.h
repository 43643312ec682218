/* Copyright 2026 The chainmind Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* chainmind - associative token memory engine.
 *
 * C interface to the engine: opaque handles, status codes, and text-based
 * exchange formats (bank files, scenario scripts, transcripts). All strings
 * returned through `char**` out-parameters are heap-allocated and must be
 * released with cm_string_free(). Handles are destroyed with their matching
 * *_destroy() function. The per-thread cm_last_error() message describes the
 * most recent failure on the calling thread.
 */

#ifndef CHAINMIND_H
#define CHAINMIND_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CHAINMIND_BUILD)
#define CM_API __declspec(dllexport)
#else
#define CM_API __declspec(dllimport)
#endif
#else
#define CM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cm_status {
    CM_OK = 0,
    CM_ERR_INVALID_ARGUMENT = 1,
    CM_ERR_PARSE = 2,
    CM_ERR_IO = 3,
    CM_ERR_DIMENSION = 4,
    CM_ERR_ORDERING = 5,
    CM_ERR_DUPLICATE = 6,
    CM_ERR_STALE_REPORT = 7,
    CM_ERR_ASSERTION = 8,
    CM_ERR_NOT_FOUND = 9,
    CM_ERR_INTERNAL = 10
} cm_status;

typedef struct cm_config cm_config;   /* engine parameters */
typedef struct cm_bank cm_bank;       /* token store */
typedef struct cm_session cm_session; /* perception/action loop over a bank */

/* ------------------------------------------------------------------------ */
/* Library                                                                   */
/* ------------------------------------------------------------------------ */

CM_API const char* cm_version_string(void);
CM_API const char* cm_status_name(cm_status status);

/* Message for the most recent failure on this thread; never NULL. */
CM_API const char* cm_last_error(void);

CM_API void cm_string_free(char* text);

/* ------------------------------------------------------------------------ */
/* Config                                                                    */
/* ------------------------------------------------------------------------ */

CM_API cm_status cm_config_create(cm_config** out);
CM_API cm_status cm_config_load(const char* path, cm_config** out);
CM_API cm_status cm_config_parse(const char* text, cm_config** out);
CM_API cm_status cm_config_set(cm_config* config, const char* key,
                               const char* value);
CM_API cm_status cm_config_get(const cm_config* config, const char* key,
                               char** out_value);
/* All keys as `key=value` lines. */
CM_API cm_status cm_config_dump(const cm_config* config, char** out_text);
CM_API void cm_config_destroy(cm_config* config);

/* ------------------------------------------------------------------------ */
/* Banks                                                                     */
/* ------------------------------------------------------------------------ */

CM_API cm_status cm_bank_create(const cm_config* config, cm_bank** out);
CM_API cm_status cm_bank_load(const char* path, cm_bank** out);
CM_API cm_status cm_bank_save(const cm_bank* bank, const char* path);
/* Serialized bank text (the same format save writes to disk). */
CM_API cm_status cm_bank_dump(const cm_bank* bank, char** out_text);
CM_API size_t cm_bank_record_count(const cm_bank* bank);
CM_API size_t cm_bank_dim(const cm_bank* bank);
/* Removes records whose memory and activation both reached zero. */
CM_API cm_status cm_bank_prune(cm_bank* bank, size_t* out_removed);
/* Concatenates b after a on one timeline; activations reset to zero. */
CM_API cm_status cm_bank_merge(const cm_bank* a, const cm_bank* b,
                               cm_bank** out);
CM_API void cm_bank_destroy(cm_bank* bank);

/* ------------------------------------------------------------------------ */
/* Sessions                                                                  */
/* ------------------------------------------------------------------------ */

/* config may be NULL for defaults. seed 0 keeps the config's seed. */
CM_API cm_status cm_session_create(const cm_config* config, uint64_t seed,
                                   cm_session** out);
CM_API cm_status cm_session_set_trace(cm_session* session, int enabled);
CM_API cm_status cm_session_set_dump_report(cm_session* session, int enabled);

/* Installs innate knowledge (need/gesture spec lines) into the bank. */
CM_API cm_status cm_session_install_innate(cm_session* session,
                                           const char* spec_text);

CM_API cm_status cm_session_load_bank(cm_session* session, const char* path);
CM_API cm_status cm_session_save_bank(const cm_session* session,
                                      const char* path);

/* Runs a scenario script. The transcript is returned in both the CM_OK and
 * CM_ERR_ASSERTION cases; CM_ERR_ASSERTION means one or more of the script's
 * golden checks failed (the transcript carries the diff lines). */
CM_API cm_status cm_session_run_script_text(cm_session* session,
                                            const char* script_text,
                                            char** out_transcript);
CM_API cm_status cm_session_run_script_file(cm_session* session,
                                            const char* path,
                                            char** out_transcript);

/* One interactive turn: tokenizes the line, stores it, runs chain
 * activation and the decision procedure, consolidates. The returned text
 * holds the tally, the action, and the strongest expectation symbols. */
CM_API cm_status cm_session_turn(cm_session* session, const char* line,
                                 char** out_text);

/* Record count, nonzero-memory count, kind histogram, top memory symbols. */
CM_API cm_status cm_session_stats(const cm_session* session, char** out_text);

CM_API void cm_session_destroy(cm_session* session);

/* ------------------------------------------------------------------------ */
/* Demos                                                                     */
/* ------------------------------------------------------------------------ */

/* Embedded demo scripts by name: "world-peace", "charging", "hotel". */
CM_API cm_status cm_demo_script(const char* name, char** out_text);
/* Newline-joined list of demo names. */
CM_API cm_status cm_demo_list(char** out_text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CHAINMIND_H */

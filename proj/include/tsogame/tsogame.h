/*
 * Copyright 2026 The tsogame Authors
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

/* C interface to the tsogame solver. All strings are UTF-8; every char** output
 * is heap-allocated and must be released with tsog_string_free. On failure the
 * status code is returned and tsog_last_error() describes the problem. */
#ifndef TSOGAME_TSOGAME_H
#define TSOGAME_TSOGAME_H

#include <stddef.h>

#if defined(TSOG_BUILDING_LIBRARY)
#define TSOG_API __attribute__((visibility("default")))
#else
#define TSOG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tsog_program tsog_program;

/* Values double as CLI exit codes. */
typedef enum tsog_status {
    TSOG_OK = 0,
    TSOG_ERR_USAGE = 1,
    TSOG_ERR_PARSE = 2,
    TSOG_ERR_VALIDATION = 3,
    TSOG_ERR_RESOURCE = 4,
    TSOG_ERR_INTERNAL = 5
} tsog_status;

TSOG_API const char* tsog_version(void);
/* Message for the last failing call on this thread; empty after success. */
TSOG_API const char* tsog_last_error(void);
TSOG_API void tsog_string_free(char* s);

TSOG_API tsog_status tsog_program_parse(const char* text, tsog_program** out);
TSOG_API tsog_status tsog_program_load(const char* path, tsog_program** out);
TSOG_API void tsog_program_free(tsog_program* p);
TSOG_API tsog_status tsog_program_serialize(const tsog_program* p, char** out_text);
TSOG_API size_t tsog_program_process_count(const tsog_program* p);

/* mode: "reach", "safe" or NULL for the file's objective; targets: "P.q,P2.r" or NULL. */
TSOG_API tsog_status tsog_solve(const tsog_program* p, const char* mode, const char* targets,
                                char** out_json);
/* format: "dot" or "json". */
TSOG_API tsog_status tsog_view_arena(const tsog_program* p, const char* process,
                                     const char* format, char** out);
TSOG_API tsog_status tsog_state_bound(const tsog_program* p, const char* process,
                                      char** out_json);
/* horizon 0 means the script length. */
TSOG_API tsog_status tsog_simulate(const tsog_program* p, const char* script_json,
                                   int check_update_fair, size_t horizon, char** out_json);
/* semantics: "sb" (store buffers) or "lb" (load buffers). */
TSOG_API tsog_status tsog_explore(const tsog_program* p, size_t buffer_bound,
                                  const char* semantics, size_t max_states, char** out_json);

TSOG_API tsog_status tsog_qbf_eval(const char* formula, int* value);
TSOG_API tsog_status tsog_qbf_to_program(const char* formula, const char* mode, char** out_text);

/* fairness: "update" or "process". run: comma-separated transition ids such as "e0,e2". */
TSOG_API tsog_status tsog_pcs_to_program(const char* pcs_text, const char* fairness,
                                         char** out_text);
TSOG_API tsog_status tsog_pcs_script(const char* pcs_text, const char* run, const char* fairness,
                                     char** out_json);

TSOG_API tsog_status tsog_lb_demo(size_t horizon, size_t propagation_bound, char** out_json);

#ifdef __cplusplus
}
#endif

#endif

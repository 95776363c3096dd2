// Copyright 2026 The lensdb Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef LENSDB_LENSDB_H_
#define LENSDB_LENSDB_H_

#if defined(LENSDB_BUILDING)
#define LENSDB_API __attribute__((visibility("default")))
#else
#define LENSDB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Exit statuses shared by every command. */
typedef enum lensdb_status {
  LENSDB_OK = 0,
  LENSDB_TYPE_ERROR = 1,
  LENSDB_CONSTRAINT_VIOLATION = 2,
  LENSDB_IO_ERROR = 3
} lensdb_status;

typedef struct lensdb_workspace lensdb_workspace;
typedef struct lensdb_output lensdb_output;

LENSDB_API const char *lensdb_version(void);

/* Loads a lens definition file. On failure *out is NULL and, if diag is
 * not NULL, *diag receives the error text (free with lensdb_output_free). */
LENSDB_API lensdb_status lensdb_workspace_open(const char *defs_path,
                                               lensdb_workspace **out,
                                               lensdb_output **diag);
LENSDB_API void lensdb_workspace_free(lensdb_workspace *ws);

/* Binds `$name` to raw text, typed later by its use sites. */
LENSDB_API void lensdb_workspace_set_param(lensdb_workspace *ws,
                                           const char *name, const char *value);
LENSDB_API void lensdb_workspace_set_data_dir(lensdb_workspace *ws,
                                              const char *dir);

/* Every command stores its stdout and stderr text in *out. */
LENSDB_API lensdb_status lensdb_check(const lensdb_workspace *ws,
                                      lensdb_output **out);
LENSDB_API lensdb_status lensdb_get(const lensdb_workspace *ws,
                                    const char *lens, lensdb_output **out);
LENSDB_API lensdb_status lensdb_put(const lensdb_workspace *ws,
                                    const char *lens, const char *view_path,
                                    int dry_run, lensdb_output **out);
LENSDB_API lensdb_status lensdb_explain(const lensdb_workspace *ws,
                                        const char *lens, lensdb_output **out);
LENSDB_API lensdb_status lensdb_sql(const lensdb_workspace *ws,
                                    const char *lens, lensdb_output **out);

LENSDB_API const char *lensdb_output_stdout(const lensdb_output *out);
LENSDB_API const char *lensdb_output_stderr(const lensdb_output *out);
LENSDB_API void lensdb_output_free(lensdb_output *out);

#ifdef __cplusplus
}
#endif

#endif  // LENSDB_LENSDB_H_

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


#include "lensdb/lensdb.h"

#include <new>
#include <string>

#include "lensdb/commands.h"

struct lensdb_workspace {
  lensdb::Workspace workspace;
  lensdb::CommandContext context;
};

struct lensdb_output {
  std::string out;
  std::string err;
};

namespace {

lensdb_status finish(lensdb::CommandResult result, lensdb_output **out) {
  if (out != nullptr) {
    *out = new (std::nothrow)
        lensdb_output{std::move(result.out), std::move(result.err)};
  }
  return static_cast<lensdb_status>(result.status);
}

lensdb::CommandResult missing_argument(const char *what) {
  return {lensdb::kExitIoError, {}, std::string("error: missing ") + what + "\n"};
}

}  // namespace

extern "C" {

const char *lensdb_version(void) { return "0.1.0"; }

lensdb_status lensdb_workspace_open(const char *defs_path,
                                    lensdb_workspace **out,
                                    lensdb_output **diag) {
  *out = nullptr;
  if (defs_path == nullptr) return finish(missing_argument("definitions"), diag);
  try {
    auto *ws = new lensdb_workspace{lensdb::Workspace::load(defs_path), {}};
    ws->context.workspace = &ws->workspace;
    *out = ws;
    return LENSDB_OK;
  } catch (const std::exception &e) {
    return finish({lensdb::kExitIoError, {}, std::string("error: ") + e.what() + "\n"},
                  diag);
  }
}

void lensdb_workspace_free(lensdb_workspace *ws) { delete ws; }

void lensdb_workspace_set_param(lensdb_workspace *ws, const char *name,
                                const char *value) {
  ws->context.params[name] = value;
}

void lensdb_workspace_set_data_dir(lensdb_workspace *ws, const char *dir) {
  ws->context.data_dir = dir;
}

lensdb_status lensdb_check(const lensdb_workspace *ws, lensdb_output **out) {
  return finish(lensdb::cmd_check(ws->context), out);
}

lensdb_status lensdb_get(const lensdb_workspace *ws, const char *lens,
                         lensdb_output **out) {
  if (lens == nullptr) return finish(missing_argument("--lens"), out);
  return finish(lensdb::cmd_get(ws->context, lens), out);
}

lensdb_status lensdb_put(const lensdb_workspace *ws, const char *lens,
                         const char *view_path, int dry_run,
                         lensdb_output **out) {
  if (lens == nullptr) return finish(missing_argument("--lens"), out);
  if (view_path == nullptr) return finish(missing_argument("--view"), out);
  return finish(lensdb::cmd_put(ws->context, lens, view_path, dry_run != 0), out);
}

lensdb_status lensdb_explain(const lensdb_workspace *ws, const char *lens,
                             lensdb_output **out) {
  if (lens == nullptr) return finish(missing_argument("--lens"), out);
  return finish(lensdb::cmd_explain(ws->context, lens), out);
}

lensdb_status lensdb_sql(const lensdb_workspace *ws, const char *lens,
                         lensdb_output **out) {
  if (lens == nullptr) return finish(missing_argument("--lens"), out);
  return finish(lensdb::cmd_sql(ws->context, lens), out);
}

const char *lensdb_output_stdout(const lensdb_output *out) {
  return out->out.c_str();
}

const char *lensdb_output_stderr(const lensdb_output *out) {
  return out->err.c_str();
}

void lensdb_output_free(lensdb_output *out) { delete out; }

}  // extern "C"

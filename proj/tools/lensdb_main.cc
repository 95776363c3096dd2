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


// lensdb check|get|put|explain|sql --defs FILE [--lens NAME] [--data DIR]
//        [--view FILE] [--param k=v]... [--dry-run]

#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "lensdb/lensdb.h"

int main(int argc, char **argv) {
  CLI::App app{"Relational lenses over JSON-lines tables"};
  app.set_version_flag("--version", std::string(lensdb_version()));
  app.require_subcommand(1, 1);

  std::string defs;
  std::string lens;
  std::string data = ".";
  std::string view;
  std::vector<std::string> params;
  bool dry_run = false;

  auto add_common = [&](CLI::App *cmd, bool needs_lens) {
    cmd->add_option("--defs", defs, "Lens definition file")->required();
    auto *opt = cmd->add_option("--lens", lens, "Lens name");
    if (needs_lens) opt->required();
    cmd->add_option("--data", data, "Directory of <table>.jsonl files");
    cmd->add_option("--param", params, "Parameter binding k=v")
        ->allow_extra_args(false);
  };
  auto *check = app.add_subcommand("check", "Typecheck every lens");
  add_common(check, false);
  auto *get = app.add_subcommand("get", "Print the view of a lens");
  add_common(get, true);
  auto *put = app.add_subcommand("put", "Write an updated view back");
  add_common(put, true);
  put->add_option("--view", view, "Updated view (JSON lines)")->required();
  put->add_flag("--dry-run", dry_run, "Print the new tables instead of writing");
  auto *explain = app.add_subcommand("explain", "Show the sequential pipeline");
  add_common(explain, true);
  auto *sql = app.add_subcommand("sql", "Print a SQL query for get");
  add_common(sql, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return LENSDB_IO_ERROR;
  }

  lensdb_workspace *ws = nullptr;
  lensdb_output *out = nullptr;
  lensdb_status status = lensdb_workspace_open(defs.c_str(), &ws, &out);
  if (status == LENSDB_OK) {
    lensdb_workspace_set_data_dir(ws, data.c_str());
    for (const auto &binding : params) {
      auto eq = binding.find('=');
      if (eq == std::string::npos) {
        std::fprintf(stderr, "error: --param expects k=v, got '%s'\n",
                     binding.c_str());
        lensdb_workspace_free(ws);
        return LENSDB_IO_ERROR;
      }
      lensdb_workspace_set_param(ws, binding.substr(0, eq).c_str(),
                                 binding.substr(eq + 1).c_str());
    }
    if (*check) {
      status = lensdb_check(ws, &out);
    } else if (*get) {
      status = lensdb_get(ws, lens.c_str(), &out);
    } else if (*put) {
      status = lensdb_put(ws, lens.c_str(), view.c_str(), dry_run ? 1 : 0, &out);
    } else if (*explain) {
      status = lensdb_explain(ws, lens.c_str(), &out);
    } else {
      status = lensdb_sql(ws, lens.c_str(), &out);
    }
    lensdb_workspace_free(ws);
  }
  if (out != nullptr) {
    std::fputs(lensdb_output_stdout(out), stdout);
    std::fputs(lensdb_output_stderr(out), stderr);
    lensdb_output_free(out);
  }
  return status;
}

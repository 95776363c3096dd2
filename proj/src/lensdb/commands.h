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


#pragma once

// The check/get/put/explain/sql commands over a loaded workspace. Each
// returns its exit status and the text for stdout and stderr.

#include <filesystem>
#include <map>
#include <string>

#include "lensdb/workspace.h"

namespace lensdb {

enum ExitStatus {
  kExitOk = 0,
  kExitTypeError = 1,
  kExitConstraintViolation = 2,
  kExitIoError = 3,
};

struct CommandResult {
  int status = kExitOk;
  std::string out;
  std::string err;
};

struct CommandContext {
  const Workspace *workspace = nullptr;
  /// Raw `--param k=v` values; typed by their use sites.
  std::map<std::string, std::string> params;
  std::filesystem::path data_dir = ".";
};

CommandResult cmd_check(const CommandContext &ctx);
CommandResult cmd_get(const CommandContext &ctx, const std::string &lens);
CommandResult cmd_put(const CommandContext &ctx, const std::string &lens,
                      const std::filesystem::path &view_file, bool dry_run);
CommandResult cmd_explain(const CommandContext &ctx, const std::string &lens);
CommandResult cmd_sql(const CommandContext &ctx, const std::string &lens);

/// Writes every file under a temporary name first, then renames them into
/// place. When the environment variable LENSDB_FAIL_BEFORE_RENAME is set the
/// temporaries are removed and an error is thrown before any rename.
void write_files_atomically(const std::map<std::filesystem::path, std::string> &files);

}  // namespace lensdb

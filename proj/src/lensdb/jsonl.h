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

// Table files: one JSON object per line, keyed by column name.

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>

#include "lensdb/engine.h"

namespace lensdb {

class JsonlError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses rows of the given type; `source` names the input in messages.
/// Blank lines are skipped. Integers must fit in 64 bits.
Relation read_jsonl(std::istream &in, const RowType &type,
                    const std::string &source);

/// Reads `path`; a missing file is an empty table.
Relation load_jsonl(const std::filesystem::path &path, const RowType &type);

/// `{"a":1,"b":"x"}` with keys in label order.
std::string row_to_json(const Row &row);

/// One line per row in canonical order, each terminated by a newline.
std::string to_jsonl(const Relation &rel);

}  // namespace lensdb

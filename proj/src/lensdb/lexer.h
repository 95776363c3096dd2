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

// Tokenizer shared by the predicate parser and the lens definition language.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lensdb {

enum class TokenKind { kInt, kString, kIdent, kParam, kPunct, kEnd };

struct Token {
  TokenKind kind;
  /// Identifier/param name without `$`, decoded string contents, digits of
  /// an integer, or the punctuation text.
  std::string text;
  /// 0-based byte offsets into the source.
  std::size_t begin = 0;
  std::size_t end = 0;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_punct(std::string_view t) const { return is(TokenKind::kPunct, t); }
  bool is_word(std::string_view t) const { return is(TokenKind::kIdent, t); }
};

std::string describe(const Token &token);

/// Splits `source` into tokens, ending with a kEnd token. `#` starts a comment
/// running to the end of the line. Throws PredicateError(kSyntaxError) on
/// malformed input.
std::vector<Token> tokenize(std::string_view source);

}  // namespace lensdb

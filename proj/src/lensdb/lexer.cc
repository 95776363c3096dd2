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


#include "lensdb/lexer.h"

#include <fmt/core.h>

#include <array>
#include <cctype>

#include "lensdb/predicate.h"

namespace lensdb {

std::string describe(const Token &token) {
  switch (token.kind) {
    case TokenKind::kInt:
      return fmt::format("integer {}", token.text);
    case TokenKind::kString:
      return fmt::format("string {}", quote_string(token.text));
    case TokenKind::kIdent:
      return fmt::format("'{}'", token.text);
    case TokenKind::kParam:
      return fmt::format("'${}'", token.text);
    case TokenKind::kPunct:
      return fmt::format("'{}'", token.text);
    case TokenKind::kEnd:
      return "end of input";
  }
  return "?";
}

namespace {

constexpr std::array<std::string_view, 8> kTwoCharPunct = {
    "==", "!=", "<=", ">=", "&&", "||", "->", "=>"};
constexpr std::string_view kOneCharPunct = "<>!+-*(){},:;=";

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

[[noreturn]] void lex_error(std::size_t pos, const std::string &msg) {
  throw PredicateError(PredicateErrorKind::kSyntaxError,
                       fmt::format("column {}: {}", pos + 1, msg), pos + 1);
}

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i])) != 0) ++i;
      if (i < src.size() && ident_char(src[i])) {
        lex_error(i, "malformed integer literal");
      }
      out.push_back({TokenKind::kInt, std::string(src.substr(start, i - start)),
                     start, i});
      continue;
    }
    if (ident_start(c)) {
      while (i < src.size() && ident_char(src[i])) ++i;
      out.push_back({TokenKind::kIdent,
                     std::string(src.substr(start, i - start)), start, i});
      continue;
    }
    if (c == '$') {
      ++i;
      if (i >= src.size() || !ident_start(src[i])) {
        lex_error(start, "expected parameter name after '$'");
      }
      while (i < src.size() && ident_char(src[i])) ++i;
      out.push_back({TokenKind::kParam,
                     std::string(src.substr(start + 1, i - start - 1)), start,
                     i});
      continue;
    }
    if (c == '"') {
      std::string text;
      ++i;
      for (;;) {
        if (i >= src.size() || src[i] == '\n') {
          lex_error(start, "unterminated string literal");
        }
        char ch = src[i++];
        if (ch == '"') break;
        if (ch != '\\') {
          text += ch;
          continue;
        }
        if (i >= src.size()) lex_error(start, "unterminated string literal");
        char esc = src[i++];
        switch (esc) {
          case '"':
          case '\\':
            text += esc;
            break;
          case 'n':
            text += '\n';
            break;
          case 't':
            text += '\t';
            break;
          default:
            lex_error(i - 2, fmt::format("unknown escape '\\{}'", esc));
        }
      }
      out.push_back({TokenKind::kString, std::move(text), start, i});
      continue;
    }
    std::string_view two = src.substr(i, 2);
    bool matched = false;
    for (std::string_view p : kTwoCharPunct) {
      if (two == p) {
        out.push_back({TokenKind::kPunct, std::string(p), i, i + 2});
        i += 2;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (kOneCharPunct.find(c) != std::string_view::npos) {
      out.push_back({TokenKind::kPunct, std::string(1, c), i, i + 1});
      ++i;
      continue;
    }
    lex_error(i, fmt::format("unexpected character '{}'", c));
  }
  out.push_back({TokenKind::kEnd, "", src.size(), src.size()});
  return out;
}

}  // namespace lensdb

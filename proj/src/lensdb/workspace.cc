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


#include "lensdb/workspace.h"

#include <fmt/core.h>

#include <fstream>
#include <sstream>

#include "lensdb/lexer.h"

namespace lensdb {

namespace {

class Cursor {
 public:
  Cursor(std::vector<Token> tokens, std::string_view line, std::string where)
      : tokens_(std::move(tokens)), line_(line), where_(std::move(where)) {}

  const Token &peek() const { return tokens_[pos_]; }
  const Token &next() {
    const Token &t = tokens_[pos_];
    if (t.kind != TokenKind::kEnd) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == TokenKind::kEnd; }

  [[noreturn]] void fail(const std::string &what) const {
    throw WorkspaceError(fmt::format("{}: expected {}, found {}", where_, what,
                                     describe(peek())));
  }

  void word(std::string_view w) {
    if (!peek().is_word(w)) fail(fmt::format("'{}'", w));
    next();
  }
  bool accept_word(std::string_view w) {
    if (!peek().is_word(w)) return false;
    next();
    return true;
  }
  void punct(std::string_view p) {
    if (!peek().is_punct(p)) fail(fmt::format("'{}'", p));
    next();
  }
  bool accept_punct(std::string_view p) {
    if (!peek().is_punct(p)) return false;
    next();
    return true;
  }
  std::string ident(std::string_view what) {
    if (peek().kind != TokenKind::kIdent) fail(std::string(what));
    return next().text;
  }
  void end() {
    if (!at_end()) fail("end of line");
  }

  /// `( a b c )` or `( a, b, c )`.
  AttrSet name_list() {
    punct("(");
    AttrSet out;
    while (!accept_punct(")")) {
      std::string name = ident("a column name");
      if (!out.insert(name).second) {
        throw WorkspaceError(
            fmt::format("{}: column '{}' listed twice", where_, name));
      }
      accept_punct(",");
    }
    return out;
  }

  Constant constant() {
    bool negative = accept_punct("-");
    const Token &t = peek();
    if (t.kind == TokenKind::kInt) {
      next();
      Int value(t.text);
      return negative ? Int(-value) : value;
    }
    if (negative) fail("an integer");
    if (t.kind == TokenKind::kString) {
      next();
      return t.text;
    }
    if (t.is_word("true") || t.is_word("false")) {
      next();
      return t.text == "true";
    }
    fail("a constant");
  }

  /// Source text from the current token to the end of the line.
  std::string rest() const { return std::string(line_.substr(peek().begin)); }

  /// Raw text up to the matching `}`; consumes it.
  std::string braced() {
    punct("{");
    std::size_t begin = tokens_[pos_ - 1].end;
    while (!peek().is_punct("}")) {
      if (at_end()) fail("'}'");
      next();
    }
    std::size_t end = peek().begin;
    next();
    return std::string(line_.substr(begin, end - begin));
  }

  const std::string &where() const { return where_; }

 private:
  std::vector<Token> tokens_;
  std::string_view line_;
  std::string where_;
  std::size_t pos_ = 0;
};

bool has_params(std::string_view text) {
  for (const auto &t : tokenize(text)) {
    if (t.kind == TokenKind::kParam) return true;
  }
  return false;
}

}  // namespace

Workspace Workspace::parse(std::string_view text, const std::string &source) {
  Workspace ws;
  std::istringstream in{std::string(text)};
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const std::string where = fmt::format("{}:{}", source, lineno);
    std::vector<Token> tokens;
    try {
      tokens = tokenize(line);
    } catch (const PredicateError &e) {
      throw WorkspaceError(fmt::format("{}: {}", where, e.what()));
    }
    Cursor c(std::move(tokens), line, where);
    if (c.at_end()) continue;

    if (c.accept_word("table")) {
      TableSchema table;
      table.name = c.ident("a table name");
      c.punct("(");
      while (!c.accept_punct(")")) {
        std::string col = c.ident("a column name");
        c.punct(":");
        std::string type = c.ident("a column type");
        auto kind = parse_base_kind(type);
        if (!kind) {
          throw WorkspaceError(
              fmt::format("{}: unknown column type '{}'", where, type));
        }
        if (!table.row.emplace(col, *kind).second) {
          throw WorkspaceError(
              fmt::format("{}: column '{}' declared twice", where, col));
        }
        if (!c.peek().is_punct(")")) c.punct(",");
      }
      if (c.accept_word("keys")) table.keys = c.name_list();
      c.end();
      for (const auto &k : table.keys) {
        if (!table.row.contains(k)) {
          throw WorkspaceError(
              fmt::format("{}: key '{}' is not a column", where, k));
        }
      }
      if (ws.tables_.contains(table.name)) {
        throw WorkspaceError(
            fmt::format("{}: table '{}' declared twice", where, table.name));
      }
      ws.tables_.emplace(table.name, std::move(table));
      continue;
    }

    c.word("lens");
    LensDef def;
    def.line = lineno;
    def.name = c.ident("a lens name");
    c.punct("=");
    auto lens_ref = [&](std::string_view what) {
      std::string name = c.ident(what);
      if (!ws.index_.contains(name)) {
        throw WorkspaceError(fmt::format("{}: unknown lens '{}'", where, name));
      }
      ws.referenced_.insert(name);
      return name;
    };
    if (c.accept_word("lens")) {
      def.kind = LensDef::Kind::kPrim;
      def.table = c.ident("a table name");
      if (c.accept_word("with")) {
        def.fd_text = c.braced();
      } else {
        c.word("default");
      }
      c.end();
    } else if (c.accept_word("select")) {
      def.kind = LensDef::Kind::kSelect;
      c.word("from");
      def.source = lens_ref("a lens name");
      c.word("where");
      if (c.at_end()) c.fail("a predicate");
      def.pred_text = c.rest();
      def.parameterized = has_params(def.pred_text);
    } else if (c.accept_word("join")) {
      def.kind = LensDef::Kind::kJoin;
      def.source = lens_ref("a lens name");
      c.word("with");
      def.other = lens_ref("a lens name");
      if (c.accept_word("on")) def.on = c.name_list();
      if (c.accept_word("delete_left")) {
        def.variant = JoinVariant::kDeleteLeft;
      } else if (c.accept_word("delete_right")) {
        def.variant = JoinVariant::kDeleteRight;
      } else if (c.accept_word("delete_both")) {
        def.variant = JoinVariant::kDeleteBoth;
      }
      c.end();
    } else if (c.accept_word("drop")) {
      def.kind = LensDef::Kind::kDrop;
      def.column = c.ident("a column name");
      c.word("determined");
      c.word("by");
      def.determined_by = c.name_list();
      c.word("default");
      def.default_value = c.constant();
      c.word("from");
      def.source = lens_ref("a lens name");
      c.end();
    } else if (c.accept_word("check")) {
      def.kind = LensDef::Kind::kCheck;
      def.source = lens_ref("a lens name");
      c.end();
    } else {
      c.fail("'lens', 'select', 'join', 'drop' or 'check'");
    }
    if (ws.index_.contains(def.name)) {
      throw WorkspaceError(
          fmt::format("{}: lens '{}' defined twice", where, def.name));
    }
    ws.index_.emplace(def.name, ws.lenses_.size());
    ws.lenses_.push_back(std::move(def));
  }
  return ws;
}

Workspace Workspace::load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw WorkspaceError(fmt::format("cannot read {}", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

const LensDef *Workspace::find(const std::string &name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &lenses_[it->second];
}

LensPtr Workspace::build(const std::string &name,
                         const ParamBindings &params) const {
  const LensDef *def = find(name);
  if (!def) throw WorkspaceError(fmt::format("no lens named '{}'", name));
  return build_def(*def, params).expr;
}

Workspace::Built Workspace::build_def(const LensDef &def,
                                      const ParamBindings &params) const {
  auto source = [&](const std::string &name) {
    return build_def(*find(name), params);
  };
  switch (def.kind) {
    case LensDef::Kind::kPrim: {
      const std::string site = fmt::format("lens({})", def.table);
      auto it = tables_.find(def.table);
      if (it == tables_.end()) {
        throw LensTypeError(LensErrorKind::kUnknownTable, "T-Lens", site,
                            fmt::format("no table named '{}'", def.table));
      }
      const TableSchema &table = it->second;
      AttrSet labels = labels_of(table.row);
      FunDeps fds;
      if (def.fd_text) {
        try {
          fds = parse_fundeps(*def.fd_text, labels);
        } catch (const FunDepError &e) {
          if (e.kind() == FunDepError::Kind::kMalformed) {
            throw WorkspaceError(fmt::format("line {}: {}", def.line, e.what()));
          }
          throw LensTypeError(LensErrorKind::kUnknownColumn, "T-Lens", site,
                              e.what());
        }
      } else {
        AttrSet rest;
        for (const auto &l : labels) {
          if (!table.keys.contains(l)) rest.insert(l);
        }
        std::vector<FunDep> deps;
        if (!table.keys.empty() && !rest.empty()) deps.push_back({table.keys, rest});
        fds = FunDeps(deps, labels);
      }
      return {lenses::prim(def.table, fds), table.row};
    }
    case LensDef::Kind::kSelect: {
      Built src = source(def.source);
      Predicate pred = parse_predicate(def.pred_text, src.row, params);
      return {lenses::select(src.expr, pred, def.parameterized), src.row};
    }
    case LensDef::Kind::kJoin: {
      Built left = source(def.source);
      Built right = source(def.other);
      auto row = merge_row_types(left.row, right.row);
      if (!row) {
        throw LensTypeError(LensErrorKind::kTypeMismatch, "T-Join-Left", "join",
                            fmt::format("rows {} and {} disagree on a shared "
                                        "column type",
                                        to_string(left.row),
                                        to_string(right.row)));
      }
      return {lenses::join(left.expr, right.expr, def.variant, def.on),
              std::move(*row)};
    }
    case LensDef::Kind::kDrop: {
      Built src = source(def.source);
      RowType row = src.row;
      row.erase(def.column);
      return {lenses::drop(def.column, def.determined_by, def.default_value,
                           src.expr),
              std::move(row)};
    }
    case LensDef::Kind::kCheck: {
      Built src = source(def.source);
      return {lenses::check(src.expr), std::move(src.row)};
    }
  }
  throw WorkspaceError("unreachable lens kind");
}

}  // namespace lensdb

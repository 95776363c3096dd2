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


#include "lensdb/commands.h"

#include <fmt/core.h>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>

#include "lensdb/engine.h"
#include "lensdb/jsonl.h"
#include "lensdb/oracles.h"
#include "lensdb/sequential.h"

namespace lensdb {

namespace {

namespace fs = std::filesystem;

/// Carries a finished result out of nested helpers.
struct Abort {
  CommandResult result;
};

[[noreturn]] void abort_with(int status, std::string err) {
  throw Abort{{status, {}, std::move(err)}};
}

std::string describe(const PredicateError &e) {
  return fmt::format("{}: {}", to_string(e.kind()), e.what());
}

/// Maps the library's exceptions onto exit statuses.
CommandResult guarded(const std::function<CommandResult()> &body) {
  try {
    return body();
  } catch (const Abort &a) {
    return a.result;
  } catch (const WorkspaceError &e) {
    return {kExitIoError, {}, fmt::format("error: {}\n", e.what())};
  } catch (const LensTypeError &e) {
    return {kExitTypeError, {}, fmt::format("error: {}\n", e.what())};
  } catch (const PredicateError &e) {
    int status = e.kind() == PredicateErrorKind::kSyntaxError ||
                         e.kind() == PredicateErrorKind::kUnboundParam
                     ? kExitIoError
                     : kExitTypeError;
    return {status, {}, fmt::format("error: {}\n", describe(e))};
  } catch (const JsonlError &e) {
    return {kExitIoError, {}, fmt::format("error: {}\n", e.what())};
  } catch (const EngineError &e) {
    int status = kExitConstraintViolation;
    if (e.kind() == EngineErrorKind::kMissingTable) status = kExitIoError;
    if (e.kind() == EngineErrorKind::kTypeMismatch ||
        e.kind() == EngineErrorKind::kUnknownColumn) {
      status = kExitTypeError;
    }
    std::string err = fmt::format("error: {}\n", e.what());
    for (const auto &d : e.details()) err += fmt::format("  {}\n", d);
    return {status, {}, err};
  } catch (const FunDepError &e) {
    return {kExitIoError, {}, fmt::format("error: {}\n", e.what())};
  } catch (const std::exception &e) {
    return {kExitIoError, {}, fmt::format("error: {}\n", e.what())};
  }
}

ParamBindings bindings(const CommandContext &ctx, bool symbolic) {
  ParamBindings out;
  out.untyped = ctx.params;
  out.symbolic_when_unbound = symbolic;
  return out;
}

LensTypeError unchecked(const std::string &name) {
  return LensTypeError(LensErrorKind::kUncheckedParameter, "T-Check", name,
                       "parameterized lens must be wrapped in check");
}

struct Prepared {
  LensPtr expr;
  TypedLensPtr typed;
};

Prepared prepare(const CommandContext &ctx, const std::string &name,
                 bool symbolic, bool require_checked) {
  const Workspace &ws = *ctx.workspace;
  if (!ws.find(name)) {
    abort_with(kExitIoError, fmt::format("error: no lens named '{}'\n", name));
  }
  LensPtr expr = ws.build(name, bindings(ctx, symbolic));
  TypedLensPtr typed = typecheck_tree(expr, ws.tables());
  if (require_checked && typed->sort.dynamic) throw unchecked(name);
  return {expr, typed};
}

Store load_store(const CommandContext &ctx, const LensPtr &expr) {
  Store store;
  for (const auto &table : tables_of(expr)) {
    const TableSchema &schema = ctx.workspace->tables().at(table);
    store.emplace(table,
                  load_jsonl(ctx.data_dir / (table + ".jsonl"), schema.row));
  }
  auto violations = check_sources(expr, store);
  if (!violations.empty()) {
    std::string err = "error: ConstraintViolation: source data violates the "
                      "declared dependencies\n";
    for (const auto &v : violations) err += fmt::format("  {}\n", v);
    abort_with(kExitConstraintViolation, err);
  }
  return store;
}

std::string quote_ident(const std::string &name) {
  std::string out = "\"";
  for (char c : name) {
    out += c;
    if (c == '"') out += '"';
  }
  return out + "\"";
}

void collect_selects(const LensPtr &expr, std::vector<Predicate> &preds,
                     bool &has_drop) {
  if (const auto *s = expr->as<LensExpr::Select>()) {
    collect_selects(s->source, preds, has_drop);
    preds.push_back(s->pred);
  } else if (const auto *j = expr->as<LensExpr::Join>()) {
    collect_selects(j->left, preds, has_drop);
    collect_selects(j->right, preds, has_drop);
  } else if (const auto *d = expr->as<LensExpr::Drop>()) {
    has_drop = true;
    collect_selects(d->source, preds, has_drop);
  } else if (const auto *c = expr->as<LensExpr::Check>()) {
    collect_selects(c->source, preds, has_drop);
  }
}

}  // namespace

CommandResult cmd_check(const CommandContext &ctx) {
  return guarded([&] {
    CommandResult result;
    const Workspace &ws = *ctx.workspace;
    const std::size_t bound = oracle_bound_from_env();
    auto raise = [&](int status) { result.status = std::max(result.status, status); };
    for (const auto &def : ws.lenses()) {
      std::string line;
      try {
        LensPtr expr = ws.build(def.name, bindings(ctx, true));
        TranslationReport report = verify_translation(expr, ws.tables(), bound);
        if (report.functional_error) throw *report.functional_error;
        if (!report.agree()) {
          std::string msg;
          for (const auto &d : report.divergences) {
            if (!msg.empty()) msg += "; ";
            msg += d;
          }
          line = fmt::format("TranslationDivergence: {}", msg);
          raise(kExitTypeError);
        } else if (report.functional->dynamic &&
                   !ws.referenced().contains(def.name)) {
          throw unchecked(def.name);
        } else {
          line = to_string(*report.functional);
        }
      } catch (const LensTypeError &e) {
        line = e.what();
        raise(kExitTypeError);
      } catch (const PredicateError &e) {
        line = describe(e);
        raise(e.kind() == PredicateErrorKind::kSyntaxError ? kExitIoError
                                                           : kExitTypeError);
      }
      result.out += fmt::format("{} : {}\n", def.name, line);
    }
    return result;
  });
}

CommandResult cmd_get(const CommandContext &ctx, const std::string &lens) {
  return guarded([&] {
    Prepared p = prepare(ctx, lens, false, true);
    Store store = load_store(ctx, p.expr);
    return CommandResult{kExitOk, to_jsonl(get(p.expr, store)), {}};
  });
}

CommandResult cmd_put(const CommandContext &ctx, const std::string &lens,
                      const fs::path &view_file, bool dry_run) {
  return guarded([&] {
    Prepared p = prepare(ctx, lens, false, true);
    Store store = load_store(ctx, p.expr);
    std::ifstream in(view_file);
    if (!in) {
      abort_with(kExitIoError,
                 fmt::format("error: cannot read {}\n", view_file.string()));
    }
    Relation view = read_jsonl(in, p.typed->sort.row, view_file.string());
    Store updated = put(p.typed, store, view);

    CommandResult result;
    std::map<fs::path, std::string> changed;
    for (const auto &[table, before] : store) {
      const Relation &after = updated.at(table);
      std::size_t added = 0;
      std::size_t removed = 0;
      for (const auto &row : after.rows) added += !before.rows.contains(row);
      for (const auto &row : before.rows) removed += !after.rows.contains(row);
      result.out += fmt::format("{}: +{}/-{}\n", table, added, removed);
      if (added + removed > 0) {
        changed.emplace(ctx.data_dir / (table + ".jsonl"), to_jsonl(after));
      }
    }
    if (dry_run) {
      for (const auto &[table, rel] : updated) {
        result.out += fmt::format("--- {}.jsonl\n{}", table, to_jsonl(rel));
      }
    } else {
      write_files_atomically(changed);
    }
    return result;
  });
}

CommandResult cmd_explain(const CommandContext &ctx, const std::string &lens) {
  return guarded([&] {
    Prepared p = prepare(ctx, lens, true, false);
    Flattening flat = flatten(p.expr);
    SeqJudgement judgement =
        typecheck_sequential(flat.lens, source_sorts(flat, ctx.workspace->tables()));
    return CommandResult{kExitOk, explain(judgement), {}};
  });
}

CommandResult cmd_sql(const CommandContext &ctx, const std::string &lens) {
  return guarded([&] {
    Prepared p = prepare(ctx, lens, true, false);
    Flattening flat = flatten(p.expr);
    std::vector<Predicate> preds;
    bool has_drop = false;
    collect_selects(p.expr, preds, has_drop);

    std::string columns;
    for (const auto &[label, kind] : p.typed->sort.row) {
      if (!columns.empty()) columns += ", ";
      columns += quote_ident(label);
    }
    std::string from;
    for (const auto &table : flat.schema) {
      if (!from.empty()) from += " NATURAL JOIN ";
      from += quote_ident(table);
    }
    std::string where = "TRUE";
    if (!preds.empty()) {
      Predicate all = preds.front();
      for (std::size_t i = 1; i < preds.size(); ++i) all = conjoin(all, preds[i]);
      where = render_sql(all);
    }
    return CommandResult{
        kExitOk,
        fmt::format("SELECT {}{} FROM {} WHERE {}\n", has_drop ? "DISTINCT " : "",
                    columns, from, where),
        {}};
  });
}

void write_files_atomically(const std::map<fs::path, std::string> &files) {
  std::vector<std::pair<fs::path, fs::path>> staged;
  auto discard = [&] {
    std::error_code ec;
    for (const auto &[tmp, target] : staged) fs::remove(tmp, ec);
  };
  for (const auto &[target, contents] : files) {
    fs::path tmp = target.parent_path() / ("." + target.filename().string() + ".tmp");
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    staged.emplace_back(tmp, target);
    out << contents;
    out.close();
    if (!out) {
      discard();
      throw std::runtime_error(fmt::format("cannot write {}", tmp.string()));
    }
  }
  if (std::getenv("LENSDB_FAIL_BEFORE_RENAME") != nullptr) {
    discard();
    throw std::runtime_error("injected failure before rename");
  }
  for (const auto &[tmp, target] : staged) fs::rename(tmp, target);
}

}  // namespace lensdb

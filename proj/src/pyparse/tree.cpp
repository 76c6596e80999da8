#include <algorithm>

#include "pycorpus/ast.hpp"

namespace pycorpus {
namespace {

bool blocks_equal(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const Stmt& x, const Stmt& y) { return tree_equal(x, y); });
}

}  // namespace

const Expr* docstring_of(const Stmt& function) {
  if (function.body.empty()) return nullptr;
  const Stmt& first = function.body.front();
  if (first.kind != StmtKind::ExprStmt || first.exprs.size() != 1) return nullptr;
  const Expr& value = first.exprs.front();
  if (value.kind != ExprKind::Str && value.kind != ExprKind::Unicode) return nullptr;
  return &value;
}

bool tree_equal(const Stmt& a, const Stmt& b) {
  return a.kind == b.kind && a.name == b.name && a.names == b.names && a.decorators == b.decorators &&
         a.exprs == b.exprs && blocks_equal(a.body, b.body) && blocks_equal(a.orelse, b.orelse) &&
         blocks_equal(a.handlers, b.handlers) && blocks_equal(a.finalbody, b.finalbody);
}

bool tree_equal(const ModuleTree& a, const ModuleTree& b) { return blocks_equal(a.body, b.body); }

std::string_view to_string(StmtKind kind) {
  switch (kind) {
    case StmtKind::FunctionDef: return "function-def";
    case StmtKind::ClassDef: return "class-def";
    case StmtKind::Return: return "return";
    case StmtKind::Delete: return "delete";
    case StmtKind::Assign: return "assignment";
    case StmtKind::AugAssign: return "augmented-assignment";
    case StmtKind::Print: return "print";
    case StmtKind::For: return "for";
    case StmtKind::While: return "while";
    case StmtKind::If: return "if";
    case StmtKind::With: return "with";
    case StmtKind::Raise: return "raise";
    case StmtKind::Try: return "try";
    case StmtKind::ExceptHandler: return "except-handler";
    case StmtKind::Assert: return "assert";
    case StmtKind::Import: return "import";
    case StmtKind::ImportFrom: return "import-from";
    case StmtKind::Exec: return "exec";
    case StmtKind::Global: return "global";
    case StmtKind::ExprStmt: return "expression-statement";
    case StmtKind::Pass: return "pass";
    case StmtKind::Break: return "break";
    case StmtKind::Continue: return "continue";
  }
  return "unknown";
}

}  // namespace pycorpus

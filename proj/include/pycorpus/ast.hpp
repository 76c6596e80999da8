#pragma once

// Syntax tree for Python 2.7 source.
//
// Nodes are plain values. Each kind documents how it uses the generic
// `value` / `operands` slots; optional operands are filled with an Empty
// node so positions stay fixed.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pycorpus {

enum class ExprKind : std::uint8_t {
  Empty,         // placeholder for an absent optional operand
  Name,          // value = identifier
  Int,           // value = decimal digits, leading '-' when negative
  Long,          // as Int, rendered with an L suffix
  Float,         // value = shortest round-trip repr
  Imaginary,     // value = repr of the imaginary part (no 'j')
  Str,           // value = raw bytes
  Unicode,       // value = code points, extended UTF-8 (see literals.hpp)
  Tuple,         // operands = elements
  List,          // operands = elements
  Set,           // operands = elements
  Dict,          // operands = k0, v0, k1, v1, ...
  BinOp,         // value = operator, operands = [left, right]
  UnaryOp,       // value = "-", "+", "~" or "not", operands = [operand]
  BoolOp,        // value = "and" / "or", operands = values (>= 2)
  Compare,       // operands = [left, c1, c2, ...], ops = operators
  Call,          // operands = [func, positional..., Keyword..., StarArg?, KwArg?]
  Keyword,       // value = name, operands = [value]
  StarArg,       // operands = [value]
  KwArg,         // operands = [value]
  Attribute,     // value = attribute name, operands = [object]
  Subscript,     // operands = [object, index] (index may be Slice/ExtSlice/Ellipsis)
  Slice,         // operands = [lower, upper, step], each possibly Empty
  ExtSlice,      // operands = dimensions
  Ellipsis,
  Lambda,        // operands = [Arguments, body]
  Arguments,     // operands = Param..., VarParam?, KwParam?
  Param,         // operands = [target (Name or Tuple of targets), default or Empty]
  VarParam,      // value = name of *args
  KwParam,       // value = name of **kwargs
  IfExp,         // operands = [test, body, orelse]
  ListComp,      // operands = [element, Comprehension...]
  GeneratorExp,  // operands = [element, Comprehension...]
  SetComp,       // operands = [element, Comprehension...]
  DictComp,      // operands = [key, value, Comprehension...]
  Comprehension, // operands = [target, iterable, condition...]
  Yield,         // operands = [value] or []
  Repr,          // backtick repr, operands = [value]
  Alias,         // value = dotted name or "*", operands = [Name asname] or []
};

struct Expr {
  ExprKind kind = ExprKind::Empty;
  std::string value;
  std::vector<Expr> operands;
  std::vector<std::string> ops;

  Expr() = default;
  explicit Expr(ExprKind k, std::string v = {}, std::vector<Expr> children = {})
      : kind(k), value(std::move(v)), operands(std::move(children)) {}

  [[nodiscard]] bool empty() const noexcept { return kind == ExprKind::Empty; }

  friend bool operator==(const Expr&, const Expr&) = default;
};

enum class StmtKind : std::uint8_t {
  FunctionDef,   // name, decorators, exprs = [Arguments], body
  ClassDef,      // name, decorators, exprs = bases, body
  Return,        // exprs = [value] or []
  Delete,        // exprs = targets
  Assign,        // exprs = [target..., value]
  AugAssign,     // name = operator without '=', exprs = [target, value]
  Print,         // exprs = [destination or Empty, values...], name = "," when trailing comma
  For,           // exprs = [target, iterable], body, orelse
  While,         // exprs = [test], body, orelse
  If,            // exprs = [test], body, orelse (elif = orelse holding a single If)
  With,          // exprs = [context, target or Empty, ...] pairs, body
  Raise,         // exprs = up to [type, instance, traceback]
  Try,           // body, handlers (ExceptHandler), orelse, finalbody
  ExceptHandler, // exprs = [type or Empty, target or Empty], body
  Assert,        // exprs = [test] or [test, message]
  Import,        // exprs = Alias...
  ImportFrom,    // name = leading dots + module, exprs = Alias...
  Exec,          // exprs = [code, globals?, locals?]
  Global,        // names
  ExprStmt,      // exprs = [value]
  Pass,
  Break,
  Continue,
};

struct Stmt {
  StmtKind kind = StmtKind::Pass;
  int line = 0;          // 1-based line of the statement's first keyword/token
  int indent_level = 0;  // logical nesting depth, 0 at module scope
  std::string name;
  std::vector<std::string> names;
  std::vector<Expr> decorators;
  std::vector<Expr> exprs;
  std::vector<Stmt> body;
  std::vector<Stmt> orelse;
  std::vector<Stmt> handlers;
  std::vector<Stmt> finalbody;
};

struct ModuleTree {
  std::string source_path;
  std::vector<Stmt> body;
  // Set when the module imports print_function from __future__.
  bool print_function = false;
};

/// The leading string-literal statement of a function body, if any.
[[nodiscard]] const Expr* docstring_of(const Stmt& function);

/// Structural equality ignoring line numbers, indent levels and provenance.
[[nodiscard]] bool tree_equal(const Stmt& a, const Stmt& b);
[[nodiscard]] bool tree_equal(const ModuleTree& a, const ModuleTree& b);

[[nodiscard]] std::string_view to_string(StmtKind kind);

}  // namespace pycorpus

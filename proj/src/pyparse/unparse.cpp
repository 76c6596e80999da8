// Canonical unparsing.
//
// Every operator application is parenthesized, so the output never depends
// on precedence. A few spellings are forced by reversibility:
//   - negative literals are always wrapped, "(-1)", because the parser folds
//     `-1` into a literal but keeps `-(1)` as a unary operation;
//   - unary minus on a non-negative number literal wraps the operand,
//     "(- (1))", for the same reason;
//   - an integer literal followed by an attribute gets a space, "1 .real";
//   - a one-dimensional extended slice keeps its trailing comma, "a[1:2,]".

#include <string>

#include "pycorpus/literals.hpp"
#include "pycorpus/pyparse.hpp"

namespace pycorpus {
namespace {

bool is_number(const Expr& e) {
  return e.kind == ExprKind::Int || e.kind == ExprKind::Long || e.kind == ExprKind::Float ||
         e.kind == ExprKind::Imaginary;
}

template <typename Range, typename Fn>
std::string join(const Range& items, std::string_view sep, Fn&& fn) {
  std::string out;
  bool first = true;
  for (const auto& item : items) {
    if (!first) out += sep;
    out += fn(item);
    first = false;
  }
  return out;
}

std::string join_exprs(const std::vector<Expr>& items, std::size_t from = 0) {
  std::string out;
  for (std::size_t i = from; i < items.size(); ++i) {
    if (i > from) out += ", ";
    out += unparse_expr(items[i]);
  }
  return out;
}

std::string number_text(const Expr& e) {
  std::string s = e.value;
  if (e.kind == ExprKind::Long) s += 'L';
  if (e.kind == ExprKind::Imaginary) s += 'j';
  if (!e.value.empty() && e.value[0] == '-') return "(" + s + ")";
  return s;
}

std::string comprehension_tail(const std::vector<Expr>& operands, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < operands.size(); ++i) {
    const Expr& c = operands[i];
    out += " for " + unparse_expr(c.operands[0]) + " in " + unparse_expr(c.operands[1]);
    for (std::size_t k = 2; k < c.operands.size(); ++k) out += " if " + unparse_expr(c.operands[k]);
  }
  return out;
}

std::string index_text(const Expr& index) {
  switch (index.kind) {
    case ExprKind::Slice: {
      std::string out;
      if (!index.operands[0].empty()) out += unparse_expr(index.operands[0]);
      out += ':';
      if (!index.operands[1].empty()) out += unparse_expr(index.operands[1]);
      if (index.value == "3") {
        out += ':';
        if (!index.operands[2].empty()) out += unparse_expr(index.operands[2]);
      }
      return out;
    }
    case ExprKind::ExtSlice: {
      std::string out = join(index.operands, ", ", index_text);
      if (index.operands.size() == 1) out += ',';
      return out;
    }
    case ExprKind::Ellipsis:
      return "...";
    default:
      return unparse_expr(index);
  }
}

std::string arguments_text(const Expr& args) {
  return join(args.operands, ", ", [](const Expr& p) {
    switch (p.kind) {
      case ExprKind::VarParam: return "*" + p.value;
      case ExprKind::KwParam: return "**" + p.value;
      default: {
        std::string s = unparse_expr(p.operands[0]);
        if (!p.operands[1].empty()) s += "=" + unparse_expr(p.operands[1]);
        return s;
      }
    }
  });
}

class Emitter {
 public:
  std::vector<CanonicalLine> lines;

  void emit(int indent, std::string text) { lines.push_back({indent, std::move(text)}); }

  void block(const std::vector<Stmt>& body, int indent) {
    for (const auto& s : body) statement(s, indent);
  }

  void header(const Stmt& s, int indent) {
    for (const auto& d : s.decorators) emit(indent, "@" + unparse_expr(d));
    if (s.kind == StmtKind::FunctionDef) {
      emit(indent, "def " + s.name + "(" + arguments_text(s.exprs.at(0)) + "):");
    } else if (s.exprs.empty()) {
      emit(indent, "class " + s.name + ":");
    } else {
      emit(indent, "class " + s.name + "(" + join_exprs(s.exprs) + "):");
    }
  }

  void statement(const Stmt& s, int indent) {
    switch (s.kind) {
      case StmtKind::FunctionDef:
      case StmtKind::ClassDef:
        header(s, indent);
        block(s.body, indent + 1);
        return;
      case StmtKind::Return:
        emit(indent, s.exprs.empty() ? "return" : "return " + unparse_expr(s.exprs[0]));
        return;
      case StmtKind::Delete:
        emit(indent, "del " + join_exprs(s.exprs));
        return;
      case StmtKind::Assign: {
        std::string text;
        for (const auto& e : s.exprs) {
          if (!text.empty()) text += " = ";
          text += unparse_expr(e);
        }
        emit(indent, std::move(text));
        return;
      }
      case StmtKind::AugAssign:
        emit(indent, unparse_expr(s.exprs[0]) + " " + s.name + "= " + unparse_expr(s.exprs[1]));
        return;
      case StmtKind::Print: {
        std::vector<std::string> parts;
        if (!s.exprs[0].empty()) parts.push_back(">>" + unparse_expr(s.exprs[0]));
        for (std::size_t i = 1; i < s.exprs.size(); ++i) parts.push_back(unparse_expr(s.exprs[i]));
        std::string text = "print";
        if (!parts.empty()) text += " " + join(parts, ", ", [](const std::string& p) { return p; });
        if (s.name == ",") text += ",";
        emit(indent, std::move(text));
        return;
      }
      case StmtKind::For:
        emit(indent, "for " + unparse_expr(s.exprs[0]) + " in " + unparse_expr(s.exprs[1]) + ":");
        block(s.body, indent + 1);
        else_block(s.orelse, indent);
        return;
      case StmtKind::While:
        emit(indent, "while " + unparse_expr(s.exprs[0]) + ":");
        block(s.body, indent + 1);
        else_block(s.orelse, indent);
        return;
      case StmtKind::If: {
        emit(indent, "if " + unparse_expr(s.exprs[0]) + ":");
        block(s.body, indent + 1);
        const Stmt* cur = &s;
        while (cur->orelse.size() == 1 && cur->orelse[0].kind == StmtKind::If) {
          cur = &cur->orelse[0];
          emit(indent, "elif " + unparse_expr(cur->exprs[0]) + ":");
          block(cur->body, indent + 1);
        }
        else_block(cur->orelse, indent);
        return;
      }
      case StmtKind::With: {
        std::string text = "with ";
        for (std::size_t i = 0; i + 1 < s.exprs.size(); i += 2) {
          if (i > 0) text += ", ";
          text += unparse_expr(s.exprs[i]);
          if (!s.exprs[i + 1].empty()) text += " as " + unparse_expr(s.exprs[i + 1]);
        }
        emit(indent, text + ":");
        block(s.body, indent + 1);
        return;
      }
      case StmtKind::Raise:
        emit(indent, s.exprs.empty() ? "raise" : "raise " + join_exprs(s.exprs));
        return;
      case StmtKind::Try:
        emit(indent, "try:");
        block(s.body, indent + 1);
        for (const auto& h : s.handlers) statement(h, indent);
        else_block(s.orelse, indent);
        if (!s.finalbody.empty()) {
          emit(indent, "finally:");
          block(s.finalbody, indent + 1);
        }
        return;
      case StmtKind::ExceptHandler: {
        std::string text = "except";
        if (!s.exprs[0].empty()) text += " " + unparse_expr(s.exprs[0]);
        if (!s.exprs[1].empty()) text += " as " + unparse_expr(s.exprs[1]);
        emit(indent, text + ":");
        block(s.body, indent + 1);
        return;
      }
      case StmtKind::Assert:
        emit(indent, "assert " + join_exprs(s.exprs));
        return;
      case StmtKind::Import:
        emit(indent, "import " + join_exprs(s.exprs));
        return;
      case StmtKind::ImportFrom:
        emit(indent, "from " + s.name + " import " + join_exprs(s.exprs));
        return;
      case StmtKind::Exec: {
        std::string text = "exec " + unparse_expr(s.exprs[0]);
        if (s.exprs.size() > 1) text += " in " + join_exprs(s.exprs, 1);
        emit(indent, std::move(text));
        return;
      }
      case StmtKind::Global:
        emit(indent, "global " + join(s.names, ", ", [](const std::string& n) { return n; }));
        return;
      case StmtKind::ExprStmt:
        emit(indent, unparse_expr(s.exprs[0]));
        return;
      case StmtKind::Pass:
        emit(indent, "pass");
        return;
      case StmtKind::Break:
        emit(indent, "break");
        return;
      case StmtKind::Continue:
        emit(indent, "continue");
        return;
    }
  }

  void else_block(const std::vector<Stmt>& orelse, int indent) {
    if (orelse.empty()) return;
    emit(indent, "else:");
    block(orelse, indent + 1);
  }
};

}  // namespace

std::string unparse_expr(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Empty:
      return {};
    case ExprKind::Name:
      return e.value;
    case ExprKind::Int:
    case ExprKind::Long:
    case ExprKind::Float:
    case ExprKind::Imaginary:
      return number_text(e);
    case ExprKind::Str:
      return literals::render_str(e.value);
    case ExprKind::Unicode:
      return literals::render_unicode(e.value);
    case ExprKind::Tuple:
      return "(" + join_exprs(e.operands) + (e.operands.size() == 1 ? ",)" : ")");
    case ExprKind::List:
      return "[" + join_exprs(e.operands) + "]";
    case ExprKind::Set:
      return "{" + join_exprs(e.operands) + "}";
    case ExprKind::Dict: {
      std::string out = "{";
      for (std::size_t i = 0; i + 1 < e.operands.size(); i += 2) {
        if (i > 0) out += ", ";
        out += unparse_expr(e.operands[i]) + ": " + unparse_expr(e.operands[i + 1]);
      }
      return out + "}";
    }
    case ExprKind::BinOp:
      return "(" + unparse_expr(e.operands[0]) + " " + e.value + " " + unparse_expr(e.operands[1]) + ")";
    case ExprKind::UnaryOp: {
      const Expr& operand = e.operands[0];
      std::string inner = unparse_expr(operand);
      if (e.value == "-" && is_number(operand) && !operand.value.starts_with("-")) inner = "(" + inner + ")";
      return "(" + e.value + " " + inner + ")";
    }
    case ExprKind::BoolOp:
      return "(" + join(e.operands, " " + e.value + " ", unparse_expr) + ")";
    case ExprKind::Compare: {
      std::string out = "(" + unparse_expr(e.operands[0]);
      for (std::size_t i = 0; i < e.ops.size(); ++i) out += " " + e.ops[i] + " " + unparse_expr(e.operands[i + 1]);
      return out + ")";
    }
    case ExprKind::Call:
      return unparse_expr(e.operands[0]) + "(" + join_exprs(e.operands, 1) + ")";
    case ExprKind::Keyword:
      return e.value + "=" + unparse_expr(e.operands[0]);
    case ExprKind::StarArg:
      return "*" + unparse_expr(e.operands[0]);
    case ExprKind::KwArg:
      return "**" + unparse_expr(e.operands[0]);
    case ExprKind::Attribute: {
      const Expr& obj = e.operands[0];
      std::string out = unparse_expr(obj);
      if (obj.kind == ExprKind::Int && !obj.value.starts_with("-")) out += " ";
      return out + "." + e.value;
    }
    case ExprKind::Subscript:
      return unparse_expr(e.operands[0]) + "[" + index_text(e.operands[1]) + "]";
    case ExprKind::Slice:
    case ExprKind::ExtSlice:
    case ExprKind::Ellipsis:
      return index_text(e);
    case ExprKind::Lambda: {
      std::string params = arguments_text(e.operands[0]);
      return "(lambda" + (params.empty() ? std::string() : " " + params) + ": " + unparse_expr(e.operands[1]) +
             ")";
    }
    case ExprKind::Arguments:
      return arguments_text(e);
    case ExprKind::Param:
    case ExprKind::VarParam:
    case ExprKind::KwParam:
      return arguments_text(Expr(ExprKind::Arguments, {}, {e}));
    case ExprKind::IfExp:
      return "(" + unparse_expr(e.operands[1]) + " if " + unparse_expr(e.operands[0]) + " else " +
             unparse_expr(e.operands[2]) + ")";
    case ExprKind::ListComp:
      return "[" + unparse_expr(e.operands[0]) + comprehension_tail(e.operands, 1) + "]";
    case ExprKind::GeneratorExp:
      return "(" + unparse_expr(e.operands[0]) + comprehension_tail(e.operands, 1) + ")";
    case ExprKind::SetComp:
      return "{" + unparse_expr(e.operands[0]) + comprehension_tail(e.operands, 1) + "}";
    case ExprKind::DictComp:
      return "{" + unparse_expr(e.operands[0]) + ": " + unparse_expr(e.operands[1]) +
             comprehension_tail(e.operands, 2) + "}";
    case ExprKind::Comprehension:
      return comprehension_tail({e}, 0).substr(1);
    case ExprKind::Yield:
      return e.operands.empty() ? "(yield)" : "(yield " + unparse_expr(e.operands[0]) + ")";
    case ExprKind::Repr:
      return "`" + unparse_expr(e.operands[0]) + "`";
    case ExprKind::Alias:
      return e.operands.empty() ? e.value : e.value + " as " + e.operands[0].value;
  }
  return {};
}

std::vector<CanonicalLine> unparse_canonical(const Stmt& stmt) {
  Emitter em;
  em.statement(stmt, stmt.indent_level);
  return std::move(em.lines);
}

std::vector<CanonicalLine> unparse_canonical(const ModuleTree& tree) { return unparse_block(tree.body, 0); }

std::vector<CanonicalLine> unparse_block(std::span<const Stmt> body, int indent) {
  Emitter em;
  for (const auto& s : body) em.statement(s, indent);
  return std::move(em.lines);
}

std::vector<CanonicalLine> unparse_header(const Stmt& definition) {
  Emitter em;
  em.header(definition, definition.indent_level);
  return std::move(em.lines);
}

std::string render(std::span<const CanonicalLine> lines) {
  std::string out;
  for (const auto& line : lines) {
    out.append(static_cast<std::size_t>(line.indent) * 4, ' ');
    out += line.text;
    out += '\n';
  }
  return out;
}

}  // namespace pycorpus

// Recursive-descent parser for the Python 2.7 grammar.
//
// Tree shapes follow the CPython 2.7 ast module where that matters for
// reversibility: `-<number>` is folded into a negative literal, adjacent
// string literals are concatenated, `a and b and c` is a single BoolOp, an
// elif is an If nested in orelse, and call arguments are regrouped into
// positional, keyword, *args, **kwargs.

#include <array>
#include <unordered_set>

#include "pycorpus/literals.hpp"
#include "pycorpus/pyparse.hpp"
#include "tokenizer.hpp"

namespace pycorpus {

ParseFailure::ParseFailure(std::string path, int line, std::string reason)
    : std::runtime_error(path + ":" + std::to_string(line) + ": " + reason),
      path_(std::move(path)),
      line_(line),
      reason_(std::move(reason)) {}

namespace {

using detail::Token;
using detail::TokenType;

const std::unordered_set<std::string_view> kKeywords = {
    "and",  "as",   "assert", "break",  "class", "continue", "def",    "del",   "elif",
    "else", "except", "exec", "finally", "for",  "from",     "global", "if",    "import",
    "in",   "is",   "lambda", "not",    "or",    "pass",     "print",  "raise", "return",
    "try",  "while", "with",  "yield"};

constexpr std::array<std::string_view, 12> kAugOps = {"+=", "-=", "*=", "/=", "%=", "&=",
                                                      "|=", "^=", "<<=", ">>=", "**=", "//="};

bool is_literal(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Int: case ExprKind::Long: case ExprKind::Float: case ExprKind::Imaginary:
    case ExprKind::Str: case ExprKind::Unicode:
      return true;
    default:
      return false;
  }
}

std::string_view describe(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Call: return "function call";
    case ExprKind::Yield: return "yield expression";
    case ExprKind::Lambda: return "lambda";
    case ExprKind::Compare: return "comparison";
    case ExprKind::IfExp: return "conditional expression";
    case ExprKind::ListComp: return "list comprehension";
    case ExprKind::GeneratorExp: return "generator expression";
    case ExprKind::Repr: return "repr";
    default: return is_literal(e) ? "literal" : "operator";
  }
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string path, ParseOptions options)
      : tokens_(std::move(tokens)), path_(std::move(path)), print_function_(options.print_function) {}

  ModuleTree parse_file() {
    ModuleTree tree;
    tree.source_path = path_;
    while (!at(TokenType::End)) {
      if (at(TokenType::Newline)) {
        advance();
        continue;
      }
      parse_statement(0, tree.body);
    }
    tree.print_function = print_function_;
    return tree;
  }

 private:
  // ---- token helpers ------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  bool at(TokenType type) const { return peek().type == type; }
  bool at_op(std::string_view op, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.type == TokenType::Op && t.text == op;
  }
  bool is_keyword(std::string_view word) const {
    if (word == "print" && print_function_) return false;
    return kKeywords.contains(word);
  }
  bool at_keyword(std::string_view kw, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.type == TokenType::Name && t.text == kw && is_keyword(kw);
  }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& reason) const { fail_at(peek().line, reason); }
  [[noreturn]] void fail_at(int line, const std::string& reason) const {
    throw ParseFailure(path_, line, reason);
  }
  [[noreturn]] void unexpected() const {
    const Token& t = peek();
    switch (t.type) {
      case TokenType::Newline: fail("invalid syntax (unexpected end of line)");
      case TokenType::Indent: fail("unexpected indent");
      case TokenType::Dedent: fail("unindent does not match expected block");
      case TokenType::End: fail("unexpected EOF while parsing");
      default: fail("invalid syntax near '" + t.text + "'");
    }
  }

  void expect_op(std::string_view op) {
    if (!at_op(op)) unexpected();
    advance();
  }
  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) unexpected();
    advance();
  }
  std::string identifier() {
    const Token& t = peek();
    if (t.type != TokenType::Name || is_keyword(t.text)) unexpected();
    return advance().text;
  }
  void expect_newline() {
    if (!at(TokenType::Newline)) unexpected();
    advance();
  }

  // ---- statements ---------------------------------------------------------

  Stmt make(StmtKind kind, int line, int depth) const {
    Stmt s;
    s.kind = kind;
    s.line = line;
    s.indent_level = depth;
    return s;
  }

  void parse_statement(int depth, std::vector<Stmt>& out) {
    const Token& t = peek();
    if (t.type == TokenType::Indent) fail("unexpected indent");
    if (t.type == TokenType::Op && t.text == "@") {
      out.push_back(parse_decorated(depth));
      return;
    }
    if (t.type == TokenType::Name && is_keyword(t.text)) {
      const std::string& kw = t.text;
      if (kw == "if") { out.push_back(parse_if(depth)); return; }
      if (kw == "while") { out.push_back(parse_while(depth)); return; }
      if (kw == "for") { out.push_back(parse_for(depth)); return; }
      if (kw == "try") { out.push_back(parse_try(depth)); return; }
      if (kw == "with") { out.push_back(parse_with(depth)); return; }
      if (kw == "def") { out.push_back(parse_funcdef(depth, {})); return; }
      if (kw == "class") { out.push_back(parse_classdef(depth, {})); return; }
    }
    parse_simple_statement(depth, out);
  }

  std::vector<Stmt> parse_suite(int depth) {
    std::vector<Stmt> body;
    if (!at(TokenType::Newline)) {
      parse_simple_statement(depth, body);
      return body;
    }
    advance();
    if (!at(TokenType::Indent)) fail("expected an indented block");
    advance();
    while (!at(TokenType::Dedent) && !at(TokenType::End)) {
      if (at(TokenType::Newline)) {
        advance();
        continue;
      }
      parse_statement(depth, body);
    }
    if (at(TokenType::Dedent)) advance();
    return body;
  }

  Stmt parse_if(int depth) {
    // Called with 'if' or 'elif' under the cursor.
    Stmt s = make(StmtKind::If, advance().line, depth);
    s.exprs.push_back(parse_test());
    expect_op(":");
    s.body = parse_suite(depth + 1);
    if (at_keyword("elif")) {
      s.orelse.push_back(parse_if(depth + 1));
    } else if (at_keyword("else")) {
      advance();
      expect_op(":");
      s.orelse = parse_suite(depth + 1);
    }
    return s;
  }

  void parse_else(Stmt& s, int depth) {
    if (at_keyword("else")) {
      advance();
      expect_op(":");
      s.orelse = parse_suite(depth + 1);
    }
  }

  Stmt parse_while(int depth) {
    Stmt s = make(StmtKind::While, advance().line, depth);
    s.exprs.push_back(parse_test());
    expect_op(":");
    s.body = parse_suite(depth + 1);
    parse_else(s, depth);
    return s;
  }

  Stmt parse_for(int depth) {
    Stmt s = make(StmtKind::For, advance().line, depth);
    Expr target = parse_exprlist();
    check_store(target, "for loop target");
    s.exprs.push_back(std::move(target));
    expect_keyword("in");
    s.exprs.push_back(parse_testlist());
    expect_op(":");
    s.body = parse_suite(depth + 1);
    parse_else(s, depth);
    return s;
  }

  Stmt parse_try(int depth) {
    Stmt s = make(StmtKind::Try, advance().line, depth);
    expect_op(":");
    s.body = parse_suite(depth + 1);
    while (at_keyword("except")) {
      Stmt h = make(StmtKind::ExceptHandler, advance().line, depth);
      Expr type;
      Expr name;
      if (!at_op(":")) {
        type = parse_test();
        if (at_keyword("as") || at_op(",")) {
          advance();
          name = parse_test();
          check_store(name, "except target");
        }
      }
      h.exprs.push_back(std::move(type));
      h.exprs.push_back(std::move(name));
      expect_op(":");
      h.body = parse_suite(depth + 1);
      s.handlers.push_back(std::move(h));
    }
    if (!s.handlers.empty()) parse_else(s, depth);
    if (at_keyword("finally")) {
      advance();
      expect_op(":");
      s.finalbody = parse_suite(depth + 1);
    }
    if (s.handlers.empty() && s.finalbody.empty()) unexpected();
    return s;
  }

  Stmt parse_with(int depth) {
    Stmt s = make(StmtKind::With, advance().line, depth);
    while (true) {
      s.exprs.push_back(parse_test());
      Expr target;
      if (at_keyword("as")) {
        advance();
        target = parse_expr();
        check_store(target, "with target");
      }
      s.exprs.push_back(std::move(target));
      if (!at_op(",")) break;
      advance();
    }
    expect_op(":");
    s.body = parse_suite(depth + 1);
    return s;
  }

  Stmt parse_decorated(int depth) {
    std::vector<Expr> decorators;
    while (at_op("@")) {
      advance();
      Expr dec(ExprKind::Name, identifier());
      while (at_op(".")) {
        advance();
        dec = Expr(ExprKind::Attribute, identifier(), {std::move(dec)});
      }
      if (at_op("(")) {
        advance();
        dec = parse_call_arguments(std::move(dec));
      }
      expect_newline();
      decorators.push_back(std::move(dec));
    }
    if (at_keyword("def")) return parse_funcdef(depth, std::move(decorators));
    if (at_keyword("class")) return parse_classdef(depth, std::move(decorators));
    unexpected();
  }

  Stmt parse_funcdef(int depth, std::vector<Expr> decorators) {
    Stmt s = make(StmtKind::FunctionDef, advance().line, depth);
    s.name = identifier();
    s.decorators = std::move(decorators);
    expect_op("(");
    s.exprs.push_back(parse_varargslist(")"));
    expect_op(")");
    expect_op(":");
    s.body = parse_suite(depth + 1);
    return s;
  }

  Stmt parse_classdef(int depth, std::vector<Expr> decorators) {
    Stmt s = make(StmtKind::ClassDef, advance().line, depth);
    s.name = identifier();
    s.decorators = std::move(decorators);
    if (at_op("(")) {
      advance();
      while (!at_op(")")) {
        s.exprs.push_back(parse_test());
        if (!at_op(",")) break;
        advance();
      }
      expect_op(")");
    }
    expect_op(":");
    s.body = parse_suite(depth + 1);
    return s;
  }

  void parse_simple_statement(int depth, std::vector<Stmt>& out) {
    while (true) {
      out.push_back(parse_small_statement(depth));
      if (!at_op(";")) break;
      advance();
      if (at(TokenType::Newline)) break;
    }
    expect_newline();
  }

  Stmt parse_small_statement(int depth) {
    const Token& t = peek();
    const int line = t.line;
    if (t.type == TokenType::Name && is_keyword(t.text)) {
      const std::string kw = t.text;
      if (kw == "pass" || kw == "break" || kw == "continue") {
        advance();
        return make(kw == "pass" ? StmtKind::Pass : kw == "break" ? StmtKind::Break : StmtKind::Continue,
                    line, depth);
      }
      if (kw == "print") return parse_print(depth);
      if (kw == "del") {
        advance();
        Stmt s = make(StmtKind::Delete, line, depth);
        s.exprs = parse_expr_sequence();
        for (const auto& target : s.exprs) check_store(target, "del target");
        return s;
      }
      if (kw == "return") {
        advance();
        Stmt s = make(StmtKind::Return, line, depth);
        if (!at_statement_end()) s.exprs.push_back(parse_testlist());
        return s;
      }
      if (kw == "raise") {
        advance();
        Stmt s = make(StmtKind::Raise, line, depth);
        if (!at_statement_end()) {
          s.exprs.push_back(parse_test());
          for (int k = 0; k < 2 && at_op(","); ++k) {
            advance();
            s.exprs.push_back(parse_test());
          }
        }
        return s;
      }
      if (kw == "yield") {
        Stmt s = make(StmtKind::ExprStmt, line, depth);
        s.exprs.push_back(parse_yield());
        return s;
      }
      if (kw == "import") return parse_import(depth);
      if (kw == "from") return parse_import_from(depth);
      if (kw == "global") {
        advance();
        Stmt s = make(StmtKind::Global, line, depth);
        s.names.push_back(identifier());
        while (at_op(",")) {
          advance();
          s.names.push_back(identifier());
        }
        return s;
      }
      if (kw == "exec") {
        advance();
        Stmt s = make(StmtKind::Exec, line, depth);
        s.exprs.push_back(parse_expr());
        if (at_keyword("in")) {
          advance();
          s.exprs.push_back(parse_test());
          if (at_op(",")) {
            advance();
            s.exprs.push_back(parse_test());
          }
        }
        return s;
      }
      if (kw == "assert") {
        advance();
        Stmt s = make(StmtKind::Assert, line, depth);
        s.exprs.push_back(parse_test());
        if (at_op(",")) {
          advance();
          s.exprs.push_back(parse_test());
        }
        return s;
      }
    }
    return parse_expr_statement(depth);
  }

  bool at_statement_end() const { return at(TokenType::Newline) || at_op(";"); }

  Stmt parse_print(int depth) {
    Stmt s = make(StmtKind::Print, advance().line, depth);
    Expr dest;
    bool need_comma = false;
    if (at_op(">>")) {
      advance();
      dest = parse_test();
      need_comma = true;
    }
    s.exprs.push_back(std::move(dest));
    while (!at_statement_end()) {
      if (need_comma) {
        expect_op(",");
        if (at_statement_end()) {
          if (s.exprs.size() == 1) unexpected();  // `print >>f,`
          s.name = ",";
          break;
        }
      }
      s.exprs.push_back(parse_test());
      need_comma = true;
    }
    return s;
  }

  std::string dotted_name() {
    std::string name = identifier();
    while (at_op(".")) {
      advance();
      name += "." + identifier();
    }
    return name;
  }

  Expr alias(std::string name) {
    Expr a(ExprKind::Alias, std::move(name));
    if (at_keyword("as")) {
      advance();
      a.operands.emplace_back(ExprKind::Name, identifier());
    }
    return a;
  }

  Stmt parse_import(int depth) {
    Stmt s = make(StmtKind::Import, advance().line, depth);
    while (true) {
      s.exprs.push_back(alias(dotted_name()));
      if (!at_op(",")) break;
      advance();
    }
    return s;
  }

  Stmt parse_import_from(int depth) {
    Stmt s = make(StmtKind::ImportFrom, advance().line, depth);
    std::string module;
    while (at_op(".") || at_op("...")) module += advance().text;
    if (!at_keyword("import")) module += dotted_name();
    if (module.empty()) unexpected();
    s.name = module;
    expect_keyword("import");
    if (at_op("*")) {
      advance();
      s.exprs.emplace_back(ExprKind::Alias, "*");
      return s;
    }
    const bool parens = at_op("(");
    if (parens) advance();
    while (true) {
      s.exprs.push_back(alias(identifier()));
      if (!at_op(",")) break;
      advance();
      if (parens && at_op(")")) break;
    }
    if (parens) expect_op(")");
    if (module == "__future__") {
      for (const auto& a : s.exprs)
        if (a.value == "print_function") print_function_ = true;
    }
    return s;
  }

  Stmt parse_expr_statement(int depth) {
    Stmt s = make(StmtKind::Assign, peek().line, depth);
    Expr first = parse_testlist();
    if (peek().type == TokenType::Op) {
      for (auto op : kAugOps) {
        if (peek().text != op) continue;
        advance();
        if (first.kind != ExprKind::Name && first.kind != ExprKind::Attribute &&
            first.kind != ExprKind::Subscript)
          fail_at(s.line, "illegal expression for augmented assignment");
        check_store(first, "augmented assignment");
        s.kind = StmtKind::AugAssign;
        s.name = std::string(op.substr(0, op.size() - 1));
        s.exprs.push_back(std::move(first));
        s.exprs.push_back(at_keyword("yield") ? parse_yield() : parse_testlist());
        return s;
      }
    }
    if (!at_op("=")) {
      s.kind = StmtKind::ExprStmt;
      s.exprs.push_back(std::move(first));
      return s;
    }
    s.exprs.push_back(std::move(first));
    while (at_op("=")) {
      advance();
      s.exprs.push_back(at_keyword("yield") ? parse_yield() : parse_testlist());
    }
    for (std::size_t i = 0; i + 1 < s.exprs.size(); ++i) check_store(s.exprs[i], "assignment");
    return s;
  }

  void check_store(const Expr& e, std::string_view what) const {
    switch (e.kind) {
      case ExprKind::Name:
        if (e.value == "None") fail_at(peek().line, "cannot assign to None");
        return;
      case ExprKind::Attribute:
      case ExprKind::Subscript:
        return;
      case ExprKind::Tuple:
      case ExprKind::List:
        for (const auto& el : e.operands) check_store(el, what);
        return;
      default:
        fail_at(peek().line, "can't assign to " + std::string(describe(e)) + " in " + std::string(what));
    }
  }

  // ---- expressions --------------------------------------------------------

  Expr parse_yield() {
    expect_keyword("yield");
    Expr y(ExprKind::Yield);
    if (!at_statement_end() && !at_op(")") && !at_op("=")) y.operands.push_back(parse_testlist());
    return y;
  }

  bool at_test_start() const {
    const Token& t = peek();
    switch (t.type) {
      case TokenType::Name:
        return !is_keyword(t.text) || t.text == "not" || t.text == "lambda";
      case TokenType::Number:
      case TokenType::String:
        return true;
      case TokenType::Op:
        return t.text == "(" || t.text == "[" || t.text == "{" || t.text == "`" || t.text == "-" ||
               t.text == "+" || t.text == "~";
      default:
        return false;
    }
  }

  // test (',' test)* [','] -- a Tuple when any comma is present.
  Expr parse_testlist() {
    Expr first = parse_test();
    if (!at_op(",")) return first;
    Expr tuple(ExprKind::Tuple);
    tuple.operands.push_back(std::move(first));
    while (at_op(",")) {
      advance();
      if (!at_test_start()) break;
      tuple.operands.push_back(parse_test());
    }
    return tuple;
  }

  // exprlist as a single target (Tuple when comma-separated).
  Expr parse_exprlist() {
    Expr first = parse_expr();
    if (!at_op(",")) return first;
    Expr tuple(ExprKind::Tuple);
    tuple.operands.push_back(std::move(first));
    while (at_op(",")) {
      advance();
      if (!at_test_start()) break;
      tuple.operands.push_back(parse_expr());
    }
    return tuple;
  }

  // exprlist as separate items (del statement).
  std::vector<Expr> parse_expr_sequence() {
    std::vector<Expr> items;
    items.push_back(parse_expr());
    while (at_op(",")) {
      advance();
      if (!at_test_start()) break;
      items.push_back(parse_expr());
    }
    return items;
  }

  Expr parse_test() {
    if (at_keyword("lambda")) return parse_lambda(false);
    Expr body = parse_or_test();
    if (!at_keyword("if")) return body;
    advance();
    Expr cond = parse_or_test();
    expect_keyword("else");
    Expr orelse = parse_test();
    return Expr(ExprKind::IfExp, {}, {std::move(cond), std::move(body), std::move(orelse)});
  }

  Expr parse_old_test() {
    if (at_keyword("lambda")) return parse_lambda(true);
    return parse_or_test();
  }

  Expr parse_lambda(bool old) {
    expect_keyword("lambda");
    Expr args = parse_varargslist(":");
    expect_op(":");
    Expr body = old ? parse_old_test() : parse_test();
    return Expr(ExprKind::Lambda, {}, {std::move(args), std::move(body)});
  }

  Expr parse_bool(std::string_view op, Expr (Parser::*next)()) {
    Expr first = (this->*next)();
    if (!at_keyword(op)) return first;
    Expr b(ExprKind::BoolOp, std::string(op));
    b.operands.push_back(std::move(first));
    while (at_keyword(op)) {
      advance();
      b.operands.push_back((this->*next)());
    }
    return b;
  }
  Expr parse_or_test() { return parse_bool("or", &Parser::parse_and_test); }
  Expr parse_and_test() { return parse_bool("and", &Parser::parse_not_test); }

  Expr parse_not_test() {
    if (at_keyword("not")) {
      advance();
      return Expr(ExprKind::UnaryOp, "not", {parse_not_test()});
    }
    return parse_comparison();
  }

  std::optional<std::string> comparison_operator() {
    const Token& t = peek();
    if (t.type == TokenType::Op) {
      static const std::unordered_set<std::string_view> ops = {"<", ">", "==", ">=", "<=", "!=", "<>"};
      if (ops.contains(t.text)) {
        std::string op = advance().text;
        return op == "<>" ? std::string("!=") : op;
      }
      return std::nullopt;
    }
    if (at_keyword("in")) {
      advance();
      return "in";
    }
    if (at_keyword("not") && at_keyword("in", 1)) {
      advance();
      advance();
      return "not in";
    }
    if (at_keyword("is")) {
      advance();
      if (at_keyword("not")) {
        advance();
        return "is not";
      }
      return "is";
    }
    return std::nullopt;
  }

  Expr parse_comparison() {
    Expr left = parse_expr();
    auto op = comparison_operator();
    if (!op) return left;
    Expr cmp(ExprKind::Compare);
    cmp.operands.push_back(std::move(left));
    while (op) {
      cmp.ops.push_back(*op);
      cmp.operands.push_back(parse_expr());
      op = comparison_operator();
    }
    return cmp;
  }

  template <std::size_t N>
  Expr parse_binary(const std::array<std::string_view, N>& ops, Expr (Parser::*next)()) {
    Expr left = (this->*next)();
    while (peek().type == TokenType::Op) {
      bool matched = false;
      for (auto op : ops) {
        if (peek().text == op) {
          matched = true;
          break;
        }
      }
      if (!matched) break;
      std::string op = advance().text;
      Expr right = (this->*next)();
      left = Expr(ExprKind::BinOp, op, {std::move(left), std::move(right)});
    }
    return left;
  }

  Expr parse_expr() { return parse_binary(std::array<std::string_view, 1>{"|"}, &Parser::parse_xor); }
  Expr parse_xor() { return parse_binary(std::array<std::string_view, 1>{"^"}, &Parser::parse_and); }
  Expr parse_and() { return parse_binary(std::array<std::string_view, 1>{"&"}, &Parser::parse_shift); }
  Expr parse_shift() {
    return parse_binary(std::array<std::string_view, 2>{"<<", ">>"}, &Parser::parse_arith);
  }
  Expr parse_arith() { return parse_binary(std::array<std::string_view, 2>{"+", "-"}, &Parser::parse_term); }
  Expr parse_term() {
    return parse_binary(std::array<std::string_view, 4>{"*", "/", "%", "//"}, &Parser::parse_factor);
  }

  Expr parse_factor() {
    if (at_op("-") || at_op("+") || at_op("~")) {
      std::string op = advance().text;
      if (op == "-" && at(TokenType::Number) && !at_op("(", 1) && !at_op("[", 1) && !at_op(".", 1) &&
          !at_op("**", 1)) {
        Expr num = parse_number(advance());
        negate_literal(num);
        return num;
      }
      return Expr(ExprKind::UnaryOp, op, {parse_factor()});
    }
    return parse_power();
  }

  static void negate_literal(Expr& num) {
    std::string& v = num.value;
    if (v.starts_with("-")) {
      v.erase(0, 1);
      return;
    }
    if ((num.kind == ExprKind::Int || num.kind == ExprKind::Long) && v == "0") return;
    v.insert(0, "-");
  }

  Expr parse_power() {
    Expr base = parse_atom_with_trailers();
    if (at_op("**")) {
      advance();
      Expr exponent = parse_factor();
      return Expr(ExprKind::BinOp, "**", {std::move(base), std::move(exponent)});
    }
    return base;
  }

  Expr parse_number(const Token& t) {
    std::string error;
    auto num = literals::decode_number(t.text, error);
    if (!num) fail_at(t.line, error);
    return std::move(*num);
  }

  Expr parse_atom_with_trailers() {
    Expr e = parse_atom();
    while (true) {
      if (at_op("(")) {
        advance();
        e = parse_call_arguments(std::move(e));
      } else if (at_op("[")) {
        advance();
        Expr index = parse_subscript_list();
        expect_op("]");
        e = Expr(ExprKind::Subscript, {}, {std::move(e), std::move(index)});
      } else if (at_op(".")) {
        advance();
        e = Expr(ExprKind::Attribute, identifier(), {std::move(e)});
      } else {
        return e;
      }
    }
  }

  Expr parse_atom() {
    const Token& t = peek();
    switch (t.type) {
      case TokenType::Name:
        if (is_keyword(t.text)) unexpected();
        return Expr(ExprKind::Name, advance().text);
      case TokenType::Number:
        return parse_number(advance());
      case TokenType::String:
        return parse_strings();
      case TokenType::Op:
        if (t.text == "(") return parse_paren();
        if (t.text == "[") return parse_list();
        if (t.text == "{") return parse_brace();
        if (t.text == "`") {
          advance();
          Expr value = parse_testlist();
          expect_op("`");
          return Expr(ExprKind::Repr, {}, {std::move(value)});
        }
        unexpected();
      default:
        unexpected();
    }
  }

  Expr parse_strings() {
    std::vector<literals::StringLiteral> parts;
    while (at(TokenType::String)) {
      const Token& t = advance();
      std::string error;
      auto lit = literals::decode_string(t.text, error);
      if (!lit) fail_at(t.line, error);
      parts.push_back(std::move(*lit));
    }
    auto joined = literals::concatenate(parts);
    return Expr(joined.is_unicode ? ExprKind::Unicode : ExprKind::Str, std::move(joined.value));
  }

  Expr parse_paren() {
    expect_op("(");
    if (at_op(")")) {
      advance();
      return Expr(ExprKind::Tuple);
    }
    if (at_keyword("yield")) {
      Expr y = parse_yield();
      expect_op(")");
      return y;
    }
    Expr first = parse_test();
    if (at_keyword("for")) {
      Expr gen(ExprKind::GeneratorExp, {}, {std::move(first)});
      parse_comp_for(gen);
      expect_op(")");
      return gen;
    }
    if (!at_op(",")) {
      expect_op(")");
      return first;
    }
    Expr tuple(ExprKind::Tuple, {}, {});
    tuple.operands.push_back(std::move(first));
    while (at_op(",")) {
      advance();
      if (at_op(")")) break;
      tuple.operands.push_back(parse_test());
    }
    expect_op(")");
    return tuple;
  }

  Expr parse_list() {
    expect_op("[");
    Expr list(ExprKind::List);
    if (at_op("]")) {
      advance();
      return list;
    }
    Expr first = parse_test();
    if (at_keyword("for")) {
      Expr comp(ExprKind::ListComp, {}, {std::move(first)});
      parse_list_for(comp);
      expect_op("]");
      return comp;
    }
    list.operands.push_back(std::move(first));
    while (at_op(",")) {
      advance();
      if (at_op("]")) break;
      list.operands.push_back(parse_test());
    }
    expect_op("]");
    return list;
  }

  // Old-style list comprehension: `for` iterables are testlist_safe and
  // conditions are old_test.
  void parse_list_for(Expr& comp) {
    while (at_keyword("for")) {
      advance();
      Expr target = parse_exprlist();
      check_store(target, "comprehension target");
      expect_keyword("in");
      Expr iter = parse_old_test();
      if (at_op(",")) {
        Expr tuple(ExprKind::Tuple, {}, {});
        tuple.operands.push_back(std::move(iter));
        while (at_op(",")) {
          advance();
          if (!at_test_start()) break;
          tuple.operands.push_back(parse_old_test());
        }
        if (tuple.operands.size() < 2) unexpected();
        iter = std::move(tuple);
      }
      Expr clause(ExprKind::Comprehension, {}, {std::move(target), std::move(iter)});
      while (at_keyword("if")) {
        advance();
        clause.operands.push_back(parse_old_test());
      }
      comp.operands.push_back(std::move(clause));
    }
  }

  void parse_comp_for(Expr& comp) {
    while (at_keyword("for")) {
      advance();
      Expr target = parse_exprlist();
      check_store(target, "comprehension target");
      expect_keyword("in");
      Expr iter = parse_or_test();
      Expr clause(ExprKind::Comprehension, {}, {std::move(target), std::move(iter)});
      while (at_keyword("if")) {
        advance();
        clause.operands.push_back(parse_old_test());
      }
      comp.operands.push_back(std::move(clause));
    }
  }

  Expr parse_brace() {
    expect_op("{");
    if (at_op("}")) {
      advance();
      return Expr(ExprKind::Dict);
    }
    Expr first = parse_test();
    if (at_op(":")) {
      advance();
      Expr value = parse_test();
      if (at_keyword("for")) {
        Expr comp(ExprKind::DictComp, {}, {std::move(first), std::move(value)});
        parse_comp_for(comp);
        expect_op("}");
        return comp;
      }
      Expr dict(ExprKind::Dict, {}, {});
      dict.operands.push_back(std::move(first));
      dict.operands.push_back(std::move(value));
      while (at_op(",")) {
        advance();
        if (at_op("}")) break;
        dict.operands.push_back(parse_test());
        expect_op(":");
        dict.operands.push_back(parse_test());
      }
      expect_op("}");
      return dict;
    }
    if (at_keyword("for")) {
      Expr comp(ExprKind::SetComp, {}, {std::move(first)});
      parse_comp_for(comp);
      expect_op("}");
      return comp;
    }
    Expr set(ExprKind::Set, {}, {});
    set.operands.push_back(std::move(first));
    while (at_op(",")) {
      advance();
      if (at_op("}")) break;
      set.operands.push_back(parse_test());
    }
    expect_op("}");
    return set;
  }

  // Called after '(' has been consumed; consumes the closing ')'.
  Expr parse_call_arguments(Expr func) {
    const int line = peek().line;
    std::vector<Expr> positional;
    std::vector<Expr> keywords;
    Expr star;
    Expr double_star;
    bool generator_arg = false;
    std::size_t count = 0;
    while (!at_op(")")) {
      if (!double_star.empty()) fail("invalid syntax: argument after **kwargs");
      if (at_op("*")) {
        if (!star.empty()) unexpected();
        advance();
        star = Expr(ExprKind::StarArg, {}, {parse_test()});
      } else if (at_op("**")) {
        advance();
        double_star = Expr(ExprKind::KwArg, {}, {parse_test()});
      } else {
        Expr arg = parse_test();
        if (at_op("=")) {
          if (arg.kind != ExprKind::Name) fail("keyword can't be an expression");
          advance();
          keywords.push_back(Expr(ExprKind::Keyword, arg.value, {parse_test()}));
        } else {
          if (at_keyword("for")) {
            Expr gen(ExprKind::GeneratorExp, {}, {std::move(arg)});
            parse_comp_for(gen);
            arg = std::move(gen);
            generator_arg = true;
          }
          if (!star.empty()) fail("only named arguments may follow *expression");
          if (!keywords.empty()) fail("non-keyword arg after keyword arg");
          positional.push_back(std::move(arg));
        }
      }
      ++count;
      if (!at_op(",")) break;
      advance();
    }
    expect_op(")");
    if (generator_arg && count > 1)
      fail_at(line, "Generator expression must be parenthesized if not sole argument");
    Expr call(ExprKind::Call, {}, {std::move(func)});
    for (auto& e : positional) call.operands.push_back(std::move(e));
    for (auto& e : keywords) call.operands.push_back(std::move(e));
    if (!star.empty()) call.operands.push_back(std::move(star));
    if (!double_star.empty()) call.operands.push_back(std::move(double_star));
    return call;
  }

  Expr parse_subscript() {
    if (at_op("...")) {
      advance();
      return Expr(ExprKind::Ellipsis);
    }
    Expr lower;
    if (!at_op(":")) {
      lower = parse_test();
      if (!at_op(":")) return lower;
    }
    advance();  // ':'
    Expr upper;
    if (!at_op(":") && !at_op("]") && !at_op(",")) upper = parse_test();
    Expr slice(ExprKind::Slice, "2", {});
    Expr step;
    if (at_op(":")) {
      advance();
      slice.value = "3";
      if (!at_op("]") && !at_op(",")) step = parse_test();
    }
    slice.operands.push_back(std::move(lower));
    slice.operands.push_back(std::move(upper));
    slice.operands.push_back(std::move(step));
    return slice;
  }

  Expr parse_subscript_list() {
    Expr first = parse_subscript();
    if (!at_op(",")) return first;
    std::vector<Expr> items;
    items.push_back(std::move(first));
    while (at_op(",")) {
      advance();
      if (at_op("]")) break;
      items.push_back(parse_subscript());
    }
    bool extended = false;
    for (const auto& item : items)
      extended = extended || item.kind == ExprKind::Slice || item.kind == ExprKind::Ellipsis;
    return Expr(extended ? ExprKind::ExtSlice : ExprKind::Tuple, {}, std::move(items));
  }

  Expr parse_fpdef() {
    if (at_op("(")) {
      advance();
      std::vector<Expr> items;
      bool comma = false;
      while (!at_op(")")) {
        items.push_back(parse_fpdef());
        if (!at_op(",")) break;
        advance();
        comma = true;
      }
      expect_op(")");
      if (items.empty()) unexpected();
      if (items.size() == 1 && !comma) return std::move(items.front());
      return Expr(ExprKind::Tuple, {}, std::move(items));
    }
    return Expr(ExprKind::Name, identifier());
  }

  Expr parse_varargslist(std::string_view terminator) {
    Expr args(ExprKind::Arguments);
    bool seen_default = false;
    while (!at_op(terminator)) {
      if (at_op("*")) {
        advance();
        args.operands.emplace_back(ExprKind::VarParam, identifier());
        if (at_op(",")) {
          advance();
          if (!at_op("**")) unexpected();
        }
        if (!at_op("**")) break;
      }
      if (at_op("**")) {
        advance();
        args.operands.emplace_back(ExprKind::KwParam, identifier());
        break;
      }
      Expr target = parse_fpdef();
      Expr def;
      if (at_op("=")) {
        advance();
        def = parse_test();
        seen_default = true;
      } else if (seen_default) {
        fail("non-default argument follows default argument");
      }
      args.operands.push_back(Expr(ExprKind::Param, {}, {std::move(target), std::move(def)}));
      if (!at_op(",")) break;
      advance();
    }
    return args;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string path_;
  bool print_function_;
};

}  // namespace

ModuleTree parse_module(std::string_view source, std::string source_path, ParseOptions options) {
  if (source.starts_with("\xEF\xBB\xBF")) source.remove_prefix(3);
  if (std::size_t bad = literals::find_invalid_utf8(source); bad != std::string_view::npos) {
    int line = 1;
    for (std::size_t i = 0; i < bad; ++i)
      if (source[i] == '\n') ++line;
    throw ParseFailure(source_path, line, "invalid UTF-8 byte sequence");
  }
  if (source.find('\0') != std::string_view::npos) throw ParseFailure(source_path, 1, "source contains NUL byte");
  auto tokens = detail::tokenize(source, source_path);
  return Parser(std::move(tokens), std::move(source_path), options).parse_file();
}

}  // namespace pycorpus

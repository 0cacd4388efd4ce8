#include "sitcalc/parser.hpp"

#include "sitcalc/compile.hpp"
#include "sitcalc/eval.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace sitcalc {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
  End, Newline, Ident, Number,
  LParen, RParen, LBrace, RBrace, Comma, Colon, Semicolon, Dot, DotDot,
  Assign,   // :=
  Arrow,    // =>
  Eq, Ne, Lt, Le, Gt, Ge,
  Plus, Minus, Star, Slash, Bar,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLoc loc;
};

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "domain", "fluent",  "action",  "successor", "effect", "effects",
      "init",   "world",   "weight",  "program",   "case",   "when",
      "causes", "poss",    "observe", "likelihood", "nominal", "actual",
      "exec",   "query",   "assert",  "bel",       "know",
      "if",     "then",    "else",    "not",       "and",    "or",
      "implies", "iff",    "forall",  "exists",    "in",     "pi",
      "abs",    "true",    "false",   "now",       "prev",   "bool",
      "int",
  };
  return words;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run(std::vector<Diagnostic>& diags) {
    std::vector<Token> out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      if (c == '\n') {
        if (out.empty() || out.back().kind != Tok::Newline)
          out.push_back({Tok::Newline, "\n", loc()});
        advance();
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (ident_start(c)) {
        out.push_back(lex_ident());
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        out.push_back(lex_number());
        continue;
      }
      out.push_back(lex_punct(diags));
    }
    out.push_back({Tok::Newline, "\n", loc()});
    out.push_back({Tok::End, "", loc()});
    return out;
  }

 private:
  SourceLoc loc() const { return {line_, col_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  Token lex_ident() {
    Token t{Tok::Ident, "", loc()};
    size_t start = pos_;
    advance();
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (ident_char(c)) {
        advance();
        continue;
      }
      // A hyphen joins the identifier only when a letter follows, so
      // action names like exact-advance lex as one token while `x - y`
      // and `x-1` stay arithmetic. Subtraction of identifiers needs spaces.
      if (c == '-' && pos_ + 1 < text_.size() && ident_start(text_[pos_ + 1])) {
        advance();
        advance();
        continue;
      }
      break;
    }
    t.text = text_.substr(start, pos_ - start);
    return t;
  }

  Token lex_number() {
    Token t{Tok::Number, "", loc()};
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      advance();
    // Decimal point, but not the `..` of a range.
    if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      advance();
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        advance();
    }
    t.text = text_.substr(start, pos_ - start);
    return t;
  }

  Token lex_punct(std::vector<Diagnostic>& diags) {
    SourceLoc l = loc();
    char c = text_[pos_];
    advance();
    char next = pos_ < text_.size() ? text_[pos_] : '\0';
    auto two = [&](Tok k, const char* s) {
      advance();
      return Token{k, s, l};
    };
    switch (c) {
      case '(': return {Tok::LParen, "(", l};
      case ')': return {Tok::RParen, ")", l};
      case '{': return {Tok::LBrace, "{", l};
      case '}': return {Tok::RBrace, "}", l};
      case ',': return {Tok::Comma, ",", l};
      case ';': return {Tok::Semicolon, ";", l};
      case ':': return next == '=' ? two(Tok::Assign, ":=") : Token{Tok::Colon, ":", l};
      case '.': return next == '.' ? two(Tok::DotDot, "..") : Token{Tok::Dot, ".", l};
      case '=': return next == '>' ? two(Tok::Arrow, "=>") : Token{Tok::Eq, "=", l};
      case '!':
        if (next == '=') return two(Tok::Ne, "!=");
        break;
      case '<': return next == '=' ? two(Tok::Le, "<=") : Token{Tok::Lt, "<", l};
      case '>': return next == '=' ? two(Tok::Ge, ">=") : Token{Tok::Gt, ">", l};
      case '+': return {Tok::Plus, "+", l};
      case '-': return {Tok::Minus, "-", l};
      case '*': return {Tok::Star, "*", l};
      case '/': return {Tok::Slash, "/", l};
      case '|': return {Tok::Bar, "|", l};
      default: break;
    }
    diags.push_back({Diagnostic::Severity::Error, l,
                     std::string("unexpected character '") + c + "'"});
    return {Tok::Newline, "\n", l};
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

// Thrown to abandon the current declaration; recovery skips to the next
// top-level keyword.
struct ParseBail {};

// Scope of identifiers visible inside an expression.
struct Scope {
  TypeEnv params;  // parameters and quantified variables with their types
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
      : toks_(std::move(tokens)), diags_(diags) {}

  // ----- token plumbing

  const Token& raw_peek(size_t ahead = 0) const {
    size_t i = pos_;
    size_t seen = 0;
    while (i < toks_.size()) {
      if (toks_[i].kind == Tok::Newline && !line_mode_) {
        ++i;
        continue;
      }
      if (seen == ahead) return toks_[i];
      ++seen;
      ++i;
    }
    return toks_.back();
  }

  const Token& peek(size_t ahead = 0) const { return raw_peek(ahead); }

  Token next() {
    while (!line_mode_ && toks_[pos_].kind == Tok::Newline) ++pos_;
    Token t = toks_[pos_];
    if (toks_[pos_].kind != Tok::End) ++pos_;
    return t;
  }

  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(const char* w) const {
    return peek().kind == Tok::Ident && peek().text == w;
  }

  bool accept(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }

  bool accept_word(const char* w) {
    if (!at_word(w)) return false;
    next();
    return true;
  }

  Token expect(Tok k, const std::string& what) {
    if (!at(k)) {
      error(peek().loc, "expected " + what + ", got '" + describe(peek()) + "'");
      throw ParseBail{};
    }
    return next();
  }

  void expect_word(const char* w) {
    if (!accept_word(w)) {
      error(peek().loc,
            std::string("expected '") + w + "', got '" + describe(peek()) + "'");
      throw ParseBail{};
    }
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "<end of file>";
    if (t.kind == Tok::Newline) return "<end of line>";
    return t.text;
  }

  void error(SourceLoc loc, const std::string& msg) {
    diags_.push_back({Diagnostic::Severity::Error, loc, msg});
  }

  void warn(SourceLoc loc, const std::string& msg) {
    diags_.push_back({Diagnostic::Severity::Warning, loc, msg});
  }

  // Expression type checking against the current theory under construction.
  ExprType check(const ExprPtr& e, const Scope& scope) {
    return infer_type(theory_, *e, scope.params, diags_);
  }

  void require_type(const ExprPtr& e, const Scope& scope, ExprType::Tag tag,
                    const char* what) {
    ExprType t = check(e, scope);
    if (t.ok() && t.tag != tag)
      error(e->loc, std::string(what) + " must be " +
                        (tag == ExprType::Bool ? "boolean" : "numeric") +
                        ", got " + t.str());
  }

  // ----- identifiers

  std::string ident(const char* what) {
    Token t = expect(Tok::Ident, what);
    if (reserved_words().count(t.text) > 0) {
      error(t.loc, "'" + t.text + "' is a reserved word");
      throw ParseBail{};
    }
    return t.text;
  }

  // ----- constant expressions

  Value eval_const(const ExprPtr& e, const char* what) {
    static const ActionTheory empty;
    static const Trajectory traj{-1, {WorldState{}}, {}};
    try {
      return evaluate(empty, *e, traj, {});
    } catch (const EvalError& err) {
      error(e->loc, std::string(what) + " must be a constant: " + err.what());
      throw ParseBail{};
    }
  }

  // Symbols parse as Param nodes until resolution; during constant
  // evaluation we rewrite lone identifiers into symbol literals.
  ExprPtr const_expr_raw() {
    Scope scope;
    return parse_expr(scope, /*resolve=*/false);
  }

  Value const_value(const char* what) {
    ExprPtr e = const_expr_raw();
    return const_to_value(e, what);
  }

  Value const_to_value(const ExprPtr& e, const char* what) {
    if (e->kind == ExprKind::Param) return Value::symbol(e->name);
    return eval_const(e, what);
  }

  // ----- expressions

  // `resolve` controls identifier resolution: in normal mode identifiers
  // resolve against scope/fluents/symbols and unknown names are errors; in
  // raw mode (constant contexts) unknown identifiers stay Param nodes.
  ExprPtr parse_expr(const Scope& scope, bool resolve = true) {
    return parse_quantified(scope, resolve);
  }

  ExprPtr parse_quantified(const Scope& scope, bool resolve) {
    SourceLoc l = peek().loc;
    if (at_word("forall") || at_word("exists")) {
      bool forall = peek().text == "forall";
      next();
      std::string var = ident("quantified variable");
      expect(Tok::Colon, "':'");
      std::string dom = domain_name();
      expect(Tok::Dot, "'.'");
      Scope inner = scope;
      declare_var(inner, var, dom, l);
      ExprPtr body = parse_quantified(inner, resolve);
      return make_quant(forall, var, dom, body, l);
    }
    return parse_iff(scope, resolve);
  }

  ExprPtr parse_iff(const Scope& scope, bool resolve) {
    ExprPtr e = parse_implies(scope, resolve);
    while (at_word("iff")) {
      SourceLoc l = next().loc;
      e = make_binary(ExprKind::Iff, e, parse_implies(scope, resolve), l);
    }
    return e;
  }

  ExprPtr parse_implies(const Scope& scope, bool resolve) {
    ExprPtr e = parse_or(scope, resolve);
    if (at_word("implies")) {
      SourceLoc l = next().loc;
      // right-associative
      return make_binary(ExprKind::Implies, e, parse_implies(scope, resolve), l);
    }
    return e;
  }

  ExprPtr parse_or(const Scope& scope, bool resolve) {
    ExprPtr e = parse_and(scope, resolve);
    while (at_word("or")) {
      SourceLoc l = next().loc;
      e = make_binary(ExprKind::Or, e, parse_and(scope, resolve), l);
    }
    return e;
  }

  ExprPtr parse_and(const Scope& scope, bool resolve) {
    ExprPtr e = parse_not(scope, resolve);
    while (at_word("and")) {
      SourceLoc l = next().loc;
      e = make_binary(ExprKind::And, e, parse_not(scope, resolve), l);
    }
    return e;
  }

  ExprPtr parse_not(const Scope& scope, bool resolve) {
    if (at_word("not")) {
      SourceLoc l = next().loc;
      return make_unary(ExprKind::Not, parse_not(scope, resolve), l);
    }
    return parse_comparison(scope, resolve);
  }

  ExprPtr parse_comparison(const Scope& scope, bool resolve) {
    ExprPtr e = parse_additive(scope, resolve);
    SourceLoc l = peek().loc;
    auto op = [&]() -> std::optional<CmpOp> {
      switch (peek().kind) {
        case Tok::Eq: return CmpOp::Eq;
        case Tok::Ne: return CmpOp::Ne;
        case Tok::Lt: return CmpOp::Lt;
        case Tok::Le: return CmpOp::Le;
        case Tok::Gt: return CmpOp::Gt;
        case Tok::Ge: return CmpOp::Ge;
        default: return std::nullopt;
      }
    }();
    if (op) {
      next();
      return make_cmp(*op, e, parse_additive(scope, resolve), l);
    }
    if (at_word("in")) {
      next();
      ExprPtr lo = parse_additive(scope, resolve);
      expect(Tok::DotDot, "'..'");
      ExprPtr hi = parse_additive(scope, resolve);
      return make_in_range(e, lo, hi, l);
    }
    return e;
  }

  ExprPtr parse_additive(const Scope& scope, bool resolve) {
    ExprPtr e = parse_multiplicative(scope, resolve);
    while (at(Tok::Plus) || at(Tok::Minus)) {
      Tok k = peek().kind;
      SourceLoc l = next().loc;
      ExprPtr rhs = parse_multiplicative(scope, resolve);
      e = make_binary(k == Tok::Plus ? ExprKind::Add : ExprKind::Sub, e, rhs, l);
    }
    return e;
  }

  ExprPtr parse_multiplicative(const Scope& scope, bool resolve) {
    ExprPtr e = parse_unary(scope, resolve);
    while (at(Tok::Star) || at(Tok::Slash)) {
      Tok k = peek().kind;
      SourceLoc l = next().loc;
      ExprPtr rhs = parse_unary(scope, resolve);
      e = make_binary(k == Tok::Star ? ExprKind::Mul : ExprKind::Div, e, rhs, l);
    }
    return e;
  }

  ExprPtr parse_unary(const Scope& scope, bool resolve) {
    if (at(Tok::Minus)) {
      SourceLoc l = next().loc;
      return make_unary(ExprKind::Neg, parse_unary(scope, resolve), l);
    }
    return parse_primary(scope, resolve);
  }

  ExprPtr parse_primary(const Scope& scope, bool resolve) {
    const Token& t = peek();
    SourceLoc l = t.loc;
    switch (t.kind) {
      case Tok::Number: {
        next();
        return make_literal(Value::number(Rational::parse(t.text)), l);
      }
      case Tok::LParen: {
        next();
        ExprPtr e = parse_expr(scope, resolve);
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: {
        if (t.text == "true" || t.text == "false") {
          next();
          return make_literal(Value::boolean(t.text == "true"), l);
        }
        if (t.text == "abs") {
          next();
          expect(Tok::LParen, "'('");
          ExprPtr e = parse_expr(scope, resolve);
          expect(Tok::RParen, "')'");
          return make_unary(ExprKind::Abs, e, l);
        }
        if (t.text == "if") {
          next();
          ExprPtr cond = parse_expr(scope, resolve);
          expect_word("then");
          ExprPtr then_e = parse_expr(scope, resolve);
          expect_word("else");
          ExprPtr else_e = parse_expr(scope, resolve);
          return make_if(cond, then_e, else_e, l);
        }
        if (reserved_words().count(t.text) > 0) {
          error(l, "unexpected keyword '" + t.text + "' in expression");
          throw ParseBail{};
        }
        next();
        return parse_name_ref(t.text, l, scope, resolve);
      }
      default:
        error(l, "expected expression, got '" + describe(t) + "'");
        throw ParseBail{};
    }
  }

  // Fluent reference (optionally with arguments and a situation suffix),
  // parameter, or symbol constant.
  ExprPtr parse_name_ref(const std::string& name, SourceLoc l,
                         const Scope& scope, bool resolve) {
    std::vector<ExprPtr> args;
    int prev_depth = 0;
    bool has_parens = false;
    bool has_sit = false;
    if (at(Tok::LParen)) {
      has_parens = true;
      next();
      bool first = true;
      while (!at(Tok::RParen)) {
        if (!first) expect(Tok::Comma, "','");
        first = false;
        if (at_word("now") || at_word("prev")) {
          prev_depth = parse_situation();
          has_sit = true;
          break;
        }
        args.push_back(parse_expr(scope, resolve));
      }
      expect(Tok::RParen, "')'");
    }
    if (!resolve) {
      if (has_parens || has_sit) {
        error(l, "'" + name + "' cannot take arguments here");
        throw ParseBail{};
      }
      return make_param(name, l);
    }
    if (theory_.fluent_index.count(name) > 0)
      return make_fluent(name, std::move(args), prev_depth, l);
    if (has_parens) {
      error(l, "unknown fluent '" + name + "'");
      throw ParseBail{};
    }
    if (scope.params.count(name) > 0) return make_param(name, l);
    for (const auto& d : theory_.domains)
      if (!d.is_range && !d.is_int &&
          std::find(d.symbols.begin(), d.symbols.end(), name) != d.symbols.end())
        return make_literal(Value::symbol(name), l);
    error(l, "unknown identifier '" + name + "'" +
                 (name.find('-') != std::string::npos
                      ? " (write 'a - b' with spaces for subtraction)"
                      : ""));
    throw ParseBail{};
  }

  // now | prev(now) | prev(prev(now)) ...
  int parse_situation() {
    if (accept_word("now")) return 0;
    expect_word("prev");
    expect(Tok::LParen, "'('");
    int depth = parse_situation() + 1;
    expect(Tok::RParen, "')'");
    return depth;
  }

  // ----- declarations

  std::string domain_name() {
    const Token& t = peek();
    if (t.kind == Tok::Ident &&
        (t.text == "bool" || t.text == "int" ||
         reserved_words().count(t.text) == 0)) {
      next();
      return t.text;
    }
    error(t.loc, "expected domain name, got '" + describe(t) + "'");
    throw ParseBail{};
  }

  void declare_var(Scope& scope, const std::string& name,
                   const std::string& domain, SourceLoc l) {
    if (theory_.fluent_index.count(name) > 0)
      error(l, "variable '" + name + "' shadows a fluent");
    if (scope.params.count(name) > 0)
      error(l, "variable '" + name + "' shadows an enclosing parameter");
    ExprType t = domain_type_checked(domain, l);
    scope.params[name] = t;
  }

  ExprType domain_type_checked(const std::string& name, SourceLoc l) {
    if (name == "bool") return ExprType::boolean();
    if (name == "int") return ExprType::numeric();
    const DomainDecl* d = theory_.find_domain(name);
    if (d == nullptr) {
      error(l, "unknown domain '" + name + "'");
      return ExprType::invalid();
    }
    return d->is_range || d->is_int ? ExprType::numeric() : ExprType::symbol(name);
  }

  void parse_domain_decl() {
    SourceLoc l = peek().loc;
    next();  // 'domain'
    std::string name = ident("domain name");
    if (theory_.domain_index.count(name) > 0)
      error(l, "duplicate domain '" + name + "'");
    expect(Tok::Eq, "'='");
    DomainDecl d;
    d.name = name;
    if (accept_word("int")) {
      d.is_int = true;
    } else if (at(Tok::LBrace)) {
      next();
      bool first = true;
      while (!at(Tok::RBrace)) {
        if (!first) expect(Tok::Comma, "','");
        first = false;
        Token sym = expect(Tok::Ident, "symbol");
        if (reserved_words().count(sym.text) > 0)
          error(sym.loc, "'" + sym.text + "' is a reserved word");
        for (const auto& other : theory_.domains)
          if (!other.is_range && !other.is_int &&
              std::find(other.symbols.begin(), other.symbols.end(), sym.text) !=
                  other.symbols.end())
            error(sym.loc, "symbol '" + sym.text + "' already declared in domain '" +
                               other.name + "'");
        if (std::find(d.symbols.begin(), d.symbols.end(), sym.text) !=
            d.symbols.end())
          error(sym.loc, "duplicate symbol '" + sym.text + "'");
        d.symbols.push_back(sym.text);
      }
      expect(Tok::RBrace, "'}'");
    } else {
      d.is_range = true;
      d.lo = const_int("range bound");
      expect(Tok::DotDot, "'..'");
      d.hi = const_int("range bound");
      if (d.hi < d.lo) error(l, "empty range domain '" + name + "'");
    }
    theory_.domain_index.emplace(d.name, static_cast<int>(theory_.domains.size()));
    theory_.domains.push_back(std::move(d));
  }

  std::int64_t const_int(const char* what) {
    Value v = const_value(what);
    if (!v.is_integer()) {
      error(peek().loc, std::string(what) + " must be an integer");
      throw ParseBail{};
    }
    return v.as_rational().num().convert_to<std::int64_t>();
  }

  void parse_fluent_decl() {
    next();  // 'fluent'
    SourceLoc l = peek().loc;
    std::string name = ident("fluent name");
    if (theory_.fluent_index.count(name) > 0)
      error(l, "duplicate fluent '" + name + "'");
    FluentDecl f;
    f.name = name;
    f.loc = l;
    if (accept(Tok::LParen)) {
      bool first = true;
      while (!at(Tok::RParen)) {
        if (!first) expect(Tok::Comma, "','");
        first = false;
        std::string pname = ident("parameter name");
        expect(Tok::Colon, "':'");
        std::string dom = domain_name();
        const DomainDecl* d = theory_.find_domain(dom);
        if (d == nullptr)
          error(l, "unknown domain '" + dom + "'");
        else if (!d->finite())
          error(l, "fluent parameter domain must be finite");
        f.params.push_back({pname, dom});
      }
      expect(Tok::RParen, "')'");
    }
    expect(Tok::Colon, "':'");
    SourceLoc rl = peek().loc;
    f.range = domain_name();
    if (f.range == "int") {
      error(rl, "fluent range must be finite (use a bounded range domain)");
    } else if (f.range != "bool" && theory_.find_domain(f.range) == nullptr) {
      error(rl, "unknown domain '" + f.range + "'");
    }
    theory_.fluent_index.emplace(f.name, static_cast<int>(theory_.fluents.size()));
    theory_.fluents.push_back(std::move(f));
  }

  void parse_action_decl() {
    next();  // 'action'
    SourceLoc l = peek().loc;
    ActionSchema s;
    s.name = ident("action name");
    s.loc = l;
    if (theory_.schema_index.count(s.name) > 0)
      error(l, "duplicate action '" + s.name + "'");
    expect(Tok::LParen, "'('");
    Scope scope;
    bool first = true;
    while (!at(Tok::RParen)) {
      if (!first) expect(Tok::Comma, "','");
      first = false;
      SchemaParam p;
      SourceLoc pl = peek().loc;
      if (accept_word("nominal")) {
        p.mode = ParamMode::Nominal;
      } else if (accept_word("actual")) {
        p.mode = ParamMode::Actual;
      } else {
        error(pl, "parameter mode must be 'nominal' or 'actual'");
        throw ParseBail{};
      }
      p.name = ident("parameter name");
      expect(Tok::Colon, "':'");
      p.domain = domain_name();
      declare_var(scope, p.name, p.domain, pl);
      for (const auto& q : s.params)
        if (q.name == p.name) error(pl, "duplicate parameter '" + p.name + "'");
      s.params.push_back(std::move(p));
    }
    expect(Tok::RParen, "')'");

    bool saw_poss = false, saw_obs = false, saw_lk = false;
    for (;;) {
      if (at_word("poss")) {
        SourceLoc cl = next().loc;
        expect(Tok::Colon, "':'");
        if (saw_poss) error(cl, "duplicate 'poss' clause");
        saw_poss = true;
        s.precondition = parse_expr(scope);
        require_type(s.precondition, scope, ExprType::Bool, "precondition");
      } else if (at_word("observe")) {
        SourceLoc cl = next().loc;
        expect(Tok::Colon, "':'");
        if (saw_obs) error(cl, "duplicate 'observe' clause");
        saw_obs = true;
        expect(Tok::LParen, "'('");
        s.obs_group = ident("observation group key");
        while (accept(Tok::Comma)) {
          Token pt = expect(Tok::Ident, "parameter name");
          int idx = -1;
          for (size_t i = 0; i < s.params.size(); ++i)
            if (s.params[i].name == pt.text) idx = static_cast<int>(i);
          if (idx < 0) {
            error(pt.loc, "unknown parameter '" + pt.text + "' in observe clause");
            continue;
          }
          if (s.is_visible(idx))
            error(pt.loc, "parameter '" + pt.text + "' listed twice in observe clause");
          else
            s.obs_params.push_back(idx);
        }
        expect(Tok::RParen, "')'");
      } else if (at_word("likelihood")) {
        SourceLoc cl = next().loc;
        expect(Tok::Colon, "':'");
        if (saw_lk) error(cl, "duplicate 'likelihood' clause");
        saw_lk = true;
        s.likelihood = parse_expr(scope);
        require_type(s.likelihood, scope, ExprType::Num, "likelihood");
      } else {
        break;
      }
    }
    if (!s.precondition) s.precondition = true_formula();
    if (!s.likelihood) s.likelihood = one_expr();
    if (!saw_obs) {
      s.obs_group = s.name;
      for (size_t i = 0; i < s.params.size(); ++i)
        if (s.params[i].mode == ParamMode::Nominal)
          s.obs_params.push_back(static_cast<int>(i));
    }
    theory_.schema_index.emplace(s.name, static_cast<int>(theory_.schemas.size()));
    theory_.schemas.push_back(std::move(s));
  }

  // Shared by successor cases and effect clauses: schema name plus fresh
  // variable names for every parameter.
  std::pair<int, std::vector<std::string>> parse_action_pattern(Scope& scope) {
    SourceLoc l = peek().loc;
    std::string name = ident("action name");
    auto it = theory_.schema_index.find(name);
    if (it == theory_.schema_index.end()) {
      error(l, "unknown action schema '" + name + "'");
      throw ParseBail{};
    }
    const ActionSchema& schema = theory_.schemas[it->second];
    std::vector<std::string> vars;
    expect(Tok::LParen, "'('");
    bool first = true;
    while (!at(Tok::RParen)) {
      if (!first) expect(Tok::Comma, "','");
      first = false;
      SourceLoc vl = peek().loc;
      std::string v = ident("pattern variable");
      if (scope.params.count(v) > 0 || std::find(vars.begin(), vars.end(), v) != vars.end())
        error(vl, "duplicate pattern variable '" + v + "'");
      vars.push_back(v);
    }
    expect(Tok::RParen, "')'");
    if (vars.size() != schema.params.size()) {
      error(l, "pattern for '" + name + "' must bind " +
                   std::to_string(schema.params.size()) + " parameter(s)");
      throw ParseBail{};
    }
    for (size_t i = 0; i < vars.size(); ++i)
      declare_var(scope, vars[i], schema.params[i].domain, l);
    return {it->second, std::move(vars)};
  }

  void parse_successor_decl() {
    next();  // 'successor'
    SourceLoc l = peek().loc;
    std::string fname = ident("fluent name");
    auto it = theory_.fluent_index.find(fname);
    if (it == theory_.fluent_index.end()) {
      error(l, "unknown fluent '" + fname + "'");
      throw ParseBail{};
    }
    const FluentDecl& fluent = theory_.fluents[it->second];
    SuccessorRule rule;
    rule.fluent = it->second;
    Scope fluent_scope;
    if (accept(Tok::LParen)) {
      bool first = true;
      while (!at(Tok::RParen)) {
        if (!first) expect(Tok::Comma, "','");
        first = false;
        SourceLoc vl = peek().loc;
        std::string v = ident("fluent parameter");
        rule.fluent_params.push_back(v);
        if (rule.fluent_params.size() <= fluent.params.size())
          declare_var(fluent_scope, v,
                      fluent.params[rule.fluent_params.size() - 1].domain, vl);
      }
      expect(Tok::RParen, "')'");
    }
    if (rule.fluent_params.size() != fluent.params.size()) {
      error(l, "successor head for '" + fname + "' must bind " +
                   std::to_string(fluent.params.size()) + " parameter(s)");
      throw ParseBail{};
    }
    for (const auto& r : theory_.rules)
      if (r.fluent == rule.fluent)
        error(l, "duplicate successor rule for fluent '" + fname + "'");

    ExprType range = domain_type_checked(fluent.range, l);
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace)) {
      expect_word("case");
      SuccessorCase c;
      c.loc = peek().loc;
      Scope scope = fluent_scope;
      auto [schema, vars] = parse_action_pattern(scope);
      c.schema = schema;
      c.pattern_vars = std::move(vars);
      if (accept_word("when")) {
        c.guard = parse_expr(scope);
        require_type(c.guard, scope, ExprType::Bool, "case guard");
      }
      expect(Tok::Arrow, "'=>'");
      c.value = parse_expr(scope);
      ExprType vt = check(c.value, scope);
      if (vt.ok() && range.ok() && !(vt.tag == range.tag && vt.domain == range.domain))
        error(c.value->loc, "case value has type " + vt.str() +
                                ", but fluent '" + fname + "' holds " + range.str());
      rule.cases.push_back(std::move(c));
      expect(Tok::Semicolon, "';'");
    }
    expect(Tok::RBrace, "'}'");
    theory_.rules.push_back(std::move(rule));
  }

  void parse_effect_decl() {
    next();  // 'effect'
    EffectClause clause;
    clause.loc = peek().loc;
    Scope scope;
    auto [schema, vars] = parse_action_pattern(scope);
    clause.schema = schema;
    clause.pattern_vars = std::move(vars);
    expect_word("causes");
    bool negated = accept_word("not");
    SourceLoc fl = peek().loc;
    std::string fname = ident("fluent name");
    auto it = theory_.fluent_index.find(fname);
    if (it == theory_.fluent_index.end()) {
      error(fl, "unknown fluent '" + fname + "'");
      throw ParseBail{};
    }
    const FluentDecl& fluent = theory_.fluents[it->second];
    clause.fluent = it->second;
    if (accept(Tok::LParen)) {
      bool first = true;
      while (!at(Tok::RParen)) {
        if (!first) expect(Tok::Comma, "','");
        first = false;
        ExprPtr a = parse_expr(scope);
        clause.fluent_args.push_back(a);
      }
      expect(Tok::RParen, "')'");
    }
    if (clause.fluent_args.size() != fluent.params.size())
      error(fl, "fluent '" + fname + "' expects " +
                    std::to_string(fluent.params.size()) + " argument(s)");
    for (size_t i = 0; i < clause.fluent_args.size() && i < fluent.params.size(); ++i) {
      ExprType got = check(clause.fluent_args[i], scope);
      ExprType want = domain_type_checked(fluent.params[i].domain, fl);
      if (got.ok() && want.ok() && !(got.tag == want.tag && got.domain == want.domain))
        error(clause.fluent_args[i]->loc, "effect argument type mismatch");
    }
    if (accept(Tok::Assign)) {
      if (negated) {
        error(fl, "'not' cannot combine with ':='");
        throw ParseBail{};
      }
      clause.value = parse_expr(scope);
      ExprType vt = check(clause.value, scope);
      ExprType range = domain_type_checked(fluent.range, fl);
      if (vt.ok() && range.ok() && !(vt.tag == range.tag && vt.domain == range.domain))
        error(clause.value->loc, "effect value type mismatch for '" + fname + "'");
      clause.positive = true;
    } else {
      if (fluent.range != "bool")
        error(fl, "relational effect on non-boolean fluent '" + fname +
                      "' (use ':=' for functional fluents)");
      clause.positive = !negated;
    }
    if (accept_word("when")) {
      clause.context = parse_expr(scope);
      require_type(clause.context, scope, ExprType::Bool, "effect context");
    }
    accept(Tok::Semicolon);
    theory_.effect_clauses.push_back(std::move(clause));
  }

  void parse_init_decl() {
    SourceLoc l = next().loc;  // 'init'
    if (saw_init_) error(l, "duplicate init block");
    saw_init_ = true;
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace)) {
      expect_word("world");
      RawWorld w;
      w.loc = peek().loc;
      expect(Tok::LBrace, "'{'");
      bool first = true;
      while (!at(Tok::RBrace)) {
        if (!first) expect(Tok::Comma, "','");
        first = false;
        w.assignments.push_back(parse_assignment());
      }
      expect(Tok::RBrace, "'}'");
      expect_word("weight");
      SourceLoc wl = peek().loc;
      Value wv = const_value("weight");
      if (wv.kind() != ValueKind::Number) {
        error(wl, "weight must be a rational constant");
      } else {
        w.weight = wv.as_rational();
        if (w.weight.is_negative()) error(wl, "weight must be nonnegative");
      }
      accept(Tok::Semicolon);
      raw_init_.push_back(std::move(w));
    }
    expect(Tok::RBrace, "'}'");
  }

  struct RawAssignment {
    std::string fluent;
    std::vector<Value> args;
    Value value;
    SourceLoc loc;
  };

  struct RawWorld {
    std::vector<RawAssignment> assignments;
    Rational weight;
    SourceLoc loc;
  };

  RawAssignment parse_assignment() {
    RawAssignment a;
    a.loc = peek().loc;
    a.fluent = ident("fluent name");
    if (accept(Tok::LParen)) {
      bool first = true;
      while (!at(Tok::RParen)) {
        if (!first) expect(Tok::Comma, "','");
        first = false;
        a.args.push_back(const_value("fluent argument"));
      }
      expect(Tok::RParen, "')'");
    }
    expect(Tok::Eq, "'='");
    a.value = const_value("fluent value");
    return a;
  }

  void parse_program_decl() {
    next();  // 'program'
    SourceLoc l = peek().loc;
    std::string name = ident("program name");
    expect(Tok::Eq, "'='");
    line_mode_ = true;
    Scope scope;
    ProgramPtr p;
    try {
      p = parse_program(scope);
    } catch (...) {
      line_mode_ = false;
      throw;
    }
    line_mode_ = false;
    for (const auto& [n, _] : theory_.programs)
      if (n == name) error(l, "duplicate program '" + name + "'");
    theory_.programs.emplace_back(name, std::move(p));
  }

  ProgramPtr parse_program(const Scope& scope) { return parse_program_choice(scope); }

  ProgramPtr parse_program_choice(const Scope& scope) {
    ProgramPtr p = parse_program_seq(scope);
    while (at(Tok::Bar)) {
      SourceLoc l = next().loc;
      p = make_choice(p, parse_program_seq(scope), l);
    }
    return p;
  }

  ProgramPtr parse_program_seq(const Scope& scope) {
    ProgramPtr p = parse_program_atom(scope);
    while (at(Tok::Semicolon)) {
      SourceLoc l = next().loc;
      p = make_seq(p, parse_program_atom(scope), l);
    }
    return p;
  }

  ProgramPtr parse_program_atom(const Scope& scope) {
    SourceLoc l = peek().loc;
    if (accept_word("pi")) {
      std::string var = ident("pi variable");
      expect(Tok::Colon, "':'");
      std::string dom = domain_name();
      const DomainDecl* d = theory_.find_domain(dom);
      if (d == nullptr)
        error(l, "unknown domain '" + dom + "'");
      else if (!d->finite())
        error(l, "pi domain must be finite");
      expect(Tok::Dot, "'.'");
      Scope inner = scope;
      declare_var(inner, var, dom, l);
      return make_pi(var, dom, parse_program(inner), l);
    }
    if (at(Tok::LParen)) {
      next();
      // Parenthesized subprograms may span lines.
      bool saved = line_mode_;
      line_mode_ = false;
      ProgramPtr p = parse_program(scope);
      line_mode_ = saved;
      expect(Tok::RParen, "')'");
      return p;
    }
    std::string name = ident("action name");
    auto it = theory_.schema_index.find(name);
    if (it == theory_.schema_index.end()) {
      error(l, "unknown action schema '" + name + "'");
      throw ParseBail{};
    }
    const ActionSchema& schema = theory_.schemas[it->second];
    std::vector<ExprPtr> args;
    expect(Tok::LParen, "'('");
    bool first = true;
    while (!at(Tok::RParen)) {
      if (!first) expect(Tok::Comma, "','");
      first = false;
      args.push_back(parse_expr(scope));
    }
    expect(Tok::RParen, "')'");
    size_t nominal_count = schema.nominal_params().size();
    if (args.size() != schema.params.size() && args.size() != nominal_count) {
      error(l, "'" + name + "' takes " + std::to_string(nominal_count) +
                   " nominal or " + std::to_string(schema.params.size()) +
                   " total argument(s), got " + std::to_string(args.size()));
      throw ParseBail{};
    }
    // Argument types: positionally against all params when fully ground,
    // else against the nominal parameters in declaration order.
    std::vector<int> slots;
    if (args.size() == schema.params.size()) {
      for (size_t i = 0; i < args.size(); ++i) slots.push_back(static_cast<int>(i));
    } else {
      slots = schema.nominal_params();
    }
    for (size_t i = 0; i < args.size(); ++i) {
      ExprType got = check(args[i], scope);
      ExprType want = domain_type_checked(schema.params[slots[i]].domain, l);
      if (got.ok() && want.ok() && !(got.tag == want.tag && got.domain == want.domain))
        error(args[i]->loc, "argument type mismatch for '" + name + "'");
    }
    return make_prim(name, std::move(args), l);
  }

  // ----- top level

  void sync_to_decl() {
    static const std::set<std::string> starters = {
        "domain", "fluent", "action", "successor", "effect", "init", "program"};
    line_mode_ = false;
    while (!at(Tok::End)) {
      const Token& t = peek();
      if (t.kind == Tok::Ident && starters.count(t.text) > 0) return;
      next();
    }
  }

  ActionTheory parse_theory_text() {
    while (!at(Tok::End)) {
      try {
        if (at_word("domain")) {
          parse_domain_decl();
        } else if (at_word("fluent")) {
          parse_fluent_decl();
        } else if (at_word("action")) {
          parse_action_decl();
        } else if (at_word("successor")) {
          parse_successor_decl();
        } else if (at_word("effect") || at_word("effects")) {
          parse_effect_decl();
        } else if (at_word("init")) {
          parse_init_decl();
        } else if (at_word("program")) {
          parse_program_decl();
        } else {
          error(peek().loc, "expected a declaration, got '" + describe(peek()) + "'");
          next();
          sync_to_decl();
        }
      } catch (ParseBail&) {
        next_if_stuck();
        sync_to_decl();
      }
    }
    finish_theory();
    return std::move(theory_);
  }

  void next_if_stuck() {
    if (!at(Tok::End)) next();
  }

  void finish_theory() {
    // Effect clauses compile into successor rules, one fluent at a time, in
    // first-mention order.
    std::vector<int> effect_fluents;
    for (const auto& c : theory_.effect_clauses)
      if (std::find(effect_fluents.begin(), effect_fluents.end(), c.fluent) ==
          effect_fluents.end())
        effect_fluents.push_back(c.fluent);
    for (int f : effect_fluents) {
      for (const auto& r : theory_.rules)
        if (r.fluent == f)
          error(theory_.fluents[f].loc,
                "fluent '" + theory_.fluents[f].name +
                    "' has both a successor rule and effect clauses");
      std::vector<EffectClause> clauses;
      for (const auto& c : theory_.effect_clauses)
        if (c.fluent == f) clauses.push_back(c);
      theory_.rules.push_back(compile_effect_axioms(theory_, f, clauses, diags_));
    }

    theory_.finalize();

    // Init worlds resolve against the ground-fluent table, which only now
    // exists.
    for (const auto& raw : raw_init_) {
      InitWorld w;
      w.loc = raw.loc;
      w.weight = raw.weight;
      w.world.values.assign(theory_.ground_fluents.size(), Value());
      std::vector<bool> assigned(theory_.ground_fluents.size(), false);
      for (const auto& a : raw.assignments) {
        auto it = theory_.fluent_index.find(a.fluent);
        if (it == theory_.fluent_index.end()) {
          error(a.loc, "unknown fluent '" + a.fluent + "'");
          continue;
        }
        int id = theory_.ground_fluent_id(it->second, a.args);
        if (id < 0) {
          error(a.loc, "fluent argument out of domain for '" + a.fluent + "'");
          continue;
        }
        if (assigned[id]) {
          error(a.loc, "duplicate assignment to '" + theory_.ground_fluents[id].label + "'");
          continue;
        }
        const FluentDecl& f = theory_.fluents[it->second];
        bool in_domain = f.range == "bool"
                             ? a.value.kind() == ValueKind::Boolean
                             : theory_.find_domain(f.range) != nullptr &&
                                   theory_.find_domain(f.range)->contains(a.value);
        if (!in_domain) {
          error(a.loc, "value " + a.value.str() + " not in the domain of '" +
                           theory_.ground_fluents[id].label + "'");
          continue;
        }
        assigned[id] = true;
        w.world.values[id] = a.value;
      }
      for (size_t i = 0; i < assigned.size(); ++i)
        if (!assigned[i])
          error(raw.loc, "initial world does not assign '" +
                             theory_.ground_fluents[i].label + "'");
      theory_.init.push_back(std::move(w));
    }
  }

  // ----- scenarios

  Scenario parse_scenario_text(const ActionTheory& theory) {
    theory_ = theory;
    Scenario sc;
    bool saw_query = false;
    while (!at(Tok::End)) {
      try {
        if (at_word("actual")) {
          SourceLoc l = next().loc;
          if (sc.actual) error(l, "duplicate actual block");
          expect(Tok::LBrace, "'{'");
          std::vector<RawAssignment> assigns;
          bool first = true;
          while (!at(Tok::RBrace)) {
            if (!first) expect(Tok::Comma, "','");
            first = false;
            assigns.push_back(parse_assignment());
          }
          expect(Tok::RBrace, "'}'");
          sc.actual = resolve_world(assigns, l);
        } else if (at_word("observe")) {
          line_mode_ = true;
          SourceLoc l = next().loc;
          ScenarioStep step;
          step.type = ScenarioStepType::Observe;
          step.loc = l;
          step.signature = parse_signature();
          end_of_line();
          sc.steps.push_back(std::move(step));
        } else if (at_word("exec")) {
          line_mode_ = true;
          SourceLoc l = next().loc;
          ScenarioStep step;
          step.type = ScenarioStepType::Exec;
          step.loc = l;
          parse_command(step);
          end_of_line();
          sc.steps.push_back(std::move(step));
        } else if (at_word("query")) {
          line_mode_ = true;
          SourceLoc l = next().loc;
          ScenarioStep step;
          step.loc = l;
          if (accept_word("bel")) {
            step.type = ScenarioStepType::QueryBel;
          } else if (accept_word("know")) {
            step.type = ScenarioStepType::QueryKnow;
          } else {
            error(peek().loc, "expected 'bel' or 'know'");
            throw ParseBail{};
          }
          Scope scope;
          step.formula = parse_expr(scope);
          require_type(step.formula, scope, ExprType::Bool, "query formula");
          step.formula_text = to_string(*step.formula);
          end_of_line();
          saw_query = true;
          sc.steps.push_back(std::move(step));
        } else if (at_word("assert")) {
          line_mode_ = true;
          SourceLoc l = next().loc;
          if (!saw_query) error(l, "assert must follow a query");
          ScenarioStep step;
          step.type = ScenarioStepType::Assert;
          step.loc = l;
          switch (peek().kind) {
            case Tok::Eq: step.op = CmpOp::Eq; break;
            case Tok::Ne: step.op = CmpOp::Ne; break;
            case Tok::Lt: step.op = CmpOp::Lt; break;
            case Tok::Le: step.op = CmpOp::Le; break;
            case Tok::Gt: step.op = CmpOp::Gt; break;
            case Tok::Ge: step.op = CmpOp::Ge; break;
            default:
              error(peek().loc, "expected a comparison operator");
              throw ParseBail{};
          }
          next();
          step.expected = const_value("assert operand");
          end_of_line();
          sc.steps.push_back(std::move(step));
        } else {
          error(peek().loc, "expected a scenario step, got '" + describe(peek()) + "'");
          throw ParseBail{};
        }
        line_mode_ = false;
      } catch (ParseBail&) {
        line_mode_ = true;
        while (!at(Tok::End) && !at(Tok::Newline)) next();
        line_mode_ = false;
      }
    }
    return sc;
  }

  void end_of_line() {
    if (!at(Tok::Newline) && !at(Tok::End)) {
      error(peek().loc, "unexpected '" + describe(peek()) + "' at end of step");
      throw ParseBail{};
    }
    line_mode_ = false;
  }

  WorldState resolve_world(const std::vector<RawAssignment>& assigns, SourceLoc loc) {
    WorldState w;
    w.values.assign(theory_.ground_fluents.size(), Value());
    std::vector<bool> assigned(theory_.ground_fluents.size(), false);
    for (const auto& a : assigns) {
      auto it = theory_.fluent_index.find(a.fluent);
      if (it == theory_.fluent_index.end()) {
        error(a.loc, "unknown fluent '" + a.fluent + "'");
        continue;
      }
      int id = theory_.ground_fluent_id(it->second, a.args);
      if (id < 0) {
        error(a.loc, "fluent argument out of domain for '" + a.fluent + "'");
        continue;
      }
      assigned[id] = true;
      w.values[id] = a.value;
    }
    for (size_t i = 0; i < assigned.size(); ++i)
      if (!assigned[i])
        error(loc, "actual world does not assign '" + theory_.ground_fluents[i].label + "'");
    return w;
  }

  ObservationSignature parse_signature() {
    SourceLoc l = peek().loc;
    std::string key = ident("observation group");
    ObservationSignature sig;
    sig.group = key;
    expect(Tok::LParen, "'('");
    bool first = true;
    while (!at(Tok::RParen)) {
      if (!first) expect(Tok::Comma, "','");
      first = false;
      sig.args.push_back(const_value("signature argument"));
    }
    expect(Tok::RParen, "')'");
    auto it = theory_.obs_groups.find(key);
    if (it == theory_.obs_groups.end()) {
      if (const ActionSchema* s = theory_.find_schema(key))
        error(l, "actions of schema '" + key + "' are observed as group '" +
                     s->obs_group + "'");
      else
        error(l, "unknown action schema '" + key + "'");
      throw ParseBail{};
    }
    // The signature must instantiate at least one schema of the group.
    bool any = false;
    for (int si : it->second) {
      const ActionSchema& s = theory_.schemas[si];
      if (s.obs_params.size() != sig.args.size()) continue;
      bool all_ok = true;
      for (size_t i = 0; i < sig.args.size(); ++i) {
        const DomainDecl* d = theory_.find_domain(s.params[s.obs_params[i]].domain);
        bool ok = s.params[s.obs_params[i]].domain == "bool"
                      ? sig.args[i].kind() == ValueKind::Boolean
                      : (s.params[s.obs_params[i]].domain == "int"
                             ? sig.args[i].is_integer()
                             : d != nullptr && d->contains(sig.args[i]));
        all_ok &= ok;
      }
      any |= all_ok;
    }
    if (!any) {
      error(l, "signature " + sig.str() + " matches no action of group '" + key + "'");
      throw ParseBail{};
    }
    return sig;
  }

  void parse_command(ScenarioStep& step) {
    SourceLoc l = peek().loc;
    std::string key = ident("command");
    step.command = key;
    expect(Tok::LParen, "'('");
    bool first = true;
    while (!at(Tok::RParen)) {
      if (!first) expect(Tok::Comma, "','");
      first = false;
      step.command_args.push_back(const_value("command argument"));
    }
    expect(Tok::RParen, "')'");
    auto it = theory_.obs_groups.find(key);
    if (it == theory_.obs_groups.end()) {
      if (const ActionSchema* s = theory_.find_schema(key))
        error(l, "commands address observation groups; schema '" + key +
                     "' belongs to group '" + s->obs_group + "'");
      else
        error(l, "unknown action schema '" + key + "'");
      throw ParseBail{};
    }
    bool any = false;
    for (int si : it->second) {
      const ActionSchema& s = theory_.schemas[si];
      std::vector<int> nominals = s.nominal_params();
      if (step.command_args.size() > nominals.size()) continue;
      bool all_ok = true;
      for (size_t i = 0; i < step.command_args.size(); ++i) {
        const std::string& dom = s.params[nominals[i]].domain;
        const DomainDecl* d = theory_.find_domain(dom);
        bool ok = dom == "bool" ? step.command_args[i].kind() == ValueKind::Boolean
                  : dom == "int" ? step.command_args[i].is_integer()
                                 : d != nullptr && d->contains(step.command_args[i]);
        all_ok &= ok;
      }
      any |= all_ok;
    }
    if (!any) {
      error(l, "command arguments match no action of group '" + key + "'");
      throw ParseBail{};
    }
  }

  ExprPtr parse_single_formula(const ActionTheory& theory) {
    theory_ = theory;
    Scope scope;
    ExprPtr e = parse_expr(scope);
    require_type(e, scope, ExprType::Bool, "formula");
    if (!at(Tok::End))
      error(peek().loc, "unexpected trailing input '" + describe(peek()) + "'");
    return e;
  }

 private:
  std::vector<Token> toks_;
  std::vector<Diagnostic>& diags_;
  size_t pos_ = 0;
  bool line_mode_ = false;
  ActionTheory theory_;
  std::vector<RawWorld> raw_init_;
  bool saw_init_ = false;
};

}  // namespace

TheoryParseResult parse_theory(const std::string& text) {
  TheoryParseResult result;
  Lexer lexer(text);
  auto tokens = lexer.run(result.diagnostics);
  Parser parser(std::move(tokens), result.diagnostics);
  ActionTheory theory = parser.parse_theory_text();
  result.theory = std::move(theory);
  return result;
}

ActionTheory parse_theory_or_throw(const std::string& text) {
  TheoryParseResult r = parse_theory(text);
  for (const auto& d : r.diagnostics)
    if (d.severity == Diagnostic::Severity::Error)
      throw TheoryError(format_diagnostic(d));
  return std::move(*r.theory);
}

ScenarioParseResult parse_scenario(const std::string& text,
                                   const ActionTheory& theory) {
  ScenarioParseResult result;
  Lexer lexer(text);
  auto tokens = lexer.run(result.diagnostics);
  Parser parser(std::move(tokens), result.diagnostics);
  result.scenario = parser.parse_scenario_text(theory);
  return result;
}

Scenario parse_scenario_or_throw(const std::string& text,
                                 const ActionTheory& theory) {
  ScenarioParseResult r = parse_scenario(text, theory);
  for (const auto& d : r.diagnostics)
    if (d.severity == Diagnostic::Severity::Error)
      throw TheoryError(format_diagnostic(d));
  return std::move(*r.scenario);
}

ExprPtr parse_formula(const std::string& text, const ActionTheory& theory) {
  std::vector<Diagnostic> diags;
  Lexer lexer(text);
  auto tokens = lexer.run(diags);
  Parser parser(std::move(tokens), diags);
  ExprPtr e;
  try {
    e = parser.parse_single_formula(theory);
  } catch (ParseBail&) {
  }
  for (const auto& d : diags)
    if (d.severity == Diagnostic::Severity::Error)
      throw TheoryError(format_diagnostic(d));
  return e;
}

// ---------------------------------------------------------------------------
// Pretty printer

namespace {

void print_domain(std::ostream& os, const DomainDecl& d) {
  os << "domain " << d.name << " = ";
  if (d.is_int) {
    os << "int";
  } else if (d.is_range) {
    os << d.lo << ".." << d.hi;
  } else {
    os << "{ ";
    for (size_t i = 0; i < d.symbols.size(); ++i) {
      if (i) os << ", ";
      os << d.symbols[i];
    }
    os << " }";
  }
  os << "\n";
}

void print_world(std::ostream& os, const ActionTheory& t, const WorldState& w) {
  os << "world { ";
  for (size_t i = 0; i < w.values.size(); ++i) {
    if (i) os << ", ";
    os << t.ground_fluents[i].label << " = " << w.values[i].str();
  }
  os << " }";
}

}  // namespace

std::string pretty_print(const ActionTheory& t) {
  std::ostringstream os;
  for (const auto& d : t.domains) print_domain(os, d);
  if (!t.domains.empty()) os << "\n";

  for (const auto& f : t.fluents) {
    os << "fluent " << f.name;
    if (!f.params.empty()) {
      os << "(";
      for (size_t i = 0; i < f.params.size(); ++i) {
        if (i) os << ", ";
        os << f.params[i].name << ": " << f.params[i].domain;
      }
      os << ")";
    }
    os << " : " << f.range << "\n";
  }
  if (!t.fluents.empty()) os << "\n";

  for (const auto& s : t.schemas) {
    os << "action " << s.name << "(";
    for (size_t i = 0; i < s.params.size(); ++i) {
      if (i) os << ", ";
      os << (s.params[i].mode == ParamMode::Nominal ? "nominal " : "actual ")
         << s.params[i].name << ": " << s.params[i].domain;
    }
    os << ")\n";
    os << "  poss: " << to_string(*s.precondition) << "\n";
    os << "  observe: (" << s.obs_group;
    for (int p : s.obs_params) os << ", " << s.params[p].name;
    os << ")\n";
    os << "  likelihood: " << to_string(*s.likelihood) << "\n\n";
  }

  for (const auto& r : t.rules) {
    if (r.cases.empty()) continue;  // frame default needs no declaration
    os << "successor " << t.fluents[r.fluent].name;
    if (!r.fluent_params.empty()) {
      os << "(";
      for (size_t i = 0; i < r.fluent_params.size(); ++i) {
        if (i) os << ", ";
        os << r.fluent_params[i];
      }
      os << ")";
    }
    os << " {\n";
    for (const auto& c : r.cases) {
      os << "  case " << t.schemas[c.schema].name << "(";
      for (size_t i = 0; i < c.pattern_vars.size(); ++i) {
        if (i) os << ", ";
        os << c.pattern_vars[i];
      }
      os << ")";
      if (c.guard) os << " when " << to_string(*c.guard);
      os << " => " << to_string(*c.value) << " ;\n";
    }
    os << "}\n\n";
  }

  if (!t.init.empty()) {
    os << "init {\n";
    for (const auto& w : t.init) {
      os << "  ";
      print_world(os, t, w.world);
      os << " weight " << w.weight.str() << " ;\n";
    }
    os << "}\n";
  }

  for (const auto& [name, p] : t.programs)
    os << "program " << name << " = " << to_string(*p) << "\n";

  return os.str();
}

std::string pretty_print(const ActionTheory& t, const Scenario& sc) {
  std::ostringstream os;
  if (sc.actual) {
    os << "actual ";
    std::ostringstream tmp;
    print_world(tmp, t, *sc.actual);
    std::string s = tmp.str();
    os << s.substr(6) << "\n";  // drop the "world " prefix
  }
  for (const auto& step : sc.steps) {
    switch (step.type) {
      case ScenarioStepType::Observe:
        os << "observe " << step.signature.str() << "\n";
        break;
      case ScenarioStepType::Exec: {
        os << "exec " << step.command << "(";
        for (size_t i = 0; i < step.command_args.size(); ++i) {
          if (i) os << ", ";
          os << step.command_args[i].str();
        }
        os << ")\n";
        break;
      }
      case ScenarioStepType::QueryBel:
        os << "query bel " << step.formula_text << "\n";
        break;
      case ScenarioStepType::QueryKnow:
        os << "query know " << step.formula_text << "\n";
        break;
      case ScenarioStepType::Assert:
        os << "assert " << to_string(step.op) << " " << step.expected.str() << "\n";
        break;
    }
  }
  return os.str();
}

}  // namespace sitcalc

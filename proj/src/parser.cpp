#include "skelai/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace skel {

namespace {

enum class Tok {
  Ident,
  Constr,
  String,
  Integer,
  KwType,
  KwVal,
  KwLet,
  KwIn,
  KwBranch,
  KwOr,
  KwEnd,
  KwMatch,
  KwWith,
  Colon,
  Equals,
  Bar,
  Arrow,
  Lambda,
  LParen,
  RParen,
  Comma,
  Underscore,
  Eof,
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Constr: return "constructor";
    case Tok::String: return "string literal";
    case Tok::Integer: return "integer literal";
    case Tok::KwType: return "'type'";
    case Tok::KwVal: return "'val'";
    case Tok::KwLet: return "'let'";
    case Tok::KwIn: return "'in'";
    case Tok::KwBranch: return "'branch'";
    case Tok::KwOr: return "'or'";
    case Tok::KwEnd: return "'end'";
    case Tok::KwMatch: return "'match'";
    case Tok::KwWith: return "'with'";
    case Tok::Colon: return "':'";
    case Tok::Equals: return "'='";
    case Tok::Bar: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::Lambda: return "'λ'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Underscore: return "'_'";
    case Tok::Eof: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      Token t = next();
      out.push_back(t);
      if (t.kind == Tok::Eof) return out;
    }
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t k = 0) const { return pos_ + k < text_.size() ? text_[pos_ + k] : '\0'; }
  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && !at_end(); ++i) {
      unsigned char c = static_cast<unsigned char>(text_[pos_++]);
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++col_;
      }
    }
  }

  SourceSpan here() const { return {file_, line_, col_, line_, col_}; }

  [[noreturn]] void error(const std::string& msg) const { fail(ErrorKind::Parse, msg, here()); }

  void skip_trivia() {
    for (;;) {
      if (at_end()) return;
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else if (starts_with("(*")) {
        SourceSpan start = here();
        int depth = 0;
        do {
          if (at_end()) fail(ErrorKind::Parse, "unterminated comment", start);
          if (starts_with("(*")) {
            ++depth;
            advance(2);
          } else if (starts_with("*)")) {
            --depth;
            advance(2);
          } else {
            advance();
          }
        } while (depth > 0);
      } else {
        return;
      }
    }
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  Token next() {
    SourceSpan span = here();
    auto finish = [&](Tok kind, std::string text) {
      span.end_line = line_;
      span.end_col = col_;
      return Token{kind, std::move(text), span};
    };
    if (at_end()) return finish(Tok::Eof, "");
    char c = peek();
    if (starts_with("->")) return advance(2), finish(Tok::Arrow, "->");
    if (starts_with("→")) return advance(3), finish(Tok::Arrow, "->");
    if (starts_with("λ")) return advance(2), finish(Tok::Lambda, "λ");
    switch (c) {
      case '\\': advance(); return finish(Tok::Lambda, "λ");
      case ':': advance(); return finish(Tok::Colon, ":");
      case '=': advance(); return finish(Tok::Equals, "=");
      case '|': advance(); return finish(Tok::Bar, "|");
      case '(': advance(); return finish(Tok::LParen, "(");
      case ')': advance(); return finish(Tok::RParen, ")");
      case ',': advance(); return finish(Tok::Comma, ",");
      default: break;
    }
    if (c == '"') {
      advance();
      std::string s;
      while (!at_end() && peek() != '"') {
        if (peek() == '\n') error("unterminated string literal");
        if (peek() == '\\' && (peek(1) == '"' || peek(1) == '\\')) advance();
        s += peek();
        advance();
      }
      if (at_end()) error("unterminated string literal");
      advance();
      return finish(Tok::String, s);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      std::string s(1, c);
      advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        s += peek();
        advance();
      }
      return finish(Tok::Integer, s);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (!at_end() && ident_char(peek())) {
        s += peek();
        advance();
      }
      if (s == "_") return finish(Tok::Underscore, s);
      static const std::vector<std::pair<std::string, Tok>> keywords = {
          {"type", Tok::KwType},     {"val", Tok::KwVal}, {"let", Tok::KwLet},     {"in", Tok::KwIn},
          {"branch", Tok::KwBranch}, {"or", Tok::KwOr},   {"end", Tok::KwEnd},     {"match", Tok::KwMatch},
          {"with", Tok::KwWith},
      };
      for (const auto& [kw, kind] : keywords)
        if (s == kw) return finish(kind, s);
      return finish(std::isupper(static_cast<unsigned char>(s[0])) ? Tok::Constr : Tok::Ident, s);
    }
    error(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t k = 0) const { return tokens_[std::min(pos_ + k, tokens_.size() - 1)]; }
  bool at(Tok kind) const { return peek().kind == kind; }
  Token take() {
    Token t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool accept(Tok kind) {
    if (!at(kind)) return false;
    take();
    return true;
  }
  Token expect(Tok kind, const char* context) {
    if (!at(kind))
      fail(ErrorKind::Parse,
           std::string("expected ") + describe(kind) + " " + context + ", found " + describe(peek().kind) +
               (peek().text.empty() ? "" : " '" + peek().text + "'"),
           peek().span);
    return take();
  }
  SourceSpan span_from(const SourceSpan& start) const {
    const SourceSpan& last = tokens_[pos_ == 0 ? 0 : pos_ - 1].span;
    return {start.file, start.start_line, start.start_col, last.end_line, last.end_col};
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

TypeExpr parse_type_expr(TokenStream& ts);

TypeExpr parse_type_atom(TokenStream& ts) {
  if (ts.at(Tok::Ident)) return TypeExpr::base(ts.take().text);
  if (ts.accept(Tok::LParen)) {
    if (ts.accept(Tok::RParen)) return TypeExpr::unit();
    std::vector<TypeExpr> items{parse_type_expr(ts)};
    while (ts.accept(Tok::Comma)) items.push_back(parse_type_expr(ts));
    ts.expect(Tok::RParen, "to close type");
    if (items.size() == 1) return items.front();
    return TypeExpr::tuple(std::move(items));
  }
  fail(ErrorKind::Parse, std::string("expected a type, found ") + describe(ts.peek().kind), ts.peek().span);
}

TypeExpr parse_type_expr(TokenStream& ts) {
  TypeExpr lhs = parse_type_atom(ts);
  if (ts.accept(Tok::Arrow)) return TypeExpr::arrow(lhs, parse_type_expr(ts));
  return lhs;
}

class SkelParser {
 public:
  explicit SkelParser(TokenStream& ts) : ts_(ts) {}

  SkeletalSemantics file() {
    SkeletalSemantics sem;
    while (!ts_.at(Tok::Eof)) {
      if (ts_.at(Tok::KwType))
        sem.add_type(type_decl());
      else if (ts_.at(Tok::KwVal))
        sem.add_term(term_decl());
      else
        fail(ErrorKind::Parse, std::string("expected 'type' or 'val', found ") + describe(ts_.peek().kind),
             ts_.peek().span);
    }
    return sem;
  }

 private:
  TypeDecl type_decl() {
    SourceSpan start = ts_.take().span;
    TypeDecl decl;
    decl.name = ts_.expect(Tok::Ident, "after 'type'").text;
    if (ts_.accept(Tok::Equals)) {
      std::vector<Constructor> variants;
      ts_.accept(Tok::Bar);
      do {
        std::string name = ts_.expect(Tok::Constr, "in type definition").text;
        TypeExpr arg = starts_type_atom() ? parse_type_atom(ts_) : TypeExpr::unit();
        variants.push_back({std::move(name), std::move(arg)});
      } while (ts_.accept(Tok::Bar));
      decl.variants = std::move(variants);
    }
    decl.span = ts_.span_from(start);
    return decl;
  }

  bool starts_type_atom() const { return ts_.at(Tok::Ident) || ts_.at(Tok::LParen); }

  TermDecl term_decl() {
    SourceSpan start = ts_.take().span;
    std::string name = ts_.expect(Tok::Ident, "after 'val'").text;
    std::optional<TypeExpr> declared;
    TermPtr definition;
    if (ts_.at(Tok::LParen)) {
      // val f (p : τ) … : τ' = S
      struct Param {
        PatternPtr pattern;
        TypeExpr type;
        SourceSpan span;
      };
      std::vector<Param> params;
      while (ts_.at(Tok::LParen)) {
        SourceSpan pstart = ts_.take().span;
        PatternPtr p = pattern();
        ts_.expect(Tok::Colon, "in parameter");
        TypeExpr t = parse_type_expr(ts_);
        ts_.expect(Tok::RParen, "to close parameter");
        params.push_back({p, t, ts_.span_from(pstart)});
      }
      ts_.expect(Tok::Colon, "before result type");
      TypeExpr result = parse_type_expr(ts_);
      ts_.expect(Tok::Equals, "before definition body");
      SkeletonPtr body = skeleton();
      TermPtr term;
      TypeExpr type = result;
      for (auto it = params.rbegin(); it != params.rend(); ++it) {
        SourceSpan span{it->span.file, it->span.start_line, it->span.start_col, body->span.end_line,
                        body->span.end_col};
        term = build::lambda(it->pattern, it->type, body, span);
        type = TypeExpr::arrow(it->type, type);
        if (std::next(it) != params.rend()) body = build::ret(term, span);
      }
      declared = type;
      definition = term;
    } else {
      ts_.expect(Tok::Colon, "after declared name");
      declared = parse_type_expr(ts_);
      if (ts_.accept(Tok::Equals)) definition = term();
    }
    return TermDecl{std::move(name), *declared, std::move(definition), ts_.span_from(start)};
  }

  bool starts_pattern_atom() const {
    return ts_.at(Tok::Ident) || ts_.at(Tok::Underscore) || ts_.at(Tok::Constr) || ts_.at(Tok::LParen);
  }

  PatternPtr pattern_atom() {
    SourceSpan start = ts_.peek().span;
    if (ts_.at(Tok::Ident)) return build::pvar(ts_.take().text, start);
    if (ts_.accept(Tok::Underscore)) return build::pwild(start);
    if (ts_.at(Tok::Constr)) return build::pconstr(ts_.take().text, build::ptuple({}, start), start);
    if (ts_.accept(Tok::LParen)) {
      if (ts_.accept(Tok::RParen)) return build::ptuple({}, ts_.span_from(start));
      std::vector<PatternPtr> items{pattern()};
      while (ts_.accept(Tok::Comma)) items.push_back(pattern());
      ts_.expect(Tok::RParen, "to close pattern");
      if (items.size() == 1) return items.front();
      return build::ptuple(std::move(items), ts_.span_from(start));
    }
    fail(ErrorKind::Parse, std::string("expected a pattern, found ") + describe(ts_.peek().kind), start);
  }

  PatternPtr pattern() {
    if (ts_.at(Tok::Constr)) {
      Token c = ts_.take();
      PatternPtr inner = starts_pattern_atom() ? pattern_atom() : build::ptuple({}, c.span);
      return build::pconstr(c.text, inner, ts_.span_from(c.span));
    }
    return pattern_atom();
  }

  bool starts_term_atom() const { return ts_.at(Tok::Ident) || ts_.at(Tok::Constr) || ts_.at(Tok::LParen); }

  TermPtr term_atom() {
    SourceSpan start = ts_.peek().span;
    if (ts_.at(Tok::Ident)) return build::var(ts_.take().text, start);
    if (ts_.at(Tok::Constr)) return build::constr(ts_.take().text, build::tuple({}, start), start);
    if (ts_.accept(Tok::LParen)) {
      if (ts_.accept(Tok::RParen)) return build::tuple({}, ts_.span_from(start));
      std::vector<TermPtr> items{term()};
      while (ts_.accept(Tok::Comma)) items.push_back(term());
      ts_.expect(Tok::RParen, "to close term");
      if (items.size() == 1) return items.front();
      return build::tuple(std::move(items), ts_.span_from(start));
    }
    fail(ErrorKind::Parse, std::string("expected a term, found ") + describe(ts_.peek().kind), start);
  }

  TermPtr term() {
    SourceSpan start = ts_.peek().span;
    if (ts_.accept(Tok::Lambda)) {
      PatternPtr p = pattern();
      ts_.expect(Tok::Colon, "after λ-pattern");
      TypeExpr t = parse_type_atom(ts_);
      ts_.expect(Tok::Arrow, "after λ-parameter type");
      SkeletonPtr body = skeleton();
      return build::lambda(p, t, body, ts_.span_from(start));
    }
    if (ts_.at(Tok::Constr)) {
      Token c = ts_.take();
      TermPtr arg = starts_term_atom() ? term_atom() : build::tuple({}, c.span);
      return build::constr(c.text, arg, ts_.span_from(start));
    }
    return term_atom();
  }

  SkeletonPtr skeleton() {
    SourceSpan start = ts_.peek().span;
    if (ts_.accept(Tok::KwLet)) {
      PatternPtr p = pattern();
      ts_.expect(Tok::Equals, "in let-binding");
      SkeletonPtr bound = skeleton();
      ts_.expect(Tok::KwIn, "after let-bound skeleton");
      SkeletonPtr body = skeleton();
      return build::let(p, bound, body, ts_.span_from(start));
    }
    if (ts_.accept(Tok::KwBranch)) {
      std::vector<SkeletonPtr> branches{skeleton()};
      while (ts_.accept(Tok::KwOr)) branches.push_back(skeleton());
      // `end` may be left implicit when the enclosing match continues.
      if (!ts_.accept(Tok::KwEnd) && !ts_.at(Tok::Bar)) ts_.expect(Tok::KwEnd, "to close branch");
      return build::branch(std::move(branches), ts_.span_from(start));
    }
    if (ts_.accept(Tok::KwMatch)) {
      TermPtr scrutinee = term();
      ts_.expect(Tok::KwWith, "after match scrutinee");
      std::vector<Skeleton::MatchArm> arms;
      ts_.accept(Tok::Bar);
      do {
        PatternPtr p = pattern();
        ts_.expect(Tok::Arrow, "after match pattern");
        arms.push_back({p, skeleton()});
      } while (ts_.accept(Tok::Bar));
      ts_.expect(Tok::KwEnd, "to close match");
      return build::match(scrutinee, std::move(arms), ts_.span_from(start));
    }
    if (ts_.at(Tok::Lambda) || ts_.at(Tok::Constr)) return build::ret(term(), ts_.span_from(start));
    TermPtr head = term_atom();
    if (!starts_term_atom()) return build::ret(head, ts_.span_from(start));
    std::vector<TermPtr> args;
    while (starts_term_atom()) args.push_back(term_atom());
    return build::app(head, std::move(args), ts_.span_from(start));
  }

  TokenStream& ts_;
};

class ProgramParser {
 public:
  ProgramParser(TokenStream& ts, const SkeletalSemantics& sem, const LiteralReader& reader)
      : ts_(ts), sem_(sem), reader_(reader) {}

  Value value(const TypeExpr& expected) {
    const Token& t = ts_.peek();
    if (expected.is_tuple()) {
      ts_.expect(Tok::LParen, ("for a value of type " + expected.to_string()).c_str());
      std::vector<Value> items;
      const auto& comps = expected.components();
      for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i) ts_.expect(Tok::Comma, "between tuple components");
        items.push_back(value(comps[i]));
      }
      ts_.expect(Tok::RParen, "to close tuple");
      return Value::tuple(std::move(items));
    }
    if (expected.is_arrow()) fail(ErrorKind::Type, "programs cannot contain functions", t.span);
    const TypeDecl* decl = sem_.find_type(expected.name());
    if (!decl) fail(ErrorKind::UnboundName, "unknown type " + expected.name(), t.span);
    if (ts_.at(Tok::LParen) && !expected.is_tuple()) {
      ts_.take();
      Value v = value(expected);
      ts_.expect(Tok::RParen, "to close parenthesised value");
      return v;
    }
    if (!decl->specified()) {
      Token lit = ts_.take();
      if (lit.kind != Tok::String && lit.kind != Tok::Integer)
        fail(ErrorKind::Type, "expected a literal of type " + expected.name() + ", found " + describe(lit.kind),
             lit.span);
      Literal l{lit.kind == Tok::String ? Literal::Kind::String : Literal::Kind::Integer, lit.text};
      try {
        return reader_(expected.name(), l);
      } catch (const SkelError& e) {
        if (e.span()) throw;
        fail(e.kind(), e.message(), lit.span);
      }
    }
    Token c = ts_.take();
    if (c.kind != Tok::Constr)
      fail(c.kind == Tok::String || c.kind == Tok::Integer ? ErrorKind::Type : ErrorKind::Parse,
           "expected a constructor of type " + expected.name() + ", found " + describe(c.kind), c.span);
    auto info = sem_.find_constructor(c.text);
    if (!info) fail(ErrorKind::UnboundName, "unknown constructor " + c.text, c.span);
    if (info->owner != decl)
      fail(ErrorKind::Type, "constructor " + c.text + " builds " + info->owner->name + ", not " + expected.name(),
           c.span);
    const TypeExpr& arg = info->constructor->arg;
    if (arg.is_unit()) {
      if (ts_.at(Tok::LParen) && ts_.peek(1).kind == Tok::RParen) {
        ts_.take();
        ts_.take();
      }
      return Value::constr(c.text, Value::unit());
    }
    return Value::constr(c.text, value(arg));
  }

 private:
  TokenStream& ts_;
  const SkeletalSemantics& sem_;
  const LiteralReader& reader_;
};

}  // namespace

SkeletalSemantics parse_skel(std::string_view text, const std::string& file) {
  TokenStream ts(Lexer(text, file).run());
  return SkelParser(ts).file();
}

SkeletalSemantics load_semantics(std::string_view text, std::set<std::string> program_types, const std::string& file) {
  SkeletalSemantics sem = parse_skel(text, file);
  sem.set_program_types(std::move(program_types));
  sem.check();
  return sem;
}

Value parse_program_term(std::string_view text, const SkeletalSemantics& sem, const LiteralReader& read_literal,
                         const TypeExpr& expected, const std::string& file) {
  TokenStream ts(Lexer(text, file).run());
  Value v = ProgramParser(ts, sem, read_literal).value(expected);
  ts.expect(Tok::Eof, "after program term");
  return v;
}

TypeExpr parse_type(std::string_view text) {
  TokenStream ts(Lexer(text, "<type>").run());
  TypeExpr t = parse_type_expr(ts);
  ts.expect(Tok::Eof, "after type");
  return t;
}

}  // namespace skel

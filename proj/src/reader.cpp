#include "ddc/reader.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

#include "ddc/errors.hpp"
#include "ddc/ops.hpp"

namespace ddc {

namespace {

bool is_symbol_char(char c) {
  return std::string_view("+-*/\\^<>=~:.?@#&$").find(c) != std::string_view::npos;
}
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

class Lexer {
public:
  Lexer(std::string_view text, std::string_view origin) : text_(text), origin_(origin) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      const bool layout = skip_layout();
      if (pos_ >= text_.size())
        break;
      Token t = next();
      t.layout_before = layout;
      out.push_back(std::move(t));
    }
    return out;
  }

private:
  [[noreturn]] void fail(const std::string &msg, std::size_t line, std::size_t col) const {
    throw SyntaxError(msg, line, col, std::string(origin_));
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  bool skip_layout() {
    bool skipped = false;
    while (pos_ < text_.size()) {
      const char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        skipped = true;
      } else if (c == '%') {
        while (pos_ < text_.size() && peek() != '\n')
          advance();
        skipped = true;
      } else if (c == '/' && peek(1) == '*') {
        const std::size_t l = line_, cc = col_;
        advance();
        advance();
        while (pos_ < text_.size() && !(peek() == '*' && peek(1) == '/'))
          advance();
        if (pos_ >= text_.size())
          fail("unterminated block comment", l, cc);
        advance();
        advance();
        skipped = true;
      } else {
        break;
      }
    }
    return skipped;
  }

  Token make(TokenKind kind, std::string text, std::size_t line, std::size_t col) {
    Token t;
    t.kind = kind;
    t.text = std::move(text);
    t.line = line;
    t.column = col;
    return t;
  }

  Token next() {
    const std::size_t line = line_, col = col_;
    const char c = peek();
    if (is_digit(c))
      return number(line, col);
    if (std::islower(static_cast<unsigned char>(c))) {
      std::string name;
      while (is_alnum(peek()))
        name += advance();
      return make(TokenKind::Atom, std::move(name), line, col);
    }
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (is_alnum(peek()))
        name += advance();
      return make(TokenKind::Var, std::move(name), line, col);
    }
    if (c == '\'')
      return quoted(line, col);
    if (c == '"')
      fail("double-quoted strings are not supported", line, col);
    if (std::string_view("()[]{},|").find(c) != std::string_view::npos) {
      advance();
      return make(TokenKind::Punct, std::string(1, c), line, col);
    }
    if (c == '!' || c == ';') {
      advance();
      return make(TokenKind::Atom, std::string(1, c), line, col);
    }
    if (is_symbol_char(c)) {
      std::string name;
      while (is_symbol_char(peek()))
        name += advance();
      if (name == ".") {
        const char after = peek();
        if (after == '\0' || after == '%' || std::isspace(static_cast<unsigned char>(after)))
          return make(TokenKind::End, ".", line, col);
      }
      return make(TokenKind::Atom, std::move(name), line, col);
    }
    fail(std::string("unexpected character '") + c + "'", line, col);
  }

  Token number(std::size_t line, std::size_t col) {
    const std::size_t start = pos_;
    while (is_digit(peek()))
      advance();
    bool is_float = false;
    if (peek() == '.' && is_digit(peek(1))) {
      is_float = true;
      advance();
      while (is_digit(peek()))
        advance();
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (is_digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && is_digit(peek(2))))) {
      is_float = true;
      advance();
      if (peek() == '+' || peek() == '-')
        advance();
      while (is_digit(peek()))
        advance();
    }
    const std::string_view digits = text_.substr(start, pos_ - start);
    Token t = make(is_float ? TokenKind::Float : TokenKind::Int, std::string(digits), line, col);
    if (is_float) {
      auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t.float_value);
      if (ec != std::errc())
        fail("malformed float literal", line, col);
    } else {
      auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t.int_value);
      if (ec != std::errc())
        fail("integer literal out of range", line, col);
    }
    return t;
  }

  Token quoted(std::size_t line, std::size_t col) {
    advance();
    std::string name;
    while (true) {
      if (pos_ >= text_.size())
        fail("unterminated quoted atom", line, col);
      const char c = advance();
      if (c == '\'') {
        if (peek() == '\'') {
          advance();
          name += '\'';
          continue;
        }
        break;
      }
      if (c == '\\') {
        if (pos_ >= text_.size())
          fail("unterminated quoted atom", line, col);
        const char e = advance();
        switch (e) {
        case 'n':
          name += '\n';
          break;
        case 't':
          name += '\t';
          break;
        case '\\':
          name += '\\';
          break;
        case '\'':
          name += '\'';
          break;
        case '"':
          name += '"';
          break;
        case '\n':
          break; // line continuation
        default:
          fail(std::string("unknown escape sequence \\") + e, line_, col_);
        }
        continue;
      }
      name += c;
    }
    return make(TokenKind::QuotedAtom, std::move(name), line, col);
  }

  std::string_view text_;
  std::string_view origin_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
public:
  Parser(std::vector<Token> tokens, Store &store, std::string_view origin)
      : tokens_(std::move(tokens)), store_(store), origin_(origin) {}

  bool at_eof() const { return pos_ >= tokens_.size(); }

  // Parses one term terminated by End (or by end of input when allowed).
  Term read_term(bool end_optional) {
    vars_.clear();
    var_order_.clear();
    auto [t, prio] = parse(1200);
    if (!at_eof() && tokens_[pos_].kind == TokenKind::End) {
      ++pos_;
    } else if (!(end_optional && at_eof())) {
      error(at_eof() ? "operator expected, got end of input" : "operator expected");
    }
    return t;
  }

  VarNames named_vars() const {
    VarNames out;
    for (const auto &name : var_order_)
      if (name[0] != '_')
        out.emplace_back(name, vars_.at(name));
    return out;
  }

  std::size_t line() const { return at_eof() ? last_line() : tokens_[pos_].line; }

  [[noreturn]] void error(const std::string &msg) const {
    if (at_eof())
      throw SyntaxError(msg, last_line(), last_col(), std::string(origin_));
    throw SyntaxError(msg, tokens_[pos_].line, tokens_[pos_].column, std::string(origin_));
  }

private:
  std::size_t last_line() const { return tokens_.empty() ? 1 : tokens_.back().line; }
  std::size_t last_col() const {
    return tokens_.empty() ? 1 : tokens_.back().column + tokens_.back().text.size();
  }

  const Token *peek(std::size_t ahead = 0) const {
    return pos_ + ahead < tokens_.size() ? &tokens_[pos_ + ahead] : nullptr;
  }

  bool is_punct(const Token *t, char c) const {
    return t && t->kind == TokenKind::Punct && t->text.size() == 1 && t->text[0] == c;
  }

  bool is_atom_token(const Token *t) const {
    return t && (t->kind == TokenKind::Atom || t->kind == TokenKind::QuotedAtom);
  }

  bool is_term_end(const Token *t) const {
    return !t || t->kind == TokenKind::End || is_punct(t, ')') || is_punct(t, ',') ||
           is_punct(t, '|') || is_punct(t, ']') || is_punct(t, '}');
  }

  void expect(char c) {
    if (!is_punct(peek(), c))
      error(std::string("expected '") + c + "'");
    ++pos_;
  }

  Term variable(const std::string &name) {
    if (name == "_")
      return store_.make_var();
    if (auto it = vars_.find(name); it != vars_.end())
      return it->second;
    const Term v = store_.make_var();
    vars_.emplace(name, v);
    var_order_.push_back(name);
    return v;
  }

  std::vector<Term> arguments() {
    std::vector<Term> args;
    expect('(');
    while (true) {
      args.push_back(parse(999).first);
      if (is_punct(peek(), ',')) {
        ++pos_;
        continue;
      }
      expect(')');
      return args;
    }
  }

  std::pair<Term, int> primary(int max_priority) {
    const Token *t = peek();
    if (!t || t->kind == TokenKind::End)
      error("unexpected end of clause");
    switch (t->kind) {
    case TokenKind::Int:
      ++pos_;
      return {store_.make_int(t->int_value), 0};
    case TokenKind::Float:
      ++pos_;
      return {store_.make_float(t->float_value), 0};
    case TokenKind::Var: {
      ++pos_;
      return {variable(t->text), 0};
    }
    case TokenKind::Punct:
      return punct(*t);
    default:
      break;
    }
    // Atom or quoted atom.
    const Token tok = *t;
    ++pos_;
    const AtomId name = intern(tok.text);
    const Token *next = peek();
    if (is_punct(next, '(') && !next->layout_before)
      return {store_.make_compound(name, arguments()), 0};
    if (tok.kind == TokenKind::Atom) {
      if (name == atoms::minus && next &&
          (next->kind == TokenKind::Int || next->kind == TokenKind::Float)) {
        ++pos_;
        if (next->kind == TokenKind::Int)
          return {store_.make_int(-next->int_value), 0};
        return {store_.make_float(-next->float_value), 0};
      }
      if (auto op = prefix_op(name)) {
        const bool next_is_infix = is_atom_token(next) && next->kind == TokenKind::Atom &&
                                   infix_op(intern(next->text)) &&
                                   !prefix_op(intern(next->text)) &&
                                   !is_punct(peek(1), '(');
        if (!is_term_end(next) && !next_is_infix) {
          int priority = op->priority;
          int arg_max = op->right_max();
          if (priority > max_priority) {
            priority = 999;
            arg_max = 999;
          }
          const Term arg = parse(arg_max).first;
          return {store_.make_compound(name, {arg}), priority};
        }
      }
    }
    return {store_.make_atom(name), 0};
  }

  std::pair<Term, int> punct(const Token &t) {
    const char c = t.text[0];
    if (c == '(') {
      ++pos_;
      const Term inner = parse(1200).first;
      expect(')');
      return {inner, 0};
    }
    if (c == '[') {
      ++pos_;
      if (is_punct(peek(), ']')) {
        ++pos_;
        return {store_.make_atom(atoms::nil), 0};
      }
      std::vector<Term> items;
      items.push_back(parse(999).first);
      while (is_punct(peek(), ',')) {
        ++pos_;
        items.push_back(parse(999).first);
      }
      std::optional<Term> tail;
      if (is_punct(peek(), '|')) {
        ++pos_;
        tail = parse(999).first;
      }
      expect(']');
      return {store_.make_list(items, tail), 0};
    }
    if (c == '{')
      error("curly-brace terms are not supported");
    error(std::string("unexpected '") + c + "'");
  }

  std::pair<Term, int> parse(int max_priority) {
    auto [left, left_priority] = primary(max_priority);
    while (true) {
      const Token *t = peek();
      if (!t)
        break;
      AtomId name;
      if (t->kind == TokenKind::Atom)
        name = intern(t->text);
      else if (is_punct(t, ','))
        name = atoms::comma;
      else
        break;
      const auto op = infix_op(name);
      if (!op || op->priority > max_priority || left_priority > op->left_max())
        break;
      ++pos_;
      const Term right = parse(op->right_max()).first;
      left = store_.make_compound(name, {left, right});
      left_priority = op->priority;
    }
    return {left, left_priority};
  }

  std::vector<Token> tokens_;
  Store &store_;
  std::string_view origin_;
  std::size_t pos_ = 0;
  std::unordered_map<std::string, Term> vars_;
  std::vector<std::string> var_order_;
};

} // namespace

std::vector<Token> tokenize(std::string_view text, std::string_view origin) {
  return Lexer(text, origin).run();
}

std::vector<SourceClause> parse_program(std::string_view text, Store &store,
                                        std::string_view origin) {
  Parser parser(tokenize(text, origin), store, origin);
  std::vector<SourceClause> clauses;
  while (!parser.at_eof()) {
    const std::size_t line = parser.line();
    const Term t = parser.read_term(false);
    SourceClause clause;
    if (store.is_functor(t, atoms::neck, 2)) {
      clause.head = store.arg(t, 0);
      clause.body = store.arg(t, 1);
    } else {
      clause.head = t;
      clause.body = store.make_atom(atoms::true_);
    }
    if (!store.is_callable(clause.head))
      throw SyntaxError("clause head is not callable", line, 1, std::string(origin));
    clause.origin = std::string(origin);
    clause.line = line;
    clauses.push_back(clause);
  }
  return clauses;
}

Query parse_query(std::string_view text, Store &store) {
  Parser parser(tokenize(text), store, {});
  if (parser.at_eof())
    throw SyntaxError("empty query", 1, 1);
  Query q;
  q.goal = parser.read_term(true);
  q.var_names = parser.named_vars();
  if (!parser.at_eof())
    parser.error("unexpected text after end of query");
  return q;
}

Term parse_term(std::string_view text, Store &store) { return parse_query(text, store).goal; }

} // namespace ddc

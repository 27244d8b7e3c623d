#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ddc/term.hpp"

namespace ddc {

enum class TokenKind { Atom, QuotedAtom, Var, Int, Float, Punct, End };

struct Token {
  TokenKind kind;
  std::string text; // atom name (unescaped), variable name or punctuation
  std::int64_t int_value = 0;
  double float_value = 0.0;
  std::size_t line = 1;
  std::size_t column = 1;
  bool layout_before = false; // whitespace or comment precedes the token
};

// Splits object-language text into tokens. The clause terminator '.' is an
// End token; the end of input is not represented.
std::vector<Token> tokenize(std::string_view text, std::string_view origin = {});

struct SourceClause {
  Term head;
  Term body; // `true` for facts
  std::string origin;
  std::size_t line = 0;
};

// Named variables of a query in order of first appearance; names starting
// with '_' are omitted.
using VarNames = std::vector<std::pair<std::string, Term>>;

struct Query {
  Term goal;
  VarNames var_names;
};

std::vector<SourceClause> parse_program(std::string_view text, Store &store,
                                        std::string_view origin = {});

// A single goal, with or without a terminating '.'.
Query parse_query(std::string_view text, Store &store);

// A single term with the same rules as parse_query.
Term parse_term(std::string_view text, Store &store);

} // namespace ddc

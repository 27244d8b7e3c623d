#pragma once

#include <string>
#include <unordered_map>

#include "ddc/term.hpp"

namespace ddc {

struct FormatOptions {
  // Quote atoms that would not read back as themselves (writeq style).
  bool quoted = false;
  // Display names for unbound variables, keyed by variable id. Others
  // print as _G<id>.
  const std::unordered_map<std::uint32_t, std::string> *var_names = nullptr;
  // Operators above this priority are bracketed at the top level.
  int max_priority = 1200;
};

// Operators print infix with minimal parentheses, except that a
// disjunction is always bracketed. Lists print in [a,b|T] notation.
std::string format_term(const Store &s, Term t, FormatOptions opts = {});

// Shortest text that reads back as the same double; always has a '.'.
std::string format_float(double value);

// Atom text as it would be written with quoting enabled.
std::string quote_atom_if_needed(const std::string &name);

} // namespace ddc

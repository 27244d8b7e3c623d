#include "ddc/format.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string_view>

#include "ddc/ops.hpp"

namespace ddc {

namespace {

bool is_symbol_char(char c) {
  return std::string_view("+-*/\\^<>=~:.?@#&$").find(c) != std::string_view::npos;
}

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_solo_atom(const std::string &name) {
  return name == "[]" || name == "!" || name == ";" || name == "{}";
}

bool is_letter_atom(const std::string &name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0])))
    return false;
  for (char c : name)
    if (!is_alnum(c))
      return false;
  return true;
}

bool is_symbol_atom(const std::string &name) {
  if (name.empty())
    return false;
  for (char c : name)
    if (!is_symbol_char(c))
      return false;
  return true;
}

class Writer {
public:
  Writer(const Store &s, FormatOptions opts) : s_(s), opts_(opts) {}

  std::string write(Term t, int max_priority) {
    const Term d = s_.deref(t);
    switch (s_.tag(d)) {
    case Tag::Var:
      return var_name(d);
    case Tag::Int:
      return std::to_string(s_.int_value(d));
    case Tag::Float:
      return format_float(s_.float_value(d));
    case Tag::Atom:
      return atom_text(s_.atom(d));
    default:
      return compound(d, max_priority);
    }
  }

private:
  std::string var_name(Term v) const {
    if (opts_.var_names)
      if (auto it = opts_.var_names->find(v.index); it != opts_.var_names->end())
        return it->second;
    return "_G" + std::to_string(v.index);
  }

  std::string atom_text(AtomId a) const {
    const std::string &name = atom_name(a);
    return opts_.quoted ? quote_atom_if_needed(name) : name;
  }

  // Operand of an operator: bare operator atoms are bracketed so they do
  // not read as operators.
  std::string operand(Term t, int max_priority) {
    const Term d = s_.deref(t);
    if (s_.is_atom(d) && is_operator(s_.atom(d)))
      return "(" + atom_text(s_.atom(d)) + ")";
    return write(d, max_priority);
  }

  static std::string join(const std::string &left, const std::string &op,
                          const std::string &right) {
    std::string out = left;
    if (!out.empty() && !op.empty() && is_symbol_char(out.back()) && is_symbol_char(op.front()))
      out += ' ';
    out += op;
    if (!right.empty() && !op.empty() && is_symbol_char(op.back()) &&
        is_symbol_char(right.front()))
      out += ' ';
    out += right;
    return out;
  }

  std::string compound(Term t, int max_priority) {
    const AtomId f = s_.name(t);
    const std::uint32_t n = s_.arity(t);
    if (f == atoms::dot && n == 2)
      return list(t);
    if (n == 2) {
      if (auto op = infix_op(f)) {
        const std::string left = operand(s_.arg(t, 0), op->left_max());
        const std::string right = operand(s_.arg(t, 1), op->right_max());
        const std::string &name = atom_name(f);
        std::string op_text;
        if (f == atoms::comma)
          op_text = ",";
        else if (is_letter_atom(name))
          op_text = " " + name + " ";
        else
          op_text = name;
        std::string text = join(left, op_text, right);
        if (op->priority > max_priority || f == atoms::semicolon)
          text = "(" + text + ")";
        return text;
      }
    }
    if (n == 1) {
      if (auto op = prefix_op(f)) {
        const Term a = s_.deref(s_.arg(t, 0));
        if (!s_.is_number(a)) {
          const std::string arg = operand(a, op->right_max());
          std::string text = atom_text(f);
          if (!arg.empty() && (is_symbol_char(arg.front()) ||
                               (is_alnum(arg.front()) && is_alnum(text.back()))))
            text += ' ';
          text += arg;
          if (op->priority > max_priority)
            text = "(" + text + ")";
          return text;
        }
      }
    }
    std::string out = opts_.quoted ? quote_atom_if_needed(atom_name(f)) : atom_name(f);
    out += '(';
    for (std::uint32_t i = 0; i < n; ++i) {
      if (i)
        out += ',';
      out += write(s_.arg(t, i), 999);
    }
    out += ')';
    return out;
  }

  std::string list(Term t) {
    std::string out = "[";
    Term cur = t;
    bool first = true;
    while (s_.is_functor(cur, atoms::dot, 2)) {
      if (!first)
        out += ',';
      first = false;
      out += write(s_.arg(cur, 0), 999);
      cur = s_.deref(s_.arg(cur, 1));
    }
    if (!s_.is_atom(cur, atoms::nil)) {
      out += '|';
      out += write(cur, 999);
    }
    out += ']';
    return out;
  }

  const Store &s_;
  FormatOptions opts_;
};

} // namespace

std::string quote_atom_if_needed(const std::string &name) {
  if (is_letter_atom(name) || is_symbol_atom(name) || is_solo_atom(name))
    return name;
  std::string out = "'";
  for (char c : name) {
    switch (c) {
    case '\'':
      out += "\\'";
      break;
    case '\\':
      out += "\\\\";
      break;
    case '\n':
      out += "\\n";
      break;
    case '\t':
      out += "\\t";
      break;
    default:
      out += c;
    }
  }
  out += '\'';
  return out;
}

std::string format_float(double value) {
  if (std::isnan(value))
    return "nan";
  if (std::isinf(value))
    return value < 0 ? "-inf" : "inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  std::string text(buf, end);
  const auto e = text.find('e');
  const std::string mantissa = text.substr(0, e);
  if (mantissa.find('.') == std::string::npos) {
    if (e == std::string::npos)
      text += ".0";
    else
      text.insert(e, ".0");
  }
  return text;
}

std::string format_term(const Store &s, Term t, FormatOptions opts) {
  return Writer(s, opts).write(t, opts.max_priority);
}

} // namespace ddc

#include "ddc/database.hpp"

#include <set>

#include "ddc/errors.hpp"

namespace ddc {

std::string to_string(PredicateKey key) {
  return atom_name(key.name) + "/" + std::to_string(key.arity);
}

bool is_builtin(PredicateKey key) {
  static const std::set<PredicateKey> builtins = [] {
    std::set<PredicateKey> s;
    const std::pair<const char *, std::uint32_t> table[] = {
        {"true", 0},     {"fail", 0},      {"false", 0},  {"!", 0},       {"nl", 0},
        {",", 2},        {";", 2},         {"->", 2},     {"conj", 1},    {"call", 1},
        {"shift", 1},    {"reset", 3},     {"=", 2},      {"\\=", 2},     {"==", 2},
        {"\\==", 2},     {"is", 2},        {"<", 2},      {">", 2},       {"=<", 2},
        {">=", 2},       {"=:=", 2},       {"=\\=", 2},   {"@<", 2},      {"@>", 2},
        {"@=<", 2},      {"@>=", 2},       {"copy_term", 2}, {"write", 1},
    };
    for (auto [name, arity] : table)
      s.insert({intern(name), arity});
    return s;
  }();
  return builtins.contains(key);
}

void Database::consult(std::span<const SourceClause> clauses) {
  for (const SourceClause &c : clauses) {
    const Term head = store_.deref(c.head);
    if (!store_.is_callable(head))
      throw LoadError(c.origin + ":" + std::to_string(c.line) + ": clause head is not callable");
    const PredicateKey key{store_.name(head), store_.arity(head)};
    if (is_builtin(key))
      throw LoadError((c.origin.empty() ? std::string("<input>") : c.origin) + ":" +
                      std::to_string(c.line) + ": cannot redefine builtin " + to_string(key));
    preds_[key].push_back(c);
  }
}

void Database::consult_text(std::string_view text, std::string_view origin) {
  const auto clauses = parse_program(text, store_, origin);
  consult(clauses);
}

std::span<const SourceClause> Database::clauses(PredicateKey key) const {
  if (auto it = preds_.find(key); it != preds_.end())
    return it->second;
  return {};
}

std::vector<PredicateKey> Database::predicates() const {
  std::vector<PredicateKey> keys;
  for (const auto &[key, _] : preds_)
    keys.push_back(key);
  return keys;
}

namespace {

// True when the two terms certainly do not unify because their principal
// functors or constants differ. Only looks one level deep.
bool clash(const Store &sa, Term a, const Store &sb, Term b) {
  a = sa.deref(a);
  b = sb.deref(b);
  const Tag ta = sa.tag(a);
  const Tag tb = sb.tag(b);
  if (ta == Tag::Var || tb == Tag::Var)
    return false;
  if (ta != tb)
    return true;
  switch (ta) {
  case Tag::Atom:
    return sa.atom(a) != sb.atom(b);
  case Tag::Int:
    return sa.int_value(a) != sb.int_value(b);
  case Tag::Float:
    return sa.float_value(a) != sb.float_value(b);
  default:
    return sa.name(a) != sb.name(b) || sa.arity(a) != sb.arity(b);
  }
}

} // namespace

std::vector<ClauseInstance> Database::matching_clauses(Store &target, Term call) const {
  const Term c = target.deref(call);
  const PredicateKey key{target.name(c), target.arity(c)};
  std::vector<ClauseInstance> out;
  for (const SourceClause &clause : clauses(key)) {
    bool skip = false;
    for (std::uint32_t i = 0; i < key.arity && !skip; ++i)
      skip = clash(target, target.arg(c, i), store_, store_.arg(clause.head, i));
    if (skip)
      continue;
    VarMap vars;
    const Term head = import_term(target, store_, clause.head, vars);
    const Term body = import_term(target, store_, clause.body, vars);
    out.push_back({head, body});
  }
  return out;
}

Term disjoin_clauses(Store &s, Term call, std::span<const ClauseInstance> clauses) {
  if (clauses.empty())
    return s.make_atom(atoms::fail);
  auto alternative = [&](const ClauseInstance &c) {
    return s.make_compound(atoms::comma, {s.make_compound(atoms::eq, {call, c.head}), c.body});
  };
  Term result = alternative(clauses.back());
  for (std::size_t i = clauses.size() - 1; i-- > 0;)
    result = s.make_compound(atoms::semicolon, {alternative(clauses[i]), result});
  return result;
}

} // namespace ddc

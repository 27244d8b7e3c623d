#include "ddc/term.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>
#include <utility>

namespace ddc {

std::uint32_t Store::push(Cell c) {
  const auto index = static_cast<std::uint32_t>(cells_.size());
  cells_.push_back(c);
  return index;
}

Term Store::make_var() {
  Cell c{Tag::Var, 0, {}};
  const auto index = static_cast<std::uint32_t>(cells_.size());
  c.ref = index;
  return Term{push(c)};
}

Term Store::make_atom(AtomId name) {
  Cell c{Tag::Atom, 0, {}};
  c.atom = name;
  return Term{push(c)};
}

Term Store::make_int(std::int64_t value) {
  Cell c{Tag::Int, 0, {}};
  c.i = value;
  return Term{push(c)};
}

Term Store::make_float(double value) {
  Cell c{Tag::Float, 0, {}};
  c.f = value;
  return Term{push(c)};
}

Term Store::make_compound(AtomId functor, std::span<const Term> args) {
  if (args.empty())
    return make_atom(functor);
  Cell head{Tag::Struct, static_cast<std::uint32_t>(args.size()), {}};
  head.atom = functor;
  const Term result{push(head)};
  for (Term a : args) {
    const Term d = deref(a);
    const Cell &target = cells_[d.index];
    if (target.tag == Tag::Var || target.tag == Tag::Struct) {
      Cell r{Tag::Ref, 0, {}};
      r.ref = d.index;
      push(r);
    } else {
      push(Cell(target));
    }
  }
  return result;
}

Term Store::make_list(std::span<const Term> items, std::optional<Term> tail) {
  Term list = tail ? *tail : make_atom(atoms::nil);
  for (auto it = items.rbegin(); it != items.rend(); ++it)
    list = make_compound(atoms::dot, {*it, list});
  return list;
}

Term Store::deref(Term t) const {
  std::uint32_t i = t.index;
  while (true) {
    const Cell &c = cells_[i];
    if (c.tag == Tag::Ref)
      i = c.ref;
    else
      return Term{i};
  }
}

bool Store::is_atom(Term t, AtomId name) const {
  const Cell &c = cells_[deref(t).index];
  return c.tag == Tag::Atom && c.atom == name;
}

bool Store::is_functor(Term t, AtomId name, std::uint32_t arity) const {
  const Cell &c = cells_[deref(t).index];
  return c.tag == Tag::Struct && c.atom == name && c.arity == arity;
}

AtomId Store::atom(Term t) const {
  const Cell &c = cells_[deref(t).index];
  assert(c.tag == Tag::Atom);
  return c.atom;
}

std::int64_t Store::int_value(Term t) const {
  const Cell &c = cells_[deref(t).index];
  assert(c.tag == Tag::Int);
  return c.i;
}

double Store::float_value(Term t) const {
  const Cell &c = cells_[deref(t).index];
  assert(c.tag == Tag::Float);
  return c.f;
}

AtomId Store::name(Term t) const {
  const Cell &c = cells_[deref(t).index];
  assert(c.tag == Tag::Atom || c.tag == Tag::Struct);
  return c.atom;
}

std::uint32_t Store::arity(Term t) const {
  const Cell &c = cells_[deref(t).index];
  return c.tag == Tag::Struct ? c.arity : 0;
}

Term Store::arg(Term t, std::uint32_t i) const {
  const Term d = deref(t);
  assert(cells_[d.index].tag == Tag::Struct && i < cells_[d.index].arity);
  return Term{d.index + 1 + i};
}

void Store::bind(Term var, Term value) {
  Cell &c = cells_[var.index];
  assert(c.tag == Tag::Var);
  const Term v = deref(value);
  if (v.index == var.index)
    return;
  c.tag = Tag::Ref;
  c.ref = v.index;
}

void Store::unbind(Term var) {
  Cell &c = cells_[var.index];
  c.tag = Tag::Var;
  c.ref = var.index;
}

std::optional<std::vector<Term>> Store::list_items(Term t) const {
  std::vector<Term> items;
  Term cur = deref(t);
  while (is_functor(cur, atoms::dot, 2)) {
    items.push_back(arg(cur, 0));
    cur = deref(arg(cur, 1));
  }
  if (!is_atom(cur, atoms::nil))
    return std::nullopt;
  return items;
}

Term import_term(Store &dst, const Store &src, Term t, VarMap &vars) {
  using Cell = Store::Cell;
  // Each work item copies the source term into a destination cell that has
  // already been reserved. The root gets a reserved cell of its own.
  struct Work {
    Term from;
    std::uint32_t slot;
  };
  const Term root = src.deref(t);
  {
    const Cell c = src.cells_[root.index];
    switch (c.tag) {
    case Tag::Var: {
      if (auto it = vars.find(root.index); it != vars.end())
        return it->second;
      const Term fresh = dst.make_var();
      vars.emplace(root.index, fresh);
      return fresh;
    }
    case Tag::Atom:
    case Tag::Int:
    case Tag::Float:
      return &dst == &src ? root : Term{dst.push(c)};
    default:
      break;
    }
  }

  std::vector<Work> work;
  // Cells are taken by value: dst may be src, and pushing reallocates.
  auto alloc_struct = [&](const Cell head, Term from) {
    const std::uint32_t at = dst.push(head);
    for (std::uint32_t i = 0; i < head.arity; ++i)
      dst.push(Cell{Tag::Atom, 0, {}});
    for (std::uint32_t i = head.arity; i-- > 0;)
      work.push_back({Term{from.index + 1 + i}, at + 1 + i});
    return at;
  };

  const std::uint32_t result = alloc_struct(src.cells_[root.index], root);
  while (!work.empty()) {
    const Work w = work.back();
    work.pop_back();
    const Term from = src.deref(w.from);
    const Cell c = src.cells_[from.index];
    switch (c.tag) {
    case Tag::Var: {
      auto it = vars.find(from.index);
      if (it == vars.end()) {
        // The slot itself becomes the fresh variable.
        Cell &slot = dst.cells_[w.slot];
        slot.tag = Tag::Var;
        slot.ref = w.slot;
        vars.emplace(from.index, Term{w.slot});
      } else {
        Cell &slot = dst.cells_[w.slot];
        slot.tag = Tag::Ref;
        slot.ref = dst.deref(it->second).index;
      }
      break;
    }
    case Tag::Struct: {
      const std::uint32_t at = alloc_struct(c, from);
      Cell &slot = dst.cells_[w.slot];
      slot.tag = Tag::Ref;
      slot.ref = at;
      break;
    }
    default:
      dst.cells_[w.slot] = c;
      break;
    }
  }
  return Term{result};
}

bool unify(Store &s, Term a, Term b) {
  std::vector<std::pair<Term, Term>> todo{{a, b}};
  while (!todo.empty()) {
    auto [x, y] = todo.back();
    todo.pop_back();
    x = s.deref(x);
    y = s.deref(y);
    if (x == y)
      continue;
    const Tag tx = s.tag(x);
    const Tag ty = s.tag(y);
    if (tx == Tag::Var) {
      s.bind(x, y);
      continue;
    }
    if (ty == Tag::Var) {
      s.bind(y, x);
      continue;
    }
    if (tx != ty)
      return false;
    switch (tx) {
    case Tag::Atom:
      if (s.atom(x) != s.atom(y))
        return false;
      break;
    case Tag::Int:
      if (s.int_value(x) != s.int_value(y))
        return false;
      break;
    case Tag::Float:
      // Bitwise identity, so that 0.0 and -0.0 stay distinct like in
      // compare_standard.
      if (std::bit_cast<std::uint64_t>(s.float_value(x)) !=
          std::bit_cast<std::uint64_t>(s.float_value(y)))
        return false;
      break;
    case Tag::Struct: {
      const std::uint32_t n = s.arity(x);
      if (n != s.arity(y) || s.name(x) != s.name(y))
        return false;
      for (std::uint32_t i = n; i-- > 0;)
        todo.emplace_back(s.arg(x, i), s.arg(y, i));
      break;
    }
    default:
      break;
    }
  }
  return true;
}

namespace {

int type_rank(Tag t) {
  switch (t) {
  case Tag::Var:
    return 0;
  case Tag::Int:
  case Tag::Float:
    return 1;
  case Tag::Atom:
    return 2;
  default:
    return 3;
  }
}

Ordering order_of(int c) { return c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal); }

template <typename T> Ordering three_way(T a, T b) {
  return a < b ? Ordering::Less : (b < a ? Ordering::Greater : Ordering::Equal);
}

Ordering compare_numbers(const Store &s, Term a, Term b) {
  const Tag ta = s.tag(a);
  const Tag tb = s.tag(b);
  if (ta == Tag::Int && tb == Tag::Int)
    return three_way(s.int_value(a), s.int_value(b));
  if (ta == Tag::Float && tb == Tag::Float) {
    const double x = s.float_value(a);
    const double y = s.float_value(b);
    if (x < y)
      return Ordering::Less;
    if (y < x)
      return Ordering::Greater;
    // Equal values (or NaNs): fall back to bit patterns for a total order.
    return three_way(std::bit_cast<std::int64_t>(x), std::bit_cast<std::int64_t>(y));
  }
  // Mixed int/float: by value, and on a numeric tie the float comes first.
  const double x = ta == Tag::Int ? static_cast<double>(s.int_value(a)) : s.float_value(a);
  const double y = tb == Tag::Int ? static_cast<double>(s.int_value(b)) : s.float_value(b);
  if (x < y)
    return Ordering::Less;
  if (y < x)
    return Ordering::Greater;
  if (ta == Tag::Int) {
    // Large ints may round to the float; compare exactly where possible.
    const long double xi = static_cast<long double>(s.int_value(a));
    const long double yf = static_cast<long double>(s.float_value(b));
    if (xi < yf)
      return Ordering::Less;
    if (yf < xi)
      return Ordering::Greater;
    return Ordering::Greater;
  }
  const long double xf = static_cast<long double>(s.float_value(a));
  const long double yi = static_cast<long double>(s.int_value(b));
  if (xf < yi)
    return Ordering::Less;
  if (yi < xf)
    return Ordering::Greater;
  return Ordering::Less;
}

} // namespace

Ordering compare_standard(const Store &s, Term a, Term b) {
  std::vector<std::pair<Term, Term>> todo{{a, b}};
  while (!todo.empty()) {
    auto [x, y] = todo.back();
    todo.pop_back();
    x = s.deref(x);
    y = s.deref(y);
    if (x == y)
      continue;
    const Tag tx = s.tag(x);
    const Tag ty = s.tag(y);
    const int rx = type_rank(tx);
    const int ry = type_rank(ty);
    if (rx != ry)
      return order_of(rx - ry);
    Ordering o = Ordering::Equal;
    switch (tx) {
    case Tag::Var:
      o = three_way(x.index, y.index);
      break;
    case Tag::Int:
    case Tag::Float:
      o = compare_numbers(s, x, y);
      break;
    case Tag::Atom:
      o = order_of(atom_name(s.atom(x)).compare(atom_name(s.atom(y))));
      break;
    default: {
      o = three_way(s.arity(x), s.arity(y));
      if (o == Ordering::Equal)
        o = order_of(atom_name(s.name(x)).compare(atom_name(s.name(y))));
      if (o == Ordering::Equal) {
        for (std::uint32_t i = s.arity(x); i-- > 0;)
          todo.emplace_back(s.arg(x, i), s.arg(y, i));
      }
      break;
    }
    }
    if (o != Ordering::Equal)
      return o;
  }
  return Ordering::Equal;
}

void collect_vars(const Store &s, Term t, std::unordered_set<std::uint32_t> &out) {
  std::vector<Term> todo{t};
  while (!todo.empty()) {
    const Term x = s.deref(todo.back());
    todo.pop_back();
    switch (s.tag(x)) {
    case Tag::Var:
      out.insert(x.index);
      break;
    case Tag::Struct:
      for (std::uint32_t i = 0; i < s.arity(x); ++i)
        todo.push_back(s.arg(x, i));
      break;
    default:
      break;
    }
  }
}

std::vector<Term> term_vars(const Store &s, Term t) {
  std::vector<Term> result;
  std::unordered_set<std::uint32_t> seen;
  std::vector<Term> todo{t};
  while (!todo.empty()) {
    const Term x = s.deref(todo.back());
    todo.pop_back();
    switch (s.tag(x)) {
    case Tag::Var:
      if (seen.insert(x.index).second)
        result.push_back(x);
      break;
    case Tag::Struct:
      for (std::uint32_t i = s.arity(x); i-- > 0;)
        todo.push_back(s.arg(x, i));
      break;
    default:
      break;
    }
  }
  return result;
}

bool is_variant(const Store &sa, Term a, const Store &sb, Term b,
                std::unordered_map<std::uint32_t, std::uint32_t> &a_to_b,
                std::unordered_map<std::uint32_t, std::uint32_t> &b_to_a) {
  std::vector<std::pair<Term, Term>> todo{{a, b}};
  while (!todo.empty()) {
    auto [x, y] = todo.back();
    todo.pop_back();
    x = sa.deref(x);
    y = sb.deref(y);
    const Tag tx = sa.tag(x);
    if (tx != sb.tag(y))
      return false;
    switch (tx) {
    case Tag::Var: {
      auto [ia, fresh_a] = a_to_b.emplace(x.index, y.index);
      auto [ib, fresh_b] = b_to_a.emplace(y.index, x.index);
      if (ia->second != y.index || ib->second != x.index)
        return false;
      break;
    }
    case Tag::Atom:
      if (sa.atom(x) != sb.atom(y))
        return false;
      break;
    case Tag::Int:
      if (sa.int_value(x) != sb.int_value(y))
        return false;
      break;
    case Tag::Float:
      if (std::bit_cast<std::uint64_t>(sa.float_value(x)) !=
          std::bit_cast<std::uint64_t>(sb.float_value(y)))
        return false;
      break;
    default: {
      const std::uint32_t n = sa.arity(x);
      if (n != sb.arity(y) || sa.name(x) != sb.name(y))
        return false;
      for (std::uint32_t i = n; i-- > 0;)
        todo.emplace_back(sa.arg(x, i), sb.arg(y, i));
      break;
    }
    }
  }
  return true;
}

bool is_variant(const Store &sa, Term a, const Store &sb, Term b) {
  std::unordered_map<std::uint32_t, std::uint32_t> ab, ba;
  return is_variant(sa, a, sb, b, ab, ba);
}

} // namespace ddc

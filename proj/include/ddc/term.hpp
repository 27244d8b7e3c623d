#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ddc/atom.hpp"

namespace ddc {

// A term is a handle to a cell in a Store. Unbound variables are identified
// by the index of their cell, which is unique for the lifetime of the store.
struct Term {
  std::uint32_t index = 0;

  friend bool operator==(Term, Term) = default;
};

enum class Tag : std::uint8_t { Ref, Var, Atom, Int, Float, Struct };

enum class Ordering { Less, Equal, Greater };

using VarMap = std::unordered_map<std::uint32_t, Term>;

// Heap of term cells plus the variable bindings living in them.
//
// A compound occupies one Struct cell followed by one cell per argument. A
// bound variable becomes a Ref cell pointing at its value. The engine only
// ever adds bindings; bindings left behind by a failed unification are
// unreachable from any path the engine resumes, because resumed branches
// are renamed-apart copies. unbind() exists solely for trail-based solvers.
class Store {
public:
  Store() { cells_.reserve(1024); }

  Term make_var();
  Term make_atom(AtomId name);
  Term make_atom(std::string_view name) { return make_atom(intern(name)); }
  Term make_int(std::int64_t value);
  Term make_float(double value);
  Term make_compound(AtomId functor, std::span<const Term> args);
  Term make_compound(std::string_view functor, std::initializer_list<Term> args) {
    return make_compound(intern(functor), std::span<const Term>(args.begin(), args.size()));
  }
  Term make_compound(AtomId functor, std::initializer_list<Term> args) {
    return make_compound(functor, std::span<const Term>(args.begin(), args.size()));
  }
  // Proper list of `items`, or a partial list ending in `tail`.
  Term make_list(std::span<const Term> items, std::optional<Term> tail = std::nullopt);

  Term deref(Term t) const;

  Tag tag(Term t) const { return cells_[deref(t).index].tag; }
  bool is_var(Term t) const { return tag(t) == Tag::Var; }
  bool is_atom(Term t) const { return tag(t) == Tag::Atom; }
  bool is_atom(Term t, AtomId name) const;
  bool is_number(Term t) const {
    const Tag k = tag(t);
    return k == Tag::Int || k == Tag::Float;
  }
  bool is_compound(Term t) const { return tag(t) == Tag::Struct; }
  bool is_callable(Term t) const {
    const Tag k = tag(t);
    return k == Tag::Atom || k == Tag::Struct;
  }
  // Compound with the given name and arity.
  bool is_functor(Term t, AtomId name, std::uint32_t arity) const;

  AtomId atom(Term t) const;
  std::int64_t int_value(Term t) const;
  double float_value(Term t) const;
  // Functor name of a compound or the name of an atom.
  AtomId name(Term t) const;
  std::uint32_t arity(Term t) const;
  // Argument i (0-based) of a compound; not dereferenced.
  Term arg(Term t, std::uint32_t i) const;

  // Binds an unbound variable. `var` must dereference to itself.
  void bind(Term var, Term value);
  void unbind(Term var);

  // Elements of a proper list, or nullopt if `t` is not one.
  std::optional<std::vector<Term>> list_items(Term t) const;

  std::size_t size() const { return cells_.size(); }

private:
  friend Term import_term(Store &dst, const Store &src, Term t, VarMap &vars);

  struct Cell {
    Tag tag;
    std::uint32_t arity;
    union {
      std::uint32_t ref;
      AtomId atom;
      std::int64_t i;
      double f;
    };
  };

  std::uint32_t push(Cell c);

  std::vector<Cell> cells_;
};

// Structural copy of `t` from `src` into `dst`. Unbound variables are
// replaced consistently through `vars` by fresh variables of `dst`.
Term import_term(Store &dst, const Store &src, Term t, VarMap &vars);

// Renaming apart within one store.
inline Term copy_term(Store &s, Term t, VarMap &vars) { return import_term(s, s, t, vars); }
inline Term copy_term(Store &s, Term t) {
  VarMap vars;
  return import_term(s, s, t, vars);
}

// Unification without occurs check. On failure the store may hold partial
// bindings (see Store).
bool unify(Store &s, Term a, Term b);

Ordering compare_standard(const Store &s, Term a, Term b);
inline bool identical(const Store &s, Term a, Term b) {
  return compare_standard(s, a, b) == Ordering::Equal;
}

// Ids of the unbound variables reachable from `t`.
void collect_vars(const Store &s, Term t, std::unordered_set<std::uint32_t> &out);
std::vector<Term> term_vars(const Store &s, Term t);

// Equality up to a consistent bijective renaming of unbound variables. The
// maps carry the renaming across calls so tuples can be compared piecewise.
bool is_variant(const Store &sa, Term a, const Store &sb, Term b,
                std::unordered_map<std::uint32_t, std::uint32_t> &a_to_b,
                std::unordered_map<std::uint32_t, std::uint32_t> &b_to_a);
bool is_variant(const Store &sa, Term a, const Store &sb, Term b);

} // namespace ddc

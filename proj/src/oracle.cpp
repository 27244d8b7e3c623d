#include "ddc/oracle.hpp"

#include <bit>
#include <iostream>
#include <memory>
#include <unordered_map>

#include "ddc/arith.hpp"
#include "ddc/errors.hpp"
#include "ddc/format.hpp"

namespace ddc {

namespace {

struct Goal {
  Term term;
  std::size_t barrier; // choicepoint height a cut in this goal returns to
  bool commit = false; // if-then-else commit: cut to barrier
};

struct Node;
using GoalList = std::shared_ptr<const Node>;
struct Node {
  Goal goal;
  GoalList next;
};

GoalList cons(Goal g, GoalList next) { return std::make_shared<const Node>(Node{g, std::move(next)}); }

struct ChoicePoint {
  std::size_t trail_mark;
  GoalList goals; // continuation to resume
  // Clause alternatives when `clauses` is non-empty.
  Term call{};
  std::span<const SourceClause> clauses;
  std::size_t next_clause = 0;
  std::size_t barrier = 0;
};

class SldMachine {
public:
  SldMachine(Store &s, const Database &db, const OracleConfig &cfg) : s_(s), db_(db), cfg_(cfg) {}

  OracleResult run(Term goal, const VarNames &names) {
    OracleResult result;
    std::vector<Term> vars;
    for (const auto &[_, v] : names)
      vars.push_back(v);
    const Term tuple = s_.make_compound(intern("$answer"), vars);
    GoalList goals = cons({goal, 0}, nullptr);
    std::uint64_t steps = 0;
    while (true) {
      if (!goals) {
        result.answers.push_back(snapshot(tuple, names));
        if (result.answers.size() >= cfg_.answer_cap) {
          result.truncated = !cps_.empty();
          result.exhausted = cps_.empty();
          break;
        }
        const bool more = backtrack(goals);
        if (cyclic_) {
          result.cyclic = true;
          break;
        }
        if (!more) {
          result.exhausted = true;
          break;
        }
        continue;
      }
      if (++steps > cfg_.depth_limit) {
        result.truncated = true;
        break;
      }
      const Goal g = goals->goal;
      goals = goals->next;
      const bool ok = step(g, goals) || (!cyclic_ && backtrack(goals));
      if (cyclic_) {
        result.cyclic = true;
        break;
      }
      if (!ok) {
        result.exhausted = true;
        break;
      }
    }
    undo(0);
    return result;
  }

private:
  std::ostream &out() { return cfg_.output ? *cfg_.output : std::cout; }

  Answer snapshot(Term tuple, const VarNames &names) {
    VarMap vars;
    const Term copy = rename(s_, tuple, vars);
    Answer a;
    for (std::uint32_t i = 0; i < names.size(); ++i)
      a.bindings.emplace_back(names[i].first, s_.deref(s_.arg(copy, i)));
    return a;
  }

  // Copies `t` from `src` into the working store with fresh variables.
  Term rename(const Store &src, Term t, VarMap &vars) {
    t = src.deref(t);
    switch (src.tag(t)) {
    case Tag::Var: {
      auto [it, fresh] = vars.try_emplace(t.index);
      if (fresh)
        it->second = s_.make_var();
      return it->second;
    }
    case Tag::Atom:
      return s_.make_atom(src.atom(t));
    case Tag::Int:
      return s_.make_int(src.int_value(t));
    case Tag::Float:
      return s_.make_float(src.float_value(t));
    default: {
      std::vector<Term> args;
      for (std::uint32_t i = 0; i < src.arity(t); ++i)
        args.push_back(rename(src, src.arg(t, i), vars));
      return s_.make_compound(src.name(t), args);
    }
    }
  }

  bool occurs(Term var, Term t) const {
    std::vector<Term> todo{t};
    while (!todo.empty()) {
      const Term x = s_.deref(todo.back());
      todo.pop_back();
      if (x == var)
        return true;
      if (s_.is_compound(x))
        for (std::uint32_t i = 0; i < s_.arity(x); ++i)
          todo.push_back(s_.arg(x, i));
    }
    return false;
  }

  void bind(Term var, Term value) {
    if (cfg_.detect_cycles && occurs(var, value))
      cyclic_ = true;
    s_.bind(var, value);
    trail_.push_back(var);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      s_.unbind(trail_.back());
      trail_.pop_back();
    }
  }

  bool unify(Term a, Term b) {
    std::vector<std::pair<Term, Term>> todo{{a, b}};
    while (!todo.empty()) {
      auto [x, y] = todo.back();
      todo.pop_back();
      x = s_.deref(x);
      y = s_.deref(y);
      if (x == y)
        continue;
      const Tag tx = s_.tag(x);
      const Tag ty = s_.tag(y);
      if (tx == Tag::Var || ty == Tag::Var) {
        if (tx == Tag::Var)
          bind(x, y);
        else
          bind(y, x);
        if (cyclic_)
          return false;
        continue;
      }
      if (tx != ty)
        return false;
      switch (tx) {
      case Tag::Atom:
        if (s_.atom(x) != s_.atom(y))
          return false;
        break;
      case Tag::Int:
        if (s_.int_value(x) != s_.int_value(y))
          return false;
        break;
      case Tag::Float:
        if (std::bit_cast<std::uint64_t>(s_.float_value(x)) !=
            std::bit_cast<std::uint64_t>(s_.float_value(y)))
          return false;
        break;
      default:
        if (s_.name(x) != s_.name(y) || s_.arity(x) != s_.arity(y))
          return false;
        for (std::uint32_t i = 0; i < s_.arity(x); ++i)
          todo.emplace_back(s_.arg(x, i), s_.arg(y, i));
      }
    }
    return true;
  }

  bool backtrack(GoalList &goals) {
    while (!cps_.empty()) {
      ChoicePoint cp = cps_.back();
      cps_.pop_back();
      undo(cp.trail_mark);
      if (cp.clauses.empty()) {
        goals = cp.goals;
        return true;
      }
      if (try_clauses(cp.call, cp.clauses, cp.next_clause, cp.barrier, cp.goals, goals))
        return true;
    }
    return false;
  }

  bool try_clauses(Term call, std::span<const SourceClause> clauses, std::size_t from,
                   std::size_t barrier, const GoalList &rest, GoalList &goals) {
    for (std::size_t i = from; i < clauses.size(); ++i) {
      const std::size_t mark = trail_.size();
      if (i + 1 < clauses.size())
        cps_.push_back({mark, rest, call, clauses, i + 1, barrier});
      VarMap vars;
      const Term head = rename(db_.store(), clauses[i].head, vars);
      const Term body = rename(db_.store(), clauses[i].body, vars);
      if (unify(call, head)) {
        goals = cons({body, barrier}, rest);
        return true;
      }
      undo(mark);
      if (i + 1 < clauses.size())
        cps_.pop_back();
    }
    return false;
  }

  ChoicePoint alternative(GoalList goals) {
    ChoicePoint cp;
    cp.trail_mark = trail_.size();
    cp.goals = std::move(goals);
    return cp;
  }

  void cut_to(std::size_t height) {
    if (cps_.size() > height)
      cps_.resize(height);
  }

  Ordering compare_arith(Term a, Term b) {
    return compare_numeric(eval_arith(s_, a), eval_arith(s_, b));
  }

  // Executes one goal. False means the goal failed.
  bool step(const Goal &g, GoalList &goals) {
    if (g.commit) {
      cut_to(g.barrier);
      return true;
    }
    const Term t = s_.deref(g.term);
    switch (s_.tag(t)) {
    case Tag::Var:
      throw EngineError(ErrorKind::Instantiation, "instantiation error: unbound goal");
    case Tag::Int:
    case Tag::Float:
      throw EngineError(ErrorKind::Type, "type error: callable expected, found " + format_term(s_, t));
    default:
      break;
    }
    const std::string &f = atom_name(s_.name(t));
    const std::uint32_t n = s_.arity(t);
    auto arg = [&](std::uint32_t i) { return s_.arg(t, i); };
    if (n == 0) {
      if (f == "true")
        return true;
      if (f == "fail" || f == "false")
        return false;
      if (f == "!") {
        if (cfg_.cut == CutMode::Real)
          cut_to(g.barrier);
        return true;
      }
      if (f == "nl") {
        out() << '\n';
        return true;
      }
    } else if (n == 1) {
      if (f == "call") {
        goals = cons({arg(0), cps_.size()}, goals);
        return true;
      }
      if (f == "conj") {
        const auto items = s_.list_items(arg(0));
        if (!items)
          throw EngineError(ErrorKind::Type, "type error: conj/1 expects a proper list");
        for (auto it = items->rbegin(); it != items->rend(); ++it)
          goals = cons({*it, g.barrier}, goals);
        return true;
      }
      if (f == "write") {
        out() << format_term(s_, arg(0));
        return true;
      }
      if (f == "shift")
        throw EngineError(ErrorKind::Type, "type error: shift/1 is not supported by the oracle");
    } else if (n == 2) {
      const Term x = arg(0);
      const Term y = arg(1);
      if (f == ",") {
        goals = cons({x, g.barrier}, cons({y, g.barrier}, goals));
        return true;
      }
      if (f == ";") {
        const Term left = s_.deref(x);
        if (s_.is_functor(left, intern("->"), 2))
          return if_then_else(s_.arg(left, 0), s_.arg(left, 1), y, g.barrier, goals);
        cps_.push_back(alternative(cons({y, g.barrier}, goals)));
        goals = cons({x, g.barrier}, goals);
        return true;
      }
      if (f == "->")
        return if_then_else(x, y, s_.make_atom(atoms::fail), g.barrier, goals);
      if (f == "=")
        return unify(x, y);
      if (f == "\\=") {
        const std::size_t mark = trail_.size();
        const bool unifiable = unify(x, y);
        undo(mark);
        return !unifiable;
      }
      if (f == "==")
        return compare_standard(s_, x, y) == Ordering::Equal;
      if (f == "\\==")
        return compare_standard(s_, x, y) != Ordering::Equal;
      if (f == "is")
        return unify(x, make_number(s_, eval_arith(s_, y)));
      if (f == "<")
        return compare_arith(x, y) == Ordering::Less;
      if (f == ">")
        return compare_arith(x, y) == Ordering::Greater;
      if (f == "=<")
        return compare_arith(x, y) != Ordering::Greater;
      if (f == ">=")
        return compare_arith(x, y) != Ordering::Less;
      if (f == "=:=")
        return compare_arith(x, y) == Ordering::Equal;
      if (f == "=\\=")
        return compare_arith(x, y) != Ordering::Equal;
      if (f == "@<")
        return compare_standard(s_, x, y) == Ordering::Less;
      if (f == "@>")
        return compare_standard(s_, x, y) == Ordering::Greater;
      if (f == "@=<")
        return compare_standard(s_, x, y) != Ordering::Greater;
      if (f == "@>=")
        return compare_standard(s_, x, y) != Ordering::Less;
      if (f == "copy_term") {
        VarMap vars;
        return unify(rename(s_, x, vars), y);
      }
    } else if (n == 3 && f == "reset") {
      throw EngineError(ErrorKind::Type, "type error: reset/3 is not supported by the oracle");
    }
    const Term call = t;
    return try_clauses(call, db_.clauses({s_.name(t), n}), 0, cps_.size(), goals, goals);
  }

  bool if_then_else(Term c, Term then_goal, Term else_goal, std::size_t barrier, GoalList &goals) {
    const std::size_t height = cps_.size();
    cps_.push_back(alternative(cons({else_goal, barrier}, goals)));
    goals = cons({c, height + 1},
                 cons({Term{}, height, true}, cons({then_goal, barrier}, goals)));
    return true;
  }

  Store &s_;
  const Database &db_;
  const OracleConfig &cfg_;
  std::vector<Term> trail_;
  std::vector<ChoicePoint> cps_;
  bool cyclic_ = false;
};

} // namespace

OracleResult sld_solve(Store &store, const Database &db, Term goal, const VarNames &names,
                       const OracleConfig &config) {
  SldMachine solver(store, db, config);
  return solver.run(goal, names);
}

OracleResult sld_solve(Store &store, const Database &db, std::string_view query_text,
                       const OracleConfig &config) {
  const Query q = parse_query(query_text, store);
  return sld_solve(store, db, q.goal, q.var_names, config);
}

bool answers_equiv(const Store &sa, const std::vector<Answer> &a, const Store &sb,
                   const std::vector<Answer> &b) {
  if (a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto &x = a[i].bindings;
    const auto &y = b[i].bindings;
    if (x.size() != y.size())
      return false;
    std::unordered_map<std::uint32_t, std::uint32_t> a_to_b;
    std::unordered_map<std::uint32_t, std::uint32_t> b_to_a;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j].first != y[j].first || !is_variant(sa, x[j].second, sb, y[j].second, a_to_b, b_to_a))
        return false;
  }
  return true;
}

} // namespace ddc

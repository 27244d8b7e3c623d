#include "ddc/engine.hpp"

#include <atomic>
#include <iostream>
#include <stdexcept>
#include <unordered_set>

#include "ddc/arith.hpp"
#include "ddc/errors.hpp"
#include "ddc/format.hpp"

namespace ddc {

const char *to_string(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::Instantiation:
    return "instantiation_error";
  case ErrorKind::Type:
    return "type_error";
  case ErrorKind::Evaluation:
    return "evaluation_error";
  case ErrorKind::Resource:
    return "resource_error";
  case ErrorKind::ShiftInCondition:
    return "shift_in_condition";
  case ErrorKind::UncaughtShift:
    return "uncaught_shift";
  }
  return "unknown_error";
}

namespace {

std::atomic<std::uint64_t> g_freshness_checks{0};

constexpr int kMaxNesting = 20000;

struct Builtins {
  AtomId unify = intern("=");
  AtomId not_unify = intern("\\=");
  AtomId identical = intern("==");
  AtomId not_identical = intern("\\==");
  AtomId is = intern("is");
  AtomId lt = intern("<");
  AtomId gt = intern(">");
  AtomId le = intern("=<");
  AtomId ge = intern(">=");
  AtomId num_eq = intern("=:=");
  AtomId num_ne = intern("=\\=");
  AtomId term_lt = intern("@<");
  AtomId term_gt = intern("@>");
  AtomId term_le = intern("@=<");
  AtomId term_ge = intern("@>=");
  AtomId copy_term = intern("copy_term");
  AtomId write = intern("write");
  AtomId nl = intern("nl");
};

const Builtins &builtins() {
  static const Builtins b;
  return b;
}

} // namespace

Engine::Engine(std::shared_ptr<const Database> db, EngineOptions options)
    : db_(std::move(db)), options_(std::move(options)) {
  if (!db_)
    db_ = std::make_shared<Database>();
}

std::uint64_t Engine::freshness_checks() { return g_freshness_checks.load(); }

std::ostream &Engine::out() { return options_.output ? *options_.output : std::cout; }

Alt Engine::empty_alt() { return {store_.make_var(), store_.make_atom(atoms::fail)}; }

bool Engine::is_empty(const Alt &alt) const { return store_.is_atom(alt.goal, atoms::fail); }

Alt Engine::disjoin(const Alt &first, const Alt &second) {
  if (is_empty(first))
    return second;
  if (is_empty(second))
    return first;
  const Term joined = store_.make_var();
  auto side = [&](const Alt &a) {
    return store_.make_compound(atoms::comma,
                                {store_.make_compound(atoms::eq, {a.pattern, joined}), a.goal});
  };
  const Term l = side(first);
  const Term r = side(second);
  return {joined, store_.make_compound(atoms::semicolon, {l, r})};
}

EvalResult Engine::eval(std::span<const Term> conj, Term pattern, const Alt &disj) {
  Frame frame;
  frame.goals.assign(conj.rbegin(), conj.rend());
  frame.pattern = pattern;
  frame.disj = disj;
  return run(std::move(frame));
}

EvalResult Engine::backtrack(const Alt &disj) {
  if (is_empty(disj)) {
    EvalResult r;
    r.pattern_out = store_.make_var();
    if (options_.trace) {
      Frame frame;
      frame.pattern = disj.pattern;
      frame.disj = disj;
      emit(TraceKind::Backtrack, frame, depth_ + 1);
      emit(TraceKind::Result, frame, depth_ + 1, &r);
    }
    return r;
  }
  const Term goal = disj.goal;
  return eval({&goal, 1}, disj.pattern, empty_alt());
}

std::pair<Term, Term> Engine::run_reset(Term pattern, Term goal) {
  VarMap vars;
  const Term pattern_copy = copy_term(store_, pattern, vars);
  const Term goal_copy = copy_term(store_, goal, vars);
  Frame inner;
  inner.goals.push_back(goal_copy);
  inner.pattern = pattern_copy;
  inner.disj = empty_alt();
  const EvalResult result = run(std::move(inner));
  return {result.pattern_out, reify(result)};
}

Term Engine::reify(const EvalResult &r) {
  switch (r.kind) {
  case ResultKind::Failure:
    return store_.make_atom(atoms::failure);
  case ResultKind::Success:
    return store_.make_compound(atoms::success, {r.branch_pattern, r.branch_goal});
  case ResultKind::Shift:
    return store_.make_compound(atoms::shift,
                                {r.ball, r.continuation, r.branch_pattern, r.branch_goal});
  }
  return store_.make_atom(atoms::failure);
}

void Engine::tick() {
  if (++steps_ > options_.step_limit)
    throw EngineError(ErrorKind::Resource, "resource error: step limit of " +
                                               std::to_string(options_.step_limit) +
                                               " exceeded");
}

void Engine::emit(TraceKind kind, const Frame &frame, int depth, const EvalResult *result) {
  if (!options_.trace)
    return;
  TraceEvent ev;
  ev.kind = kind;
  ev.depth = depth;
  ev.pattern = frame.pattern;
  ev.disj = frame.disj;
  ev.result = result;
  if (kind == TraceKind::Step)
    ev.conj.assign(frame.goals.rbegin(), frame.goals.rend());
  options_.trace(*this, ev);
}

Term Engine::conj_term(std::span<const Term> stack) {
  std::vector<Term> items(stack.rbegin(), stack.rend());
  return store_.make_compound(atoms::conj, {store_.make_list(items)});
}

// Replaces the frame by its pending alternative. False when there is none.
bool Engine::resume(Frame &frame, int depth) {
  emit(TraceKind::Backtrack, frame, depth);
  if (is_empty(frame.disj))
    return false;
  frame.goals.clear();
  frame.goals.push_back(frame.disj.goal);
  frame.pattern = frame.disj.pattern;
  frame.disj = empty_alt();
  return true;
}

EvalResult Engine::finish(EvalResult result, const Frame &frame, int depth) {
  if (options_.check_freshness && result.kind != ResultKind::Failure)
    check_fresh(result);
  emit(TraceKind::Result, frame, depth, &result);
  return result;
}

void Engine::check_fresh(const EvalResult &r) const {
  ++g_freshness_checks;
  std::unordered_set<std::uint32_t> branch;
  collect_vars(store_, r.branch_pattern, branch);
  collect_vars(store_, r.branch_goal, branch);
  std::unordered_set<std::uint32_t> live;
  collect_vars(store_, r.pattern_out, live);
  if (r.kind == ResultKind::Shift) {
    collect_vars(store_, r.ball, live);
    collect_vars(store_, r.continuation, live);
  }
  for (auto v : branch)
    if (live.contains(v))
      throw std::logic_error("freshness violated: branch shares variable _G" + std::to_string(v) +
                             " with the live conjunction");
}

void Engine::push_disjunction(Frame &frame, Term left, Term right) {
  // The branch is alt(PatIn, conj([Right|Rest])), renamed apart as a whole.
  VarMap vars;
  const Term pattern = copy_term(store_, frame.pattern, vars);
  std::vector<Term> items;
  items.reserve(frame.goals.size() + 1);
  items.push_back(copy_term(store_, right, vars));
  for (auto it = frame.goals.rbegin(); it != frame.goals.rend(); ++it)
    items.push_back(copy_term(store_, *it, vars));
  const Term goal = store_.make_compound(atoms::conj, {store_.make_list(items)});
  frame.disj = disjoin(Alt{pattern, goal}, frame.disj);
  frame.goals.push_back(left);
}

bool Engine::if_then_else(Frame &frame, Term cond, Term then_goal, Term else_goal) {
  // The condition runs isolated on a copy of itself, like reset(C, C, R);
  // on success its instantiation is unified back and its alternatives are
  // dropped.
  VarMap vars;
  const Term copy = copy_term(store_, cond, vars);
  Frame inner;
  inner.goals.push_back(copy);
  inner.pattern = copy;
  inner.disj = empty_alt();
  const EvalResult r = run(std::move(inner));
  switch (r.kind) {
  case ResultKind::Failure:
    frame.goals.push_back(else_goal);
    return true;
  case ResultKind::Success:
    if (!unify(store_, cond, r.pattern_out))
      return false;
    frame.goals.push_back(then_goal);
    return true;
  case ResultKind::Shift:
    throw EngineError(ErrorKind::ShiftInCondition,
                      "shift/1 escaped the condition of an if-then-else: " +
                          format_term(store_, r.ball, {.quoted = true}));
  }
  return false;
}

StepOutcome Engine::builtin_step(Term goal, std::vector<Term> &goals) {
  const Builtins &b = builtins();
  const Term g = store_.deref(goal);
  const AtomId f = store_.name(g);
  const std::uint32_t n = store_.arity(g);
  auto ok = [](bool c) { return c ? StepOutcome::Continue : StepOutcome::Backtrack; };
  if (n == 0) {
    if (f == b.nl) {
      out() << '\n';
      return StepOutcome::Continue;
    }
    return StepOutcome::NotBuiltin;
  }
  const Term x = store_.arg(g, 0);
  if (n == 1) {
    if (f == b.write) {
      out() << format_term(store_, x);
      return StepOutcome::Continue;
    }
    if (f == atoms::call) {
      goals.push_back(x);
      return StepOutcome::Continue;
    }
    return StepOutcome::NotBuiltin;
  }
  if (n != 2)
    return StepOutcome::NotBuiltin;
  const Term y = store_.arg(g, 1);
  if (f == b.unify)
    return ok(unify(store_, x, y));
  if (f == b.not_unify) {
    // Trial unification in a scratch store so no binding leaks.
    Store scratch;
    VarMap vars;
    const Term sx = import_term(scratch, store_, x, vars);
    const Term sy = import_term(scratch, store_, y, vars);
    return ok(!unify(scratch, sx, sy));
  }
  if (f == b.identical)
    return ok(identical(store_, x, y));
  if (f == b.not_identical)
    return ok(!identical(store_, x, y));
  if (f == b.is)
    return ok(unify(store_, x, make_number(store_, eval_arith(store_, y))));
  if (f == b.lt || f == b.gt || f == b.le || f == b.ge || f == b.num_eq || f == b.num_ne) {
    const Ordering o = compare_numeric(eval_arith(store_, x), eval_arith(store_, y));
    if (f == b.lt)
      return ok(o == Ordering::Less);
    if (f == b.gt)
      return ok(o == Ordering::Greater);
    if (f == b.le)
      return ok(o != Ordering::Greater);
    if (f == b.ge)
      return ok(o != Ordering::Less);
    if (f == b.num_eq)
      return ok(o == Ordering::Equal);
    return ok(o != Ordering::Equal);
  }
  if (f == b.term_lt || f == b.term_gt || f == b.term_le || f == b.term_ge) {
    const Ordering o = compare_standard(store_, x, y);
    if (f == b.term_lt)
      return ok(o == Ordering::Less);
    if (f == b.term_gt)
      return ok(o == Ordering::Greater);
    if (f == b.term_le)
      return ok(o != Ordering::Greater);
    return ok(o != Ordering::Less);
  }
  if (f == b.copy_term)
    return ok(unify(store_, copy_term(store_, x), y));
  return StepOutcome::NotBuiltin;
}

EvalResult Engine::run(Frame frame) {
  struct Nesting {
    int &depth;
    explicit Nesting(int &d) : depth(d) {
      if (++depth > kMaxNesting) {
        --depth;
        throw EngineError(ErrorKind::Resource, "resource error: reset nesting too deep");
      }
    }
    ~Nesting() { --depth; }
  } nesting(depth_);
  const int depth = depth_;

  auto failure = [&] {
    EvalResult r;
    r.pattern_out = store_.make_var();
    return finish(r, frame, depth);
  };

  while (true) {
    tick();
    emit(TraceKind::Step, frame, depth);
    if (frame.goals.empty()) {
      EvalResult r;
      r.kind = ResultKind::Success;
      r.pattern_out = frame.pattern;
      r.branch_pattern = frame.disj.pattern;
      r.branch_goal = frame.disj.goal;
      return finish(r, frame, depth);
    }
    const Term goal = store_.deref(frame.goals.back());
    frame.goals.pop_back();

    bool backtrack = false;
    switch (store_.tag(goal)) {
    case Tag::Var:
      throw EngineError(ErrorKind::Instantiation, "instantiation error: unbound goal");
    case Tag::Int:
    case Tag::Float:
      throw EngineError(ErrorKind::Type,
                        "type error: callable expected, found " + format_term(store_, goal));
    default:
      break;
    }

    const AtomId f = store_.name(goal);
    const std::uint32_t n = store_.arity(goal);
    if (n == 0 && (f == atoms::true_ || f == atoms::cut)) {
      continue;
    } else if (n == 0 && (f == atoms::fail || f == atoms::false_)) {
      backtrack = true;
    } else if (n == 2 && f == atoms::comma) {
      frame.goals.push_back(store_.arg(goal, 1));
      frame.goals.push_back(store_.arg(goal, 0));
    } else if (n == 2 && f == atoms::semicolon) {
      const Term left = store_.deref(store_.arg(goal, 0));
      if (store_.is_functor(left, atoms::arrow, 2))
        backtrack = !if_then_else(frame, store_.arg(left, 0), store_.arg(left, 1),
                                  store_.arg(goal, 1));
      else
        push_disjunction(frame, left, store_.arg(goal, 1));
    } else if (n == 2 && f == atoms::arrow) {
      backtrack = !if_then_else(frame, store_.arg(goal, 0), store_.arg(goal, 1),
                                store_.make_atom(atoms::fail));
    } else if (n == 1 && f == atoms::conj) {
      const auto items = store_.list_items(store_.arg(goal, 0));
      if (!items)
        throw EngineError(ErrorKind::Type, "type error: conj/1 expects a proper list, found " +
                                               format_term(store_, goal));
      for (auto it = items->rbegin(); it != items->rend(); ++it)
        frame.goals.push_back(*it);
    } else if (n == 1 && f == atoms::shift) {
      EvalResult r;
      r.kind = ResultKind::Shift;
      r.pattern_out = frame.pattern;
      r.ball = store_.arg(goal, 0);
      r.continuation = conj_term(frame.goals);
      r.branch_pattern = frame.disj.pattern;
      r.branch_goal = frame.disj.goal;
      return finish(r, frame, depth);
    } else if (n == 3 && f == atoms::reset) {
      const Term pattern = store_.arg(goal, 0);
      const auto [inner_out, inner_result] = run_reset(pattern, store_.arg(goal, 1));
      // Meta-interpreted unifications: a mismatch backtracks.
      frame.goals.push_back(store_.make_compound(atoms::eq, {store_.arg(goal, 2), inner_result}));
      frame.goals.push_back(store_.make_compound(atoms::eq, {pattern, inner_out}));
    } else {
      switch (builtin_step(goal, frame.goals)) {
      case StepOutcome::Continue:
        break;
      case StepOutcome::Backtrack:
        backtrack = true;
        break;
      case StepOutcome::NotBuiltin: {
        if (options_.on_call)
          options_.on_call(store_, goal);
        const auto clauses = db_->matching_clauses(store_, goal);
        if (clauses.empty())
          backtrack = true;
        else
          frame.goals.push_back(disjoin_clauses(store_, goal, clauses));
        break;
      }
      }
    }

    if (backtrack && !resume(frame, depth))
      return failure();
  }
}

std::string format_trace_event(const Store &store, const TraceEvent &ev,
                               const std::unordered_map<std::uint32_t, std::string> *var_names) {
  const FormatOptions opts{.quoted = true, .var_names = var_names};
  std::string indent(static_cast<std::size_t>(ev.depth > 0 ? ev.depth - 1 : 0) * 2, ' ');
  switch (ev.kind) {
  case TraceKind::Step: {
    std::string conj = "[";
    for (std::size_t i = 0; i < ev.conj.size(); ++i) {
      if (i)
        conj += ',';
      conj += format_term(store, ev.conj[i], opts);
    }
    conj += ']';
    const Term alt = ev.disj.goal; // printed as alt(Pattern,Goal)
    return indent + format_term(store, ev.pattern, opts) + " | " + conj + " | alt(" +
           format_term(store, ev.disj.pattern, opts) + "," + format_term(store, alt, opts) + ")";
  }
  case TraceKind::Backtrack:
    return indent + "backtracking";
  case TraceKind::Result: {
    const EvalResult &r = *ev.result;
    std::string text = indent + "PatOut=" + format_term(store, r.pattern_out, opts) + ", Result=";
    switch (r.kind) {
    case ResultKind::Failure:
      return text + "failure";
    case ResultKind::Success:
      return text + "success(" + format_term(store, r.branch_pattern, opts) + "," +
             format_term(store, r.branch_goal, opts) + ")";
    case ResultKind::Shift:
      return text + "shift(" + format_term(store, r.ball, opts) + "," +
             format_term(store, r.continuation, opts) + "," +
             format_term(store, r.branch_pattern, opts) + "," +
             format_term(store, r.branch_goal, opts) + ")";
    }
  }
  }
  return indent;
}

} // namespace ddc

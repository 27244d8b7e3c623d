#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ddc/database.hpp"
#include "ddc/term.hpp"

#ifndef DDC_FRESHNESS_CHECKS
#define DDC_FRESHNESS_CHECKS 0
#endif

namespace ddc {

// Reified disjunctive continuation: the untried branches as one goal over
// their own renamed-apart copy of the pattern. alt(_, fail) is empty.
struct Alt {
  Term pattern;
  Term goal;
};

enum class ResultKind { Failure, Success, Shift };

// Outcome of evaluating a conjunction under a delimiter.
struct EvalResult {
  ResultKind kind = ResultKind::Failure;
  // The instantiated input pattern; a fresh variable on failure.
  Term pattern_out;
  // Shift only. Not renamed: both may share variables with pattern_out.
  Term ball;
  Term continuation; // conj(Goals)
  // Success and Shift: the disjunctive continuation, renamed apart.
  Term branch_pattern;
  Term branch_goal;
};

enum class TraceKind { Step, Backtrack, Result };

struct TraceEvent {
  TraceKind kind;
  int depth; // nesting of isolated evaluations (reset, if-then-else)
  Term pattern;
  std::vector<Term> conj; // Step: pending goals, first goal first
  Alt disj;
  const EvalResult *result = nullptr; // Result only
};

class Engine;

struct EngineOptions {
  std::uint64_t step_limit = 10'000'000;
  std::ostream *output = nullptr; // write/1 and nl/0; nullptr means std::cout
  bool check_freshness = DDC_FRESHNESS_CHECKS != 0;
  std::function<void(const Engine &, const TraceEvent &)> trace;
  // Called with every user-predicate call before its clauses are fetched.
  std::function<void(const Store &, Term)> on_call;
};

enum class StepOutcome { Continue, Backtrack, NotBuiltin };

// Native evaluator for conjunctions under disjunctive delimited control.
//
// Evaluation is deterministic: one call yields exactly one EvalResult and the
// engine never backtracks on its own. Alternatives are reified as an Alt that
// is renamed apart from the live conjunction, so the store is never undone.
class Engine {
public:
  explicit Engine(std::shared_ptr<const Database> db, EngineOptions options = {});

  Store &store() { return store_; }
  const Store &store() const { return store_; }
  const Database &database() const { return *db_; }
  EngineOptions &options() { return options_; }

  Alt empty_alt();
  bool is_empty(const Alt &alt) const;
  Alt disjoin(const Alt &first, const Alt &second);

  // Evaluates the goals left to right with pattern `pattern` and pending
  // alternatives `disj`.
  EvalResult eval(std::span<const Term> conj, Term pattern, const Alt &disj);
  // Resumes the alternatives: failure if empty (traced as a backtrack and a
  // failure result), else evaluates the branch.
  EvalResult backtrack(const Alt &disj);
  // Isolated evaluation of a renamed copy of (pattern, goal) under an empty
  // Alt. Returns the inner output pattern and the result as a term.
  std::pair<Term, Term> run_reset(Term pattern, Term goal);
  // failure | success(BranchPattern, Branch) | shift(Ball, Cont, BranchPattern, Branch)
  Term reify(const EvalResult &result);

  // Executes a builtin goal against the pending-goal stack (top at back).
  StepOutcome builtin_step(Term goal, std::vector<Term> &goals);

  std::uint64_t steps() const { return steps_; }
  void reset_steps() { steps_ = 0; }

  // Process-wide count of freshness assertions evaluated (test builds).
  static std::uint64_t freshness_checks();

private:
  struct Frame {
    std::vector<Term> goals; // top of stack = next goal
    Term pattern;
    Alt disj;
  };

  EvalResult run(Frame frame);
  bool resume(Frame &frame, int depth);
  EvalResult finish(EvalResult result, const Frame &frame, int depth);
  void push_disjunction(Frame &frame, Term left, Term right);
  bool if_then_else(Frame &frame, Term cond, Term then_goal, Term else_goal);
  Term conj_term(std::span<const Term> stack_top_last);
  void tick();
  void emit(TraceKind kind, const Frame &frame, int depth, const EvalResult *result = nullptr);
  void check_fresh(const EvalResult &result) const;
  std::ostream &out();

  std::shared_ptr<const Database> db_;
  EngineOptions options_;
  Store store_;
  std::uint64_t steps_ = 0;
  int depth_ = 0;
};

// One-line rendering of a trace event: "PatIn | Conj | Disj" for steps.
// Variables listed in `var_names` print under those names.
std::string format_trace_event(
    const Store &store, const TraceEvent &event,
    const std::unordered_map<std::uint32_t, std::string> *var_names = nullptr);

} // namespace ddc

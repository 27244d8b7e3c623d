#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ddc/engine.hpp"
#include "ddc/reader.hpp"

namespace ddc {

// Bindings of the query's named variables for one solution. The terms live
// in the engine's store and are never bound afterwards.
struct Answer {
  std::vector<std::pair<std::string, Term>> bindings;
};

// Lazily enumerates the answers of a goal: evaluate, emit the instantiated
// pattern, then evaluate the captured branch, until it fails.
class Solver {
public:
  Solver(Engine &engine, Term goal, VarNames names);
  Solver(Engine &engine, const Query &query) : Solver(engine, query.goal, query.var_names) {}

  // The next answer, or nullopt once exhausted. Throws EngineError; an
  // uncaught shift/1 raises ErrorKind::UncaughtShift. After a throw the
  // solver is exhausted.
  std::optional<Answer> next();

  // The query's names for the variables of the goal copy under evaluation,
  // keyed by variable id, for rendering traces.
  const std::unordered_map<std::uint32_t, std::string> &copy_names() const { return copy_names_; }

private:
  Answer extract(Term pattern_out);

  Engine &engine_;
  Term goal_;
  VarNames names_;
  Term copy_;
  std::unordered_map<std::uint32_t, std::string> copy_names_;
  bool started_ = false;
  bool done_ = false;
  Alt branch_{};
};

std::vector<Answer> solve_all(Engine &engine, const Query &query,
                              std::size_t max_answers = static_cast<std::size_t>(-1));
std::optional<Answer> solve_first(Engine &engine, const Query &query);

// Renders `X = t` pairs separated by ", ", naming unbound variables after the query variable
// they are bound to where possible. An answer without visible bindings
// renders as "true".
std::string format_answer(const Store &store, const Answer &answer);

// A database plus an engine over it, for the common load-then-query flow.
class Session {
public:
  explicit Session(EngineOptions options = {});

  // Loads library files by name (with dependencies) or program text. Must
  // happen before the first query.
  void load_libraries(const std::vector<std::string> &names);
  void consult_text(std::string_view text, std::string_view origin = {});
  void consult_file(const std::string &path);

  Engine &engine();
  Query parse(std::string_view query_text) { return parse_query(query_text, engine().store()); }
  std::vector<Answer> solve(std::string_view query_text,
                            std::size_t max_answers = static_cast<std::size_t>(-1));
  // Answers rendered with format_answer.
  std::vector<std::string> answers(std::string_view query_text,
                                   std::size_t max_answers = static_cast<std::size_t>(-1));

  std::shared_ptr<Database> database() { return db_; }

private:
  std::shared_ptr<Database> db_;
  EngineOptions options_;
  std::unique_ptr<Engine> engine_;
};

} // namespace ddc

#include "ddc/toplevel.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "ddc/errors.hpp"
#include "ddc/format.hpp"
#include "ddc/stdlib.hpp"

namespace ddc {

Solver::Solver(Engine &engine, Term goal, VarNames names)
    : engine_(engine), goal_(goal), names_(std::move(names)) {
  Store &s = engine_.store();
  VarMap vars;
  copy_ = copy_term(s, goal_, vars);
  for (const auto &[name, var] : names_)
    if (auto it = vars.find(s.deref(var).index); it != vars.end())
      copy_names_.emplace(s.deref(it->second).index, name);
}

std::optional<Answer> Solver::next() {
  if (done_)
    return std::nullopt;
  try {
    EvalResult r;
    if (!started_) {
      started_ = true;
      engine_.reset_steps();
      r = engine_.eval({&copy_, 1}, copy_, engine_.empty_alt());
    } else {
      r = engine_.backtrack(branch_);
    }
    switch (r.kind) {
    case ResultKind::Failure:
      done_ = true;
      return std::nullopt;
    case ResultKind::Shift:
      done_ = true;
      throw EngineError(ErrorKind::UncaughtShift, "toplevel: uncaught shift/1.");
    case ResultKind::Success:
      branch_ = Alt{r.branch_pattern, r.branch_goal};
      if (engine_.is_empty(branch_))
        done_ = true;
      return extract(r.pattern_out);
    }
  } catch (...) {
    done_ = true;
    throw;
  }
  return std::nullopt;
}

Answer Solver::extract(Term pattern_out) {
  // Goal = PatOut, on a fresh copy of the goal so the query stays reusable.
  Store &s = engine_.store();
  VarMap vars;
  const Term goal = copy_term(s, goal_, vars);
  Answer answer;
  if (!unify(s, goal, pattern_out))
    return answer;
  for (const auto &[name, var] : names_) {
    const Term v = s.deref(var);
    auto it = vars.find(v.index);
    answer.bindings.emplace_back(name, it != vars.end() ? s.deref(it->second) : v);
  }
  return answer;
}

std::vector<Answer> solve_all(Engine &engine, const Query &query, std::size_t max_answers) {
  Solver solver(engine, query);
  std::vector<Answer> out;
  while (out.size() < max_answers) {
    auto a = solver.next();
    if (!a)
      break;
    out.push_back(std::move(*a));
  }
  return out;
}

std::optional<Answer> solve_first(Engine &engine, const Query &query) {
  Solver solver(engine, query);
  return solver.next();
}

std::string format_answer(const Store &store, const Answer &answer) {
  std::unordered_map<std::uint32_t, std::string> names;
  for (const auto &[name, value] : answer.bindings) {
    const Term v = store.deref(value);
    if (store.is_var(v))
      names[v.index] = name;
  }
  const FormatOptions opts{.quoted = true, .var_names = &names, .max_priority = 699};
  std::string out;
  for (const auto &[name, value] : answer.bindings) {
    const Term v = store.deref(value);
    if (store.is_var(v) && names.at(v.index) == name)
      continue;
    if (!out.empty())
      out += ", ";
    out += name + " = " + format_term(store, v, opts);
  }
  return out.empty() ? "true" : out;
}

Session::Session(EngineOptions options)
    : db_(std::make_shared<Database>()), options_(std::move(options)) {}

void Session::load_libraries(const std::vector<std::string> &names) {
  ddc::load_libraries(*db_, names);
}

void Session::consult_text(std::string_view text, std::string_view origin) {
  db_->consult_text(text, origin);
}

void Session::consult_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw LoadError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  db_->consult_text(buf.str(), path);
}

Engine &Session::engine() {
  if (!engine_)
    engine_ = std::make_unique<Engine>(db_, options_);
  return *engine_;
}

std::vector<Answer> Session::solve(std::string_view query_text, std::size_t max_answers) {
  return solve_all(engine(), parse(query_text), max_answers);
}

std::vector<std::string> Session::answers(std::string_view query_text, std::size_t max_answers) {
  std::vector<std::string> out;
  for (const Answer &a : solve(query_text, max_answers))
    out.push_back(format_answer(engine().store(), a));
  return out;
}

} // namespace ddc

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ddc/database.hpp"
#include "ddc/reader.hpp"
#include "ddc/term.hpp"
#include "ddc/toplevel.hpp"

namespace ddc {

enum class CutMode { Transparent, Real };

struct OracleConfig {
  std::uint64_t depth_limit = 1'000'000; // resolution steps
  std::size_t answer_cap = 100'000;
  CutMode cut = CutMode::Transparent;
  // Stop the search, setting OracleResult::cyclic, instead of creating a
  // cyclic binding.
  bool detect_cycles = false;
  std::ostream *output = nullptr; // write/1 and nl/0; nullptr means std::cout
};

struct OracleResult {
  std::vector<Answer> answers;
  bool exhausted = false; // the search space was fully explored
  bool truncated = false; // the step limit or answer cap stopped the search
  bool cyclic = false;    // detect_cycles stopped the search
};

// Reference SLD resolution: depth-first, clauses in source order, bindings
// undone through a trail on backtracking. No delimited control: shift/1 and
// reset/3 raise a type error. Answers are snapshots in `store` that later
// backtracking does not touch.
OracleResult sld_solve(Store &store, const Database &db, Term goal, const VarNames &names,
                       const OracleConfig &config = {});

// Parses `query_text` into `store` and solves it.
OracleResult sld_solve(Store &store, const Database &db, std::string_view query_text,
                       const OracleConfig &config = {});

// Same length and pairwise variant answers, binding by binding, with one
// renaming per answer.
bool answers_equiv(const Store &sa, const std::vector<Answer> &a, const Store &sb,
                   const std::vector<Answer> &b);

struct GenParams {
  int max_predicates = 6;
  int max_arity = 2;
  int max_clauses = 4;
  int max_body_goals = 3;
  int max_term_depth = 2;
  // Candidates the oracle cannot finish acyclically within these bounds are
  // redrawn from the same random stream.
  std::uint64_t max_steps = 20'000;
  std::size_t max_answers = 200;
};

struct GeneratedProgram {
  std::string program;
  std::string query;
};

// Random definite program without shift/reset. Predicate i only calls
// predicates j > i, so every derivation terminates. Programs whose search
// would build a cyclic term or exceed the bounds in `params` are rejected and
// redrawn. Deterministic in `seed`.
GeneratedProgram gen_program(std::uint64_t seed, const GenParams &params = {});

} // namespace ddc

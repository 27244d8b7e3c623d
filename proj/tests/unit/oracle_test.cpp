#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "ddc/errors.hpp"
#include "ddc/oracle.hpp"
#include "ddc/toplevel.hpp"
#include "support.hpp"

using namespace ddc;
using ddc::testing::oracle_answers;
using Strings = std::vector<std::string>;

namespace {

OracleResult solve(Store &s, const std::string &program, const std::string &query,
                   OracleConfig cfg = {}) {
  Database db;
  db.consult_text(program);
  return sld_solve(s, db, query, cfg);
}

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("sld_solve examples") {
  CHECK(oracle_answers("p(1). p(2).", "p(X)") == Strings{"X = 1", "X = 2"});
  const std::string cut_prog = "q(1). q(2). r(a). r(b).\np(X,Y) :- q(X), !, r(Y).\n";
  CHECK(oracle_answers(cut_prog, "p(X,Y)").size() == 4);
  CHECK(oracle_answers(cut_prog, "p(X,Y)", true) == Strings{"X = 1, Y = a", "X = 1, Y = b"});
  Store s;
  OracleResult empty = solve(s, "", "p(X)");
  CHECK(empty.answers.empty());
  CHECK(empty.exhausted);
  CHECK_FALSE(empty.truncated);
}

TEST_CASE("control and builtins") {
  CHECK(oracle_answers("", "(X = 1 ; X = 2), (true ; X = 3)") == Strings{"X = 1", "X = 2"});
  CHECK(oracle_answers("", "(X = 1 ; X = 2), (true ; Y = 3)") ==
        Strings{"X = 1", "X = 1, Y = 3", "X = 2", "X = 2, Y = 3"});
  CHECK(oracle_answers("", "conj([X = 1, Y is X + 1])") == Strings{"X = 1, Y = 2"});
  CHECK(oracle_answers("", "( (X = 1 ; X = 2) -> Y = a ; Y = b )") ==
        Strings{"X = 1, Y = a"});
  CHECK(oracle_answers("", "( fail -> Y = a ; Y = b )") == Strings{"Y = b"});
  CHECK(oracle_answers("", "call((X = 1 ; X = 2))") == Strings{"X = 1", "X = 2"});
  // cut inside call/1 is local to the call
  CHECK(oracle_answers("", "(X = 1 ; X = 2), call((!, true))", true) ==
        Strings{"X = 1", "X = 2"});
  CHECK(oracle_answers("", "(X = 1 ; X = 2), !", true) == Strings{"X = 1"});
  CHECK(oracle_answers("", "X \\== Y, 1-nil @< 10-nil, 3 >= 2") == Strings{"true"});
  CHECK(oracle_answers("", "copy_term(f(A,A), C), C = f(1,B)") ==
        Strings{"C = f(1,1), B = 1"});
  Store s;
  CHECK_THROWS_AS(solve(s, "", "shift(a)"), EngineError);
  CHECK_THROWS_AS(solve(s, "", "reset(P, true, R)"), EngineError);
}

TEST_CASE("limits are reported") {
  Store s;
  OracleResult loop = solve(s, "loop :- loop.", "loop", {.depth_limit = 500});
  CHECK(loop.truncated);
  CHECK_FALSE(loop.exhausted);
  OracleResult capped = solve(s, "n(0). n(1). n(2).", "n(X)", {.answer_cap = 2});
  CHECK(capped.answers.size() == 2);
  CHECK(capped.truncated);
  OracleResult cyc = solve(s, "", "X = f(X)", {.detect_cycles = true});
  CHECK(cyc.cyclic);
  CHECK(cyc.answers.empty());
}

TEST_CASE("answers_equiv examples") {
  Store a, b;
  auto ans = [](Store &s, const char *text) {
    Query q = parse_query(text, s);
    Answer out;
    Term t = s.deref(q.goal);
    while (s.is_functor(t, atoms::comma, 2)) {
      Term eq = s.deref(s.arg(t, 0));
      out.bindings.push_back({"X", s.arg(eq, 1)});
      t = s.deref(s.arg(t, 1));
    }
    out.bindings.push_back({"X", s.arg(t, 1)});
    return out;
  };
  CHECK(answers_equiv(a, {ans(a, "X = 1")}, b, {ans(b, "Y = 1")}));
  CHECK(answers_equiv(a, {ans(a, "X = Z")}, b, {ans(b, "X = W")}));
  CHECK_FALSE(answers_equiv(a, {ans(a, "X = 1"), ans(a, "X = 2")}, b,
                            {ans(b, "X = 2"), ans(b, "X = 1")}));
  CHECK_FALSE(answers_equiv(a, {ans(a, "X = 1")}, b, {}));
  CHECK(answers_equiv(a, {ans(a, "X = f(Z, Z)")}, b, {ans(b, "X = f(W, W)")}));
  CHECK_FALSE(answers_equiv(a, {ans(a, "X = f(Z, Z)")}, b, {ans(b, "X = f(V, W)")}));
  CHECK_FALSE(answers_equiv(a, {ans(a, "X = 1")}, b, {ans(b, "X = 1.0")}));
}

TEST_CASE("generator") {
  GeneratedProgram g0 = gen_program(0);
  GeneratedProgram again = gen_program(0);
  CHECK(g0.program == again.program);
  CHECK(g0.query == again.query);
  std::ifstream in(std::string(DDC_SOURCE_DIR) + "/tests/golden/gen_seed0.pl");
  REQUIRE(in);
  std::ostringstream golden;
  golden << in.rdbuf();
  CHECK(golden.str() == g0.program + "% query: " + g0.query + "\n");

  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    GeneratedProgram g = gen_program(seed);
    INFO("seed " << seed);
    CHECK(g.program.find("shift") == std::string::npos);
    CHECK(g.program.find("reset") == std::string::npos);
    Store s;
    OracleResult r = solve(s, g.program, g.query, {.depth_limit = 20000, .detect_cycles = true});
    CHECK(r.exhausted);
    CHECK_FALSE(r.cyclic);
  }
}

TEST_CASE("engine and oracle agree on generated programs") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GeneratedProgram g = gen_program(seed);
    INFO("seed " << seed);
    Session session;
    session.consult_text(g.program);
    auto engine_answers = session.solve(g.query);
    Store s;
    OracleResult r = solve(s, g.program, g.query);
    CHECK(answers_equiv(session.engine().store(), engine_answers, s, r.answers));
  }
}

} // TEST_SUITE

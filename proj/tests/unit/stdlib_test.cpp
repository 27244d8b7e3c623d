#include <string>
#include <vector>

#include "doctest.h"

#include "ddc/errors.hpp"
#include "ddc/stdlib.hpp"
#include "ddc/toplevel.hpp"
#include "support.hpp"

using namespace ddc;
using ddc::testing::answers;
using ddc::testing::output_of;
using Strings = std::vector<std::string>;

TEST_SUITE("stdlib") {

TEST_CASE("every library loads into a fresh database") {
  for (const LibraryFile &lib : libraries()) {
    INFO(lib.name);
    Database db;
    CHECK_NOTHROW(load_libraries(db, {lib.name}));
    for (const std::string &pred : lib.provides) {
      const auto slash = pred.rfind('/');
      const PredicateKey key{intern(pred.substr(0, slash)),
                             static_cast<std::uint32_t>(std::stoul(pred.substr(slash + 1)))};
      CHECK_MESSAGE(db.defines(key), pred);
    }
  }
  Database all;
  CHECK_NOTHROW(load_libraries(all, {"all"}));
  CHECK(libraries().size() == 10);
}

TEST_CASE("library resolution") {
  auto names = [](const std::vector<std::string> &req) {
    Strings out;
    for (const LibraryFile *lib : resolve_libraries(req))
      out.push_back(lib->name);
    return out;
  };
  auto nn = names({"nn"});
  CHECK(nn.back() == "nn");
  CHECK(std::find(nn.begin(), nn.end(), "bb") != nn.end());
  auto twice = names({"prism", "problog", "prism"});
  CHECK(std::count(twice.begin(), twice.end(), "prism") == 1);
  CHECK(names({"all"}).size() == libraries().size());
  CHECK_THROWS_AS(resolve_libraries({"nope"}), LoadError);
  CHECK(find_library("findall") != nullptr);
  CHECK(find_library("nope") == nullptr);
}

TEST_CASE("findall") {
  CHECK(answers({"findall"}, "", "findall(X, (X=1;X=2;X=3), L), X = X")
            .at(0)
            .ends_with("L = [1,2,3]"));
  CHECK(answers({"findall"}, "", "findall(X, fail, L)") == Strings{"L = []"});
  auto pairs = answers({"findall"}, "", "findall(X-Y, (X=a,(Y=1;Y=2)), L)");
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].find("L = [a-1,a-2]") != std::string::npos);
}

TEST_CASE("cut") {
  const std::string prog = "q(1). q(2). r(a). r(b).\n"
                           "p(X,Y) :- scope((q(X), cut, r(Y))).\n";
  CHECK(answers({"cut"}, prog, "p(X,Y)") == Strings{"X = 1, Y = a", "X = 1, Y = b"});
  CHECK(answers({"cut"}, "", "scope(fail)").empty());
  CHECK(answers({"cut"}, "", "scope((X=1;X=2))") == Strings{"X = 1", "X = 2"});
  CHECK_THROWS_AS(answers({"cut"}, "", "cut"), EngineError);
}

TEST_CASE("branch and bound") {
  CHECK(answers({"bb"}, "", "bb(10-nil, D, (D=3-nil;D=1-nil;D=7-nil), Min)")
            .at(0)
            .ends_with("Min = 1-nil"));
  CHECK(answers({"bb"}, "", "bb(5-nil, D, fail, Min)").at(0).ends_with("Min = 5-nil"));
  CHECK(answers({"bb"}, "", "bb(2-nil, D, (bound(9-nil), D=0-nil ; D=1-nil), Min)")
            .at(0)
            .ends_with("Min = 1-nil"));
}

TEST_CASE("nearest neighbour") {
  CHECK(answers({"nn"}, "",
                std::string("run_nn((1,0.1),") + ddc::testing::example_tree() + ",(NX,NY))") ==
        Strings{"NX = 0.5, NY = 0.5"});
  CHECK(answers({"nn"}, "", "run_nn((0,0),xsplit((0,0),leaf,leaf),P)") == Strings{"P = (0,0)"});
}

TEST_CASE("prism") {
  const std::string fair = "values_x(coin1, [h,t], [0.5,0.5]).\n"
                           "values_x(coin2, [h,t], [0.5,0.5]).\n"
                           "twoheads :- msw(coin1, h), msw(coin2, h).\n"
                           "onehead :- msw(coin1, V), (V = t, msw(coin2, h) ; V = h).\n";
  CHECK(output_of({"prism"}, fair, "prob(twoheads)") == "twoheads: 0.25\n");
  CHECK(output_of({"prism"}, fair, "prob(onehead)") == "onehead: 0.75\n");
  const std::string biased = "values_x(coin1, [h,t], [0.5,0.5]).\n"
                             "values_x(coin2, [h,t], [0.4,0.6]).\n"
                             "twoheads :- msw(coin1, h), msw(coin2, h).\n"
                             "onehead :- msw(coin1, V), (V = t, msw(coin2, h) ; V = h).\n";
  CHECK(output_of({"prism"}, biased, "prob(twoheads)") == "twoheads: 0.2\n");
  CHECK(output_of({"prism"}, biased, "prob(onehead)") == "onehead: 0.7\n");
  CHECK(answers({"prism"}, "", "prob(fail, P)") == Strings{"P = 0.0"});
  CHECK(answers({"prism"}, fair, "prob(msw(nope, _), P)").empty());
}

TEST_CASE("problog") {
  const std::string facts = "values_x(f1, [t,f], [0.5,0.5]).\nf1 :- fact(f1).\n"
                            "values_x(f2, [t,f], [0.5,0.5]).\nf2 :- fact(f2).\n"
                            "p :- f1.\np :- f2.\n";
  CHECK(output_of({"problog"}, facts, "prob(problog((f1,f1)))") == "problog((f1,f1)): 0.5\n");
  CHECK(output_of({"problog"}, facts, "prob(problog(p))") == "problog(p): 0.75\n");
  CHECK(answers({"problog"}, facts, "prob(problog(fail), P)") == Strings{"P = 0.0"});
}

TEST_CASE("engines") {
  auto a = answers({"engines"}, "",
                   "engines((new_engine(X,(X=1;X=2),E), get(E,A1), get(E,A2), get(E,A3)))");
  REQUIRE(a.size() == 1);
  CHECK(a[0].find("A1 = the(1), A2 = the(2), A3 = no") != std::string::npos);
  auto r = answers({"engines"}, "", "engines((new_engine(X,(return(7),fail),E), get(E,A)))");
  REQUIRE(r.size() == 1);
  CHECK(r[0].find("A = the(7)") != std::string::npos);
  auto done = answers({"engines"}, "",
                      "engines((new_engine(X,fail,E), get(E,A1), get(E,A2)))");
  REQUIRE(done.size() == 1);
  CHECK(done[0].find("A1 = no, A2 = no") != std::string::npos);
  CHECK(answers({"engines"}, "", "engines(get(7, A))").empty());
}

TEST_CASE("negation") {
  CHECK(answers({"not"}, "", "not(fail)") == Strings{"true"});
  CHECK(answers({"not"}, "", "not(a = a)").empty());
  CHECK(answers({"not", "prelude"}, "", "not(member(3, [1,2]))") == Strings{"true"});
  CHECK(answers({"not"}, "", "not(X = 1), X = 2").empty());
  CHECK(answers({"not"}, "", "not(not(X = 1))") == Strings{"true"});
}

TEST_CASE("nd_reset") {
  CHECK(answers({"nd_reset"}, "", "nd_reset((X=a;X=b), Ball, Cont)") ==
        Strings{"X = a, Cont = 0", "X = b, Cont = 0"});
  auto s = answers({"nd_reset"}, "", "nd_reset(shift(t), Ball, Cont)");
  REQUIRE(s.size() == 1);
  CHECK(s[0] == "Ball = t, Cont = conj([])");
  CHECK(answers({"nd_reset"}, "", "nd_reset(fail, _, _)").empty());
}

TEST_CASE("prelude") {
  CHECK(answers({"prelude"}, "", "member(X, [1,2])") == Strings{"X = 1", "X = 2"});
  CHECK(answers({"prelude"}, "", "length([a,b], N)") == Strings{"N = 2"});
  CHECK(answers({"prelude"}, "", "append([1], [2], L)") == Strings{"L = [1,2]"});
  CHECK(answers({"prelude"}, "", "toplevel((X = 1 ; X = 2))") == Strings{"X = 1", "X = 2"});
  std::string out;
  CHECK(answers({"prelude"}, "p(1). p(2) :- shift(2).", "toplevel(p(X))", &out) ==
        Strings{"X = 1"});
  CHECK(out == "toplevel: uncaught shift/1.\n");
}

} // TEST_SUITE

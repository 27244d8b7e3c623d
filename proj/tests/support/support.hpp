#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ddc/oracle.hpp"
#include "ddc/toplevel.hpp"

namespace ddc::testing {

// Runs `query` against a fresh session with the given libraries and program
// text, returning the rendered answers.
std::vector<std::string> answers(const std::vector<std::string> &libs, const std::string &program,
                                 const std::string &query, std::string *output = nullptr);

// Text written by write/1 while enumerating every answer of `query`.
std::string output_of(const std::vector<std::string> &libs, const std::string &program,
                      const std::string &query);

// Rendered oracle answers (transparent cut unless `real_cut`).
std::vector<std::string> oracle_answers(const std::string &program, const std::string &query,
                                        bool real_cut = false);

// ---- nearest neighbour ----

struct Point {
  double x;
  double y;
};

struct BspInstance {
  std::vector<Point> points;
  Point target;
  std::string tree; // object-language term
};

// Points are inserted in order; depth d splits on x when d is even. The
// first subtree holds the points with a smaller splitting coordinate.
std::string bsp_tree(const std::vector<Point> &points);

// n random points and a target with coordinates in [-1,1], drawn until the
// nearest point is unique by a margin of 1e-9 in squared distance.
BspInstance random_bsp(std::mt19937_64 &rng, int n);

// Linear-scan argmin of the squared distance, computed as the library does.
Point nearest_linear(const std::vector<Point> &points, Point target);

inline const char *example_tree() {
  return "xsplit((0,0),ysplit((-0.5,0),leaf,xsplit((-0.75,-0.5),leaf,leaf)),"
         "ysplit((0.5,0.5),leaf,leaf))";
}
inline const char *example_shaded() { return "ysplit((-0.5,0),leaf,xsplit((-0.75,-0.5),leaf,leaf))"; }

// ---- probabilistic programs ----

struct Switch {
  std::string name;
  std::vector<std::string> values;
  std::vector<double> probs;
};

// Random program over a few switches whose disjunctions are exclusive by
// construction: every disjunct tests a different value of one msw/2 outcome.
struct PrismProgram {
  std::vector<Switch> switches;
  std::string text;   // values_x facts plus the clause for `goal`
  double world_probability = 0.0; // success probability by world enumeration
  int msw_calls = 0;
};

PrismProgram random_prism(std::mt19937_64 &rng, int max_msw_calls);

// ---- cut corpus ----

struct CutCase {
  std::string program; // with !/0
  std::string query;
};

const std::vector<CutCase> &cut_corpus();

// Rewrites every predicate whose clauses contain !/0 into a scope/1 wrapper
// around renamed clauses in which !/0 became cut/0.
std::string translate_cut(const std::string &program);

} // namespace ddc::testing

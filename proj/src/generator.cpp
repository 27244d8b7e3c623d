#include <random>
#include <string>
#include <vector>

#include "ddc/oracle.hpp"

#include <sstream>

namespace ddc {

namespace {

class Generator {
public:
  Generator(std::uint64_t seed, const GenParams &p) : rng_(seed), p_(p) {}

  GeneratedProgram run() {
    while (true) {
      GeneratedProgram candidate = draw();
      if (acceptable(candidate))
        return candidate;
    }
  }

private:
  bool acceptable(const GeneratedProgram &gp) const {
    Database db;
    db.consult_text(gp.program);
    Store store;
    std::ostringstream sink;
    OracleConfig cfg;
    cfg.depth_limit = p_.max_steps;
    cfg.answer_cap = p_.max_answers + 1;
    cfg.detect_cycles = true;
    cfg.output = &sink;
    const OracleResult r = sld_solve(store, db, gp.query, cfg);
    return r.exhausted && !r.cyclic && r.answers.size() <= p_.max_answers;
  }

  GeneratedProgram draw() {
    arity_.clear();
    const int preds = 1 + pick(p_.max_predicates);
    for (int i = 0; i < preds; ++i)
      arity_.push_back(pick(p_.max_arity + 1));
    GeneratedProgram out;
    for (int i = 0; i < preds; ++i) {
      const int clauses = 1 + pick(p_.max_clauses);
      for (int c = 0; c < clauses; ++c)
        out.program += clause(i);
    }
    out.query = call(0, {"A", "B"});
    return out;
  }

  int pick(int n) { return n <= 0 ? 0 : static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

  std::string var(const std::vector<std::string> &vars) { return vars[pick(static_cast<int>(vars.size()))]; }

  std::string term(const std::vector<std::string> &vars, int depth) {
    static const char *constants[] = {"a", "b", "c", "0", "1", "2", "[]"};
    switch (pick(depth > 0 ? 5 : 3)) {
    case 0:
    case 1:
      return var(vars);
    case 2:
      return constants[pick(7)];
    case 3:
      return "f(" + term(vars, depth - 1) + ")";
    default:
      return "[" + term(vars, depth - 1) + "|" + term(vars, depth - 1) + "]";
    }
  }

  std::string call(int pred, const std::vector<std::string> &vars) {
    std::string s = "p" + std::to_string(pred);
    if (arity_[pred] == 0)
      return s;
    s += "(";
    for (int i = 0; i < arity_[pred]; ++i) {
      if (i)
        s += ",";
      s += term(vars, p_.max_term_depth - 1);
    }
    return s + ")";
  }

  std::string goal(int pred, const std::vector<std::string> &vars, int nesting) {
    const bool can_call = pred + 1 < static_cast<int>(arity_.size());
    const int kind = pick(20);
    if (kind < 8 && can_call)
      return call(pred + 1 + pick(static_cast<int>(arity_.size()) - pred - 1), vars);
    if (kind < 14) {
      const std::string lhs = var(vars);
      std::vector<std::string> others;
      for (const std::string &v : vars)
        if (v != lhs)
          others.push_back(v);
      return lhs + " = " + term(others, p_.max_term_depth);
    }
    if (kind < 18 && nesting < 2)
      return "(" + body(pred, vars, nesting + 1) + " ; " + body(pred, vars, nesting + 1) + ")";
    return kind == 19 ? "fail" : "true";
  }

  std::string body(int pred, const std::vector<std::string> &vars, int nesting) {
    const int n = 1 + pick(p_.max_body_goals);
    std::string s;
    for (int i = 0; i < n; ++i) {
      if (i)
        s += ", ";
      s += goal(pred, vars, nesting);
    }
    return s;
  }

  std::string clause(int pred) {
    const std::vector<std::string> vars = {"X", "Y", "Z"};
    std::string head = "p" + std::to_string(pred);
    if (arity_[pred] > 0) {
      head += "(";
      for (int i = 0; i < arity_[pred]; ++i) {
        if (i)
          head += ",";
        head += term(vars, 1);
      }
      head += ")";
    }
    if (pick(3) == 0)
      return head + ".\n";
    return head + " :- " + body(pred, vars, 0) + ".\n";
  }

  std::mt19937_64 rng_;
  GenParams p_;
  std::vector<int> arity_;
};

} // namespace

GeneratedProgram gen_program(std::uint64_t seed, const GenParams &params) {
  return Generator(seed, params).run();
}

} // namespace ddc

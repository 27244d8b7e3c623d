#include "support.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <set>
#include <sstream>

#include "ddc/format.hpp"
#include "ddc/reader.hpp"

namespace ddc::testing {

std::vector<std::string> answers(const std::vector<std::string> &libs, const std::string &program,
                                 const std::string &query, std::string *output) {
  std::ostringstream out;
  EngineOptions opts;
  opts.output = &out;
  Session session(opts);
  if (!libs.empty())
    session.load_libraries(libs);
  session.consult_text(program, "test.pl");
  auto result = session.answers(query);
  if (output)
    *output = out.str();
  return result;
}

std::string output_of(const std::vector<std::string> &libs, const std::string &program,
                      const std::string &query) {
  std::string out;
  answers(libs, program, query, &out);
  return out;
}

std::vector<std::string> oracle_answers(const std::string &program, const std::string &query,
                                        bool real_cut) {
  Database db;
  db.consult_text(program, "test.pl");
  Store store;
  OracleConfig cfg;
  cfg.cut = real_cut ? CutMode::Real : CutMode::Transparent;
  const OracleResult r = sld_solve(store, db, query, cfg);
  std::vector<std::string> out;
  for (const Answer &a : r.answers)
    out.push_back(format_answer(store, a));
  return out;
}

// ---- nearest neighbour ----

namespace {

struct BspNode {
  Point p;
  std::unique_ptr<BspNode> low;
  std::unique_ptr<BspNode> high;
};

void insert(std::unique_ptr<BspNode> &node, Point p, int depth) {
  if (!node) {
    node = std::make_unique<BspNode>(BspNode{p, nullptr, nullptr});
    return;
  }
  const bool on_x = depth % 2 == 0;
  const double key = on_x ? p.x : p.y;
  const double split = on_x ? node->p.x : node->p.y;
  insert(key < split ? node->low : node->high, p, depth + 1);
}

std::string render(const std::unique_ptr<BspNode> &node, int depth) {
  if (!node)
    return "leaf";
  return std::string(depth % 2 == 0 ? "xsplit((" : "ysplit((") + format_float(node->p.x) + "," +
         format_float(node->p.y) + ")," + render(node->low, depth + 1) + "," +
         render(node->high, depth + 1) + ")";
}

double sq_distance(Point a, Point b) { return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y); }

double coordinate(std::mt19937_64 &rng) {
  // Multiples of 1/1000 in [-1,1].
  return static_cast<double>(static_cast<int>(rng() % 2001) - 1000) / 1000.0;
}

} // namespace

std::string bsp_tree(const std::vector<Point> &points) {
  std::unique_ptr<BspNode> root;
  for (const Point &p : points)
    insert(root, p, 0);
  return render(root, 0);
}

Point nearest_linear(const std::vector<Point> &points, Point target) {
  Point best = points.front();
  double best_d = std::numeric_limits<double>::infinity();
  for (const Point &p : points) {
    const double d = sq_distance(target, p);
    if (d < best_d) {
      best_d = d;
      best = p;
    }
  }
  return best;
}

BspInstance random_bsp(std::mt19937_64 &rng, int n) {
  while (true) {
    BspInstance inst;
    for (int i = 0; i < n; ++i)
      inst.points.push_back({coordinate(rng), coordinate(rng)});
    inst.target = {coordinate(rng), coordinate(rng)};
    std::vector<double> d;
    for (const Point &p : inst.points)
      d.push_back(sq_distance(inst.target, p));
    std::sort(d.begin(), d.end());
    if (d[1] - d[0] <= 1e-9)
      continue;
    inst.tree = bsp_tree(inst.points);
    return inst;
  }
}

// ---- probabilistic programs ----

namespace {

struct PNode {
  enum Kind { True, Fail, Msw, Seq } kind = True;
  int site = -1;              // Msw: call site index
  int sw = -1;                // Msw: switch index
  std::vector<int> children;  // Msw: per value, -1 if absent; Seq: two
};

class PrismGen {
public:
  PrismGen(std::mt19937_64 &rng, int max_calls) : rng_(rng), remaining_(max_calls) {}

  PrismProgram run() {
    PrismProgram prog;
    const int nsw = 1 + pick(3);
    for (int i = 0; i < nsw; ++i) {
      Switch s;
      s.name = "s" + std::to_string(i);
      const int nv = 2 + pick(2);
      int units = 20;
      for (int v = 0; v < nv; ++v) {
        s.values.push_back(std::string(1, static_cast<char>('a' + v)));
        const int u = v + 1 == nv ? units : 1 + pick(units - (nv - v - 1));
        units -= u;
        s.probs.push_back(u / 20.0);
      }
      prog.switches.push_back(s);
    }
    switches_ = &prog.switches;
    const int root = node(0);
    std::string text;
    for (const Switch &s : prog.switches) {
      text += "values_x(" + s.name + ",[";
      for (std::size_t v = 0; v < s.values.size(); ++v)
        text += (v ? "," : "") + s.values[v];
      text += "],[";
      for (std::size_t v = 0; v < s.probs.size(); ++v)
        text += (v ? "," : "") + format_float(s.probs[v]);
      text += "]).\n";
    }
    text += "goal :- " + render(root) + ".\n";
    prog.text = text;
    prog.msw_calls = sites_;
    prog.world_probability = enumerate_worlds(root);
    return prog;
  }

private:
  int pick(int n) { return n <= 0 ? 0 : static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

  int node(int depth) {
    PNode n;
    const int r = pick(10);
    if (remaining_ > 0 && (depth == 0 || r < 5)) {
      --remaining_;
      n.kind = PNode::Msw;
      n.site = sites_++;
      n.sw = pick(static_cast<int>(switches_->size()));
      const std::size_t values = (*switches_)[n.sw].values.size();
      const std::size_t id = nodes_.size();
      nodes_.push_back(n);
      std::vector<int> children;
      for (std::size_t v = 0; v < values; ++v)
        children.push_back(pick(5) == 0 ? -1 : node(depth + 1));
      nodes_[id].children = children;
      return static_cast<int>(id);
    }
    if (remaining_ > 1 && r < 7) {
      n.kind = PNode::Seq;
      const std::size_t id = nodes_.size();
      nodes_.push_back(n);
      const int a = node(depth + 1);
      const int b = node(depth + 1);
      nodes_[id].children = {a, b};
      return static_cast<int>(id);
    }
    n.kind = r < 8 ? PNode::True : PNode::Fail;
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size() - 1);
  }

  std::string render(int id) const {
    const PNode &n = nodes_[id];
    switch (n.kind) {
    case PNode::True:
      return "true";
    case PNode::Fail:
      return "fail";
    case PNode::Seq:
      return "(" + render(n.children[0]) + "), (" + render(n.children[1]) + ")";
    case PNode::Msw: {
      const Switch &s = (*switches_)[n.sw];
      const std::string v = "V" + std::to_string(n.site);
      std::string alts;
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (n.children[i] < 0)
          continue;
        if (!alts.empty())
          alts += " ; ";
        alts += v + " = " + s.values[i] + ", (" + render(n.children[i]) + ")";
      }
      return "msw(" + s.name + "," + v + "), (" + (alts.empty() ? "fail" : alts) + ")";
    }
    }
    return "fail";
  }

  bool succeeds(int id, const std::vector<int> &world) const {
    const PNode &n = nodes_[id];
    switch (n.kind) {
    case PNode::True:
      return true;
    case PNode::Fail:
      return false;
    case PNode::Seq:
      return succeeds(n.children[0], world) && succeeds(n.children[1], world);
    case PNode::Msw: {
      const int child = n.children[world[n.site]];
      return child >= 0 && succeeds(child, world);
    }
    }
    return false;
  }

  // Sums the probability of every assignment of outcomes to call sites under
  // which the goal succeeds.
  double enumerate_worlds(int root) const {
    std::vector<int> site_switch(sites_);
    for (const PNode &n : nodes_)
      if (n.kind == PNode::Msw)
        site_switch[n.site] = n.sw;
    std::vector<int> world(sites_, 0);
    double total = 0.0;
    while (true) {
      if (succeeds(root, world)) {
        double p = 1.0;
        for (int s = 0; s < sites_; ++s)
          p *= (*switches_)[site_switch[s]].probs[world[s]];
        total += p;
      }
      int s = 0;
      while (s < sites_) {
        if (++world[s] < static_cast<int>((*switches_)[site_switch[s]].values.size()))
          break;
        world[s++] = 0;
      }
      if (s == sites_)
        return total;
    }
  }

  std::mt19937_64 &rng_;
  int remaining_;
  int sites_ = 0;
  std::vector<PNode> nodes_;
  const std::vector<Switch> *switches_ = nullptr;
};

} // namespace

PrismProgram random_prism(std::mt19937_64 &rng, int max_msw_calls) {
  return PrismGen(rng, max_msw_calls).run();
}

// ---- cut corpus ----

const std::vector<CutCase> &cut_corpus() {
  static const std::vector<CutCase> corpus = {
      {"q(1). q(2). q(3). r(a). r(b).\np(X,Y) :- q(X), !, r(Y).\n", "p(X,Y)"},
      {"max(X,Y,X) :- X >= Y, !.\nmax(_,Y,Y).\n", "(max(3,2,M) ; max(1,2,M))"},
      {"mem(X,[X|_]).\nmem(X,[_|T]) :- mem(X,T).\nfirst(X,L) :- mem(X,L), !.\n",
       "first(X,[a,b,c])"},
      {"classify(X,neg) :- X < 0, !.\nclassify(0,zero) :- !.\nclassify(_,pos).\n",
       "(classify(-3,C) ; classify(0,C) ; classify(7,C))"},
      {"t(1).\nt(2) :- !.\nt(3).\n", "t(X)"},
      {"a(X) :- !, X = 1.\na(2).\n", "a(X)"},
      {"d(X) :- (X = 1 ; X = 2), !.\nd(3).\n", "d(X)"},
      {"e(X) :- (X = 1, ! ; X = 2).\ne(3).\ne2(X) :- (X = 1, fail, ! ; X = 2).\ne2(3).\n",
       "(e(X) ; e2(X))"},
      {"f(X) :- X = 1, !, fail.\nf(2).\n", "f(X)"},
      {"g(X) :- h(X), !.\nh(X) :- k(X), !.\nh(9).\nk(5). k(6).\n", "(g(X) ; h(X) ; X = 0)"},
      {"n(X) :- m(X), X > 1, !.\nn(0).\nm(1). m(2). m(3).\n", "n(X)"},
      {"p(X,Y) :- s(X), t(Y).\ns(X) :- (X = 1 ; X = 2), !.\nt(a). t(b).\n", "p(X,Y)"},
      {"len([],0) :- !.\nlen([_|T],N) :- len(T,M), N is M+1.\n", "len([a,b,c],N)"},
      {"ite(X,Y) :- (X > 0 -> !, Y = pos ; Y = nonpos).\nite(_,other).\n",
       "(ite(1,Y) ; ite(0,Y))"},
      {"del(X,[X|T],T) :- !.\ndel(X,[Y|T],[Y|R]) :- del(X,T,R).\n", "del(b,[a,b,c,b],L)"},
      {"num(1). num(2). num(3). num(4).\neven(2). even(4).\n"
       "firsteven(X) :- num(X), even(X), !.\n",
       "firsteven(X)"},
      {"num(1). num(2). num(3).\ntwo(X,Y) :- num(X), num(Y), Y > X, !.\n", "two(X,Y)"},
      {"lookup(K,[K-V|_],V) :- !.\nlookup(K,[_|T],V) :- lookup(K,T,V).\n",
       "lookup(b,[a-1,b-2,b-3],V)"},
      {"num(1). num(2).\nonce_(G) :- call(G), !.\n", "once_(num(X))"},
      {"num(1). num(2). num(3).\nmid(X,Y) :- num(X), X > 1, !, num(Y), Y < X.\n", "mid(X,Y)"},
      {"num(1). num(2).\nnot_(G) :- call(G), !, fail.\nnot_(_).\n",
       "(not_(num(7)), R = yes ; not_(num(1)), R = no ; R = last)"},
      {"memberchk_(X,[X|_]) :- !.\nmemberchk_(X,[_|T]) :- memberchk_(X,T).\n",
       "(memberchk_(X,[a,b]) ; memberchk_(c,[a,b]), X = c ; memberchk_(b,[a,b]), X = found)"},
      {"num(1). num(2). num(3).\nmc(X,Y) :- num(X), !, num(Y), Y > 2, !.\nmc(0,0).\n", "mc(X,Y)"},
      {"num(1). num(2). num(3).\nc24(X) :- (num(X) ; X = 10), X > 2, !.\n", "c24(X)"},
      {"p(1). p(2).\nq(X,Y) :- p(X), r(X,Y).\nr(1,Y) :- !, (Y = a ; Y = b).\nr(_,c).\n",
       "q(X,Y)"},
  };
  return corpus;
}

namespace {

bool contains_cut(const Store &s, Term body) {
  body = s.deref(body);
  if (s.is_atom(body, atoms::cut))
    return true;
  if (s.is_functor(body, atoms::comma, 2) || s.is_functor(body, atoms::semicolon, 2) ||
      s.is_functor(body, atoms::arrow, 2))
    return contains_cut(s, s.arg(body, 0)) || contains_cut(s, s.arg(body, 1));
  return false;
}

Term replace_cut(Store &s, Term body) {
  body = s.deref(body);
  if (s.is_atom(body, atoms::cut))
    return s.make_atom("cut");
  if (s.is_functor(body, atoms::comma, 2) || s.is_functor(body, atoms::semicolon, 2) ||
      s.is_functor(body, atoms::arrow, 2)) {
    const Term l = replace_cut(s, s.arg(body, 0));
    const Term r = replace_cut(s, s.arg(body, 1));
    return s.make_compound(s.name(body), {l, r});
  }
  return body;
}

Term rename_head(Store &s, Term head, const std::string &suffix) {
  const AtomId name = intern(atom_name(s.name(head)) + suffix);
  if (s.is_atom(head))
    return s.make_atom(name);
  std::vector<Term> args;
  for (std::uint32_t i = 0; i < s.arity(head); ++i)
    args.push_back(s.arg(head, i));
  return s.make_compound(name, args);
}

} // namespace

std::string translate_cut(const std::string &program) {
  Store s;
  const auto clauses = parse_program(program, s);
  std::set<std::pair<std::string, std::uint32_t>> cutting;
  for (const SourceClause &c : clauses)
    if (contains_cut(s, c.body))
      cutting.insert({atom_name(s.name(c.head)), s.arity(c.head)});
  const FormatOptions q{.quoted = true};
  std::string out;
  std::set<std::pair<std::string, std::uint32_t>> wrapped;
  for (const SourceClause &c : clauses) {
    const Term head = s.deref(c.head);
    const std::pair<std::string, std::uint32_t> key{atom_name(s.name(head)), s.arity(head)};
    if (!cutting.contains(key)) {
      out += format_term(s, head, q) + " :- " + format_term(s, c.body, q) + ".\n";
      continue;
    }
    if (wrapped.insert(key).second) {
      std::vector<Term> vars;
      for (std::uint32_t i = 0; i < key.second; ++i)
        vars.push_back(s.make_var());
      const Term general = key.second ? s.make_compound(intern(key.first), vars)
                                      : s.make_atom(key.first);
      out += format_term(s, general, q) + " :- scope(" +
             format_term(s, rename_head(s, general, "_cut"), q) + ").\n";
    }
    out += format_term(s, rename_head(s, head, "_cut"), q) + " :- " +
           format_term(s, replace_cut(s, c.body), q) + ".\n";
  }
  return out;
}

} // namespace ddc::testing

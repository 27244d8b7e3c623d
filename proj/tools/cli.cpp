#include "cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <unordered_map>
#include <sstream>

#include "ddc/errors.hpp"
#include "ddc/oracle.hpp"
#include "ddc/stdlib.hpp"
#include "ddc/toplevel.hpp"

namespace ddc::cli {

namespace {

using NameMap = std::unordered_map<std::uint32_t, std::string>;

// `trace_names` points at the running solver's copy_names(), if any.
EngineOptions engine_options(const CliConfig &config, std::ostream &out, std::ostream &err,
                             const NameMap *const &trace_names) {
  EngineOptions opts;
  opts.output = &out;
  if (config.steps)
    opts.step_limit = *config.steps;
  if (config.trace)
    opts.trace = [&err, &trace_names](const Engine &engine, const TraceEvent &ev) {
      err << format_trace_event(engine.store(), ev, trace_names) << '\n';
    };
  return opts;
}

void load(Session &session, const CliConfig &config) {
  if (!config.libs.empty())
    session.load_libraries(config.libs);
  for (const std::string &file : config.files)
    session.consult_file(file);
}

// Maps an exception from loading or solving to an exit code.
int report(std::ostream &err) {
  try {
    throw;
  } catch (const SyntaxError &e) {
    err << e.what() << '\n';
  } catch (const LoadError &e) {
    err << "load error: " << e.what() << '\n';
  } catch (const EngineError &e) {
    err << e.what() << '\n';
    if (e.kind() == ErrorKind::UncaughtShift)
      return kUncaughtShift;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
  }
  return kError;
}

int run_oracle(const CliConfig &config, Session &session, std::ostream &out, std::ostream &err) {
  OracleConfig oc;
  oc.output = &out;
  if (config.steps)
    oc.depth_limit = *config.steps;
  Database &db = *session.database();
  Store store;
  const OracleResult r = sld_solve(store, db, *config.goal, oc);
  for (std::size_t i = 0; i < r.answers.size(); ++i)
    out << (i ? " ;\n" : "") << format_answer(store, r.answers[i]);
  out << (r.answers.empty() ? "false.\n" : ".\n");
  if (r.truncated)
    err << "warning: search truncated by the step limit or answer cap\n";
  return r.answers.empty() ? kNoAnswers : kAnswers;
}

} // namespace

int run(const CliConfig &config, std::ostream &out, std::ostream &err) {
  if (!config.goal) {
    err << "run: a goal is required (-g)\n";
    return kError;
  }
  const NameMap *trace_names = nullptr;
  Session session(engine_options(config, out, err, trace_names));
  std::size_t count = 0;
  try {
    load(session, config);
    if (config.oracle)
      return run_oracle(config, session, out, err);
    Solver solver(session.engine(), session.parse(*config.goal));
    trace_names = &solver.copy_names();
    while (auto answer = solver.next()) {
      out << (count++ ? " ;\n" : "") << format_answer(session.engine().store(), *answer);
      out.flush();
    }
  } catch (...) {
    if (count)
      out << ".\n";
    return report(err);
  }
  out << (count ? ".\n" : "false.\n");
  return count ? kAnswers : kNoAnswers;
}

namespace {

// Reads one query terminated by '.' at the end of a line. False at end of input.
bool read_query(std::istream &in, std::ostream &out, std::string &query) {
  query.clear();
  std::string line;
  out << "?- " << std::flush;
  while (std::getline(in, line)) {
    query += line;
    query += '\n';
    const auto last = query.find_last_not_of(" \t\r\n");
    if (last != std::string::npos && query[last] == '.')
      return true;
    if (last != std::string::npos)
      out << "|  " << std::flush;
  }
  return query.find_first_not_of(" \t\r\n") != std::string::npos;
}

} // namespace

int repl(const CliConfig &config, std::istream &in, std::ostream &out, std::ostream &err) {
  const NameMap *trace_names = nullptr;
  Session session(engine_options(config, out, err, trace_names));
  try {
    load(session, config);
  } catch (...) {
    return report(err);
  }
  std::string query;
  while (read_query(in, out, query)) {
    const auto first = query.find_first_not_of(" \t\r\n");
    const auto last = query.find_last_not_of(" \t\r\n.");
    if (first != std::string::npos && last != std::string::npos &&
        query.substr(first, last - first + 1) == "halt")
      return kAnswers;
    try {
      Solver solver(session.engine(), session.parse(query));
      trace_names = &solver.copy_names();
      bool any = false;
      while (true) {
        auto answer = solver.next();
        if (!answer) {
          out << (any ? "\nfalse.\n" : "false.\n");
          break;
        }
        if (any)
          out << '\n';
        any = true;
        out << format_answer(session.engine().store(), *answer) << ' ' << std::flush;
        std::string reply;
        if (!std::getline(in, reply) || reply.find(';') == std::string::npos) {
          out << ".\n";
          break;
        }
        out << ';';
      }
    } catch (...) {
      out << '\n';
      report(err);
    }
  }
  return kAnswers;
}

int difftest(const CliConfig &config, std::ostream &out, std::ostream &err) {
  std::uint64_t failures = 0;
  for (std::uint64_t seed = config.first_seed; seed < config.first_seed + config.seeds; ++seed) {
    const GeneratedProgram gp = gen_program(seed);
    try {
      auto db = std::make_shared<Database>();
      db->consult_text(gp.program, "seed" + std::to_string(seed));
      EngineOptions opts;
      opts.output = &out;
      Engine engine(db, opts);
      const Query q = parse_query(gp.query, engine.store());
      const std::vector<Answer> mine = solve_all(engine, q);
      Store store;
      OracleConfig oc;
      oc.output = &out;
      const OracleResult ref = sld_solve(store, *db, gp.query, oc);
      if (ref.truncated || !answers_equiv(engine.store(), mine, store, ref.answers)) {
        ++failures;
        err << "seed " << seed << ": engine " << mine.size() << " answers, oracle "
            << ref.answers.size() << (ref.truncated ? " (truncated)" : "") << "\n"
            << gp.program << "?- " << gp.query << ".\n";
      }
    } catch (const std::exception &e) {
      ++failures;
      err << "seed " << seed << ": " << e.what() << '\n';
    }
  }
  out << "difftest: " << config.seeds - failures << "/" << config.seeds << " seeds agree\n";
  return failures ? kNoAnswers : kAnswers;
}

int main(const std::vector<std::string> &args, std::istream &in, std::ostream &out,
         std::ostream &err) {
  CLI::App app{"Prolog subset with disjunctive delimited control", "ddc"};
  app.require_subcommand(1);
  CliConfig config;

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("files", config.files, "Program files to consult")->check(CLI::ExistingFile);
    sub->add_option("--lib", config.libs, "Library to load (name or 'all')")->allow_extra_args(false)->delimiter(',');
    sub->add_flag("--trace", config.trace, "Print the evaluation trace to standard error");
    sub->add_option("--steps", config.steps, "Step limit");
  };
  CLI::App *run_cmd = app.add_subcommand("run", "Run a goal and print its answers");
  add_common(run_cmd);
  run_cmd->add_option("-g,--goal", config.goal, "Goal to run");
  run_cmd->add_flag("--oracle", config.oracle, "Use the reference SLD solver");
  CLI::App *repl_cmd = app.add_subcommand("repl", "Interactive read-eval-print loop");
  add_common(repl_cmd);
  CLI::App *diff_cmd = app.add_subcommand("difftest", "Compare engine and oracle on random programs");
  diff_cmd->add_option("--seeds", config.seeds, "Number of seeds");
  diff_cmd->add_option("--first-seed", config.first_seed, "First seed");

  std::vector<std::string> argv_storage{"ddc"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char *> argv;
  for (std::string &a : argv_storage)
    argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err) == 0 ? kAnswers : kError;
  }
  if (run_cmd->parsed())
    return run(config, out, err);
  if (repl_cmd->parsed())
    return repl(config, in, out, err);
  return difftest(config, out, err);
}

} // namespace ddc::cli

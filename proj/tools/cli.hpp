#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ddc::cli {

enum ExitCode { kAnswers = 0, kNoAnswers = 1, kError = 2, kUncaughtShift = 3 };

struct CliConfig {
  std::vector<std::string> files;
  std::optional<std::string> goal;
  std::vector<std::string> libs;
  bool trace = false;
  bool oracle = false;
  std::optional<std::uint64_t> steps;
  std::uint64_t seeds = 1000;
  std::uint64_t first_seed = 0;
};

// Runs `ddc <args...>` (args excludes the program name) against the given
// streams and returns the process exit code.
int main(const std::vector<std::string> &args, std::istream &in, std::ostream &out,
         std::ostream &err);

int run(const CliConfig &config, std::ostream &out, std::ostream &err);
int repl(const CliConfig &config, std::istream &in, std::ostream &out, std::ostream &err);
// Differential suite: engine vs oracle on generated programs. Exit 0 when
// every seed agrees.
int difftest(const CliConfig &config, std::ostream &out, std::ostream &err);

} // namespace ddc::cli

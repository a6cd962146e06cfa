#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zsup/series.hpp"

namespace zsup::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kInputError = 2 };

struct Outcome {
  int code = kOk;
  std::string out;  // report, newline terminated
  std::string err;  // diagnostics, newline terminated
};

/// Mutable state shared by the statements of a script (and by a single
/// command-line invocation).
struct Session {
  Domain domain;  // null until set; see active_domain()
  std::optional<std::size_t> order;
  std::vector<std::pair<std::string, std::string>> lets;  // name, expression
  bool json = false;
  std::size_t samples = 32;
  std::uint64_t seed = 0;
  bool color = false;
};

/// The built-in domain 1|(1,1,1) over Z_2^2: x; xi (0,1), eta (1,0),
/// theta (1,1); truncation order 6.
Domain default_domain();

/// Runs one command line, tokens excluding the program name, e.g.
/// {"invert", "1-theta", "--order", "3"}. `run <script>` executes a script.
Outcome run(const std::vector<std::string>& tokens, Session& session);

/// Executes a script: one statement per line, '#' starts a comment.
///   domain <file | inline JSON>
///   order <N>
///   let <name> = <expression>
///   <command> <args...>
/// Stops at the first input error; the exit code is the worst seen.
Outcome run_script(std::istream& script, Session& session);

/// Splits a statement into words; double quotes group, backslash escapes.
std::vector<std::string> tokenize(const std::string& line);

}  // namespace zsup::cli

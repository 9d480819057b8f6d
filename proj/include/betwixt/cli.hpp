#pragma once

#include <string>
#include <vector>

namespace betwixt {

struct CliResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

// Runs one CLI invocation (argv without the program name). Exit codes:
// 0 success / positive verdict, 1 negative verdict, 2 usage error, 3 input
// parse error.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace betwixt

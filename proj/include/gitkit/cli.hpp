#pragma once

#include <ostream>
#include <string>
#include <vector>

// `gitkit <module> <op> [flags]`. Exit codes: 0 success, 1 domain error
// (JSON {code, message, context} on stderr), 2 usage error.
namespace gitkit::cli {

struct Subcommand {
  std::string module;
  std::string op;  // empty for top-level commands
  std::string summary;
  std::vector<std::string> operations;  // core operations this subcommand exposes
};

/// Every subcommand in registration order.
std::vector<Subcommand> registry();

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gitkit::cli

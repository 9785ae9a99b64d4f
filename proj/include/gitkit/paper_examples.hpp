#pragma once

#include <string>
#include <vector>

// Regression harness over the pinned worked examples.
namespace gitkit {

struct ExampleResult {
  std::string name;
  bool pass = false;
  double millis = 0;
  std::string detail;  // empty on success, otherwise what went wrong
};

std::vector<ExampleResult> paper_examples();

}  // namespace gitkit

// Runs the reproduction criteria and prints one PASS/FAIL line per criterion.
//   gsp_acceptance_suite            all criteria
//   gsp_acceptance_suite 4 7        selected criteria

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "gsp/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) {
    for (const auto& c : gsp::acceptance::list_criteria()) ids.push_back(c.id);
  }
  gsp::acceptance::Options options;
  if (const char* w = std::getenv("GSP_WORKERS")) options.workers = std::max(1, std::atoi(w));
  bool all = true;
  for (int id : ids) {
    auto r = gsp::acceptance::run_criterion(id, options);
    std::cout << gsp::acceptance::format_row(r) << std::endl;
    all = all && r.passed;
  }
  return all ? 0 : 1;
}

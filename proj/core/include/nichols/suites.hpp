#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nichols/report.hpp"

namespace nichols {

/// One suite case: a named closure producing a report.
struct SuiteCase {
  std::string name;
  std::function<Report()> run;
};

/// The named verification suites. `corpusDir` empty = default resolution.
std::vector<SuiteCase> suiteCases(const std::string& suiteName, const std::string& corpusDir = "");

/// Runs cases in a worker pool (deterministic assembly order).
std::vector<Report> runSuite(const std::string& suiteName, const std::string& corpusDir = "",
                             unsigned jobs = 0);

std::vector<std::string> suiteNames();

}  // namespace nichols

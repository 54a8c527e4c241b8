#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nl2ltl::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kUsageError = 2,
  // UNSAT, NOT EQUIVALENT, or a formula rejected by the checker.
  kNegative = 3,
  kParseError = 4,
  kNoMajority = 5,
  kAllRunsFailed = 6,
  kGatewayError = 7,
  kNoPlan = 8,
  kDatasetError = 9,
  // Malformed prompt set, lexicon or world file.
  kInputError = 10,
  kResourceLimit = 11,
};

inline constexpr int kSchemaVersion = 1;

// args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace nl2ltl::cli

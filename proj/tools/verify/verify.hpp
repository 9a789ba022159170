#pragma once

#include <functional>
#include <string>
#include <vector>

namespace chordarr::verify {

enum class Tier { kFast, kSlow, kOptional };

const char* tier_name(Tier t);

struct Options {
  unsigned threads = 0;
  // Replaces the LGV index parity expression with a broken one, to show the
  // parity check can fail.
  bool inject_parity_fault = false;
};

struct Result {
  int criterion = 0;  // 0: supporting check outside the numbered criteria
  std::string name;
  Tier tier = Tier::kFast;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Check {
  int criterion;
  std::string name;
  Tier tier;
  std::function<Result(const Options&)> run;
};

std::vector<Check> all_checks();

// Runs every check whose tier is listed, reporting each as it finishes.
// Exceptions inside a check turn into a failed result.
std::vector<Result> run_checks(const std::vector<Tier>& tiers, const Options& opts,
                               const std::function<void(const Result&)>& report = {});

std::string format_result(const Result& r);

}  // namespace chordarr::verify

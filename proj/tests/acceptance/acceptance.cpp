// One PASS/FAIL line per acceptance criterion. The optional long targets only
// run with CHORDARR_OPTIONAL=1; criterion 8 is a declaration and always runs.
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>

#include "verify.hpp"

using namespace chordarr::verify;

int main() {
  const char* env = std::getenv("CHORDARR_OPTIONAL");
  const bool optional = env != nullptr && std::string(env) == "1";

  Options opts;
  std::vector<Result> results = run_checks({Tier::kFast, Tier::kSlow}, opts, [](const Result& r) {
    std::cerr << format_result(r) << "\n";
  });
  for (const Check& c : all_checks()) {
    if (c.tier != Tier::kOptional || (!optional && c.criterion != 8)) continue;
    Result r;
    try {
      r = c.run(opts);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    r.criterion = c.criterion;
    r.name = c.name;
    r.tier = c.tier;
    std::cerr << format_result(r) << "\n";
    results.push_back(r);
  }

  std::map<int, std::vector<const Result*>> by_criterion;
  for (const Result& r : results) {
    if (r.criterion > 0) by_criterion[r.criterion].push_back(&r);
  }
  bool all = true;
  for (int c = 1; c <= 8; ++c) {
    const auto it = by_criterion.find(c);
    bool ok = it != by_criterion.end();
    std::string detail = ok ? "" : "no check registered";
    if (ok) {
      for (const Result* r : it->second) {
        ok = ok && r->passed;
        if (!detail.empty()) detail += " | ";
        detail += r->name + ": " + r->detail;
      }
    }
    all = all && ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << c << "  " << detail << std::endl;
  }
  if (!optional) std::cout << "(optional long targets skipped; set CHORDARR_OPTIONAL=1 to run them)" << std::endl;
  return all ? 0 : 1;
}

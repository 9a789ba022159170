#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "chordarr/bound.hpp"
#include "chordarr/construction.hpp"
#include "chordarr/counter.hpp"
#include "chordarr/errors.hpp"
#include "chordarr/independence.hpp"
#include "chordarr/lgv.hpp"
#include "verify.hpp"

using namespace chordarr;

namespace {

enum Exit { kOk = 0, kValidation = 2, kBudget = 3, kInvariant = 4 };

struct RunConfig {
  unsigned threads = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultBudget;
  std::string format = "text";
  bool tsv() const { return format == "tsv"; }
};

class Timer {
 public:
  explicit Timer(std::string what) : what_(std::move(what)), t0_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    std::cerr << what_ << ": " << s << " s\n";
  }

 private:
  std::string what_;
  std::chrono::steady_clock::time_point t0_;
};

Matching load_input(const std::string& input) {
  if (!input.empty() && input.front() == '(') return parse_family_spec(input);
  return read_matching_file(input);
}

InsertionOrder parse_order(const std::string& text) {
  InsertionOrder order;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      order.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ValidationError("bad chord id '" + item + "' in --order");
    }
  }
  return order;
}

struct CountArgs {
  std::string input;
  std::string order;
  bool independence = false;
  int trials = kDefaultTrials;
  int depth = kDefaultDepthLimit;
  std::string recompute;
};

BigCount count_one(const Matching& m, const CountArgs& a, const RunConfig& cfg) {
  if (a.independence) {
    IndependenceOptions o;
    o.threads = cfg.threads;
    o.seed = cfg.seed;
    o.budget = cfg.budget;
    o.trials = a.trials;
    o.depth_limit = a.depth;
    return count_with_independence(m, o);
  }
  CountOptions o;
  o.threads = cfg.threads;
  o.seed = cfg.seed;
  o.budget = cfg.budget;
  if (!a.order.empty()) o.order = parse_order(a.order);
  return count_arrangements(m, o);
}

// Rows "name matching-file p"; counts every matching and prints a region
// table that `bound --table` accepts.
int recompute_regions(const CountArgs& a, const RunConfig& cfg) {
  std::ifstream in(a.recompute);
  if (!in) throw ValidationError("cannot read " + a.recompute);
  const auto base = std::filesystem::path(a.recompute).parent_path();
  std::string raw;
  std::size_t row = 0;
  std::cout << "# region\tcount\tp\n";
  while (std::getline(in, raw)) {
    ++row;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream fields(raw);
    std::string name, file, p;
    if (!(fields >> name)) continue;
    if (!(fields >> file >> p)) throw ParseError(row, "expected 'name matching-file p'");
    const auto path = std::filesystem::path(file).is_absolute() ? std::filesystem::path(file) : base / file;
    const Matching m = read_matching_file(path.string());
    Timer t("region " + name);
    const BigCount n = count_one(m, a, cfg);
    std::cout << name << '\t' << n << '\t' << parse_rational(p) << std::endl;
  }
  return kOk;
}

int cmd_count(const CountArgs& a, const RunConfig& cfg) {
  if (!a.recompute.empty()) return recompute_regions(a, cfg);
  const Matching m = load_input(a.input);
  BigCount n;
  {
    Timer t("count");
    n = count_one(m, a, cfg);
  }
  if (cfg.tsv()) {
    std::cout << "input\tchords\tcount\n" << a.input << '\t' << m.size() << '\t' << n << '\n';
  } else {
    std::cout << n << '\n';
  }
  return kOk;
}

int cmd_bn(int n, const RunConfig& cfg) {
  if (n < 1) throw ValidationError("n must be at least 1");
  CountOptions o;
  o.threads = cfg.threads;
  o.seed = cfg.seed;
  o.budget = cfg.budget;
  BigCount b;
  {
    Timer t("bn");
    b = count_arrangements(pseudoline_matching(n), o);
  }
  if (cfg.tsv()) {
    std::cout << "n\tB_n\n" << n << '\t' << b << '\n';
  } else {
    std::cout << b << '\n';
  }
  return kOk;
}

int cmd_verify(const std::string& tier, bool fault, const RunConfig& cfg) {
  using verify::Tier;
  std::vector<Tier> tiers;
  if (tier == "fast") {
    tiers = {Tier::kFast};
  } else if (tier == "slow") {
    tiers = {Tier::kFast, Tier::kSlow};
  } else if (tier == "optional") {
    tiers = {Tier::kOptional};
  } else if (tier == "all") {
    tiers = {Tier::kFast, Tier::kSlow, Tier::kOptional};
  } else {
    throw ValidationError("unknown tier '" + tier + "'");
  }
  verify::Options opts;
  opts.threads = cfg.threads;
  opts.inject_parity_fault = fault;
  if (cfg.tsv()) std::cout << "status\tcriterion\ttier\tcheck\tdetail\tseconds\n";
  const auto results = verify::run_checks(tiers, opts, [&](const verify::Result& r) {
    if (cfg.tsv()) {
      std::cout << (r.passed ? "PASS" : "FAIL") << '\t' << r.criterion << '\t' << verify::tier_name(r.tier) << '\t'
                << r.name << '\t' << r.detail << '\t' << r.seconds << std::endl;
    } else {
      std::cout << verify::format_result(r) << std::endl;
    }
  });
  const bool ok = std::all_of(results.begin(), results.end(), [](const verify::Result& r) { return r.passed; });
  if (!cfg.tsv()) std::cout << (ok ? "all checks passed" : "some checks FAILED") << '\n';
  return ok ? kOk : kInvariant;
}

int cmd_bound(const std::string& table, int r, const RunConfig& cfg) {
  const auto entries = table.empty() ? default_region_table() : load_region_table(table);
  const BoundReport rep = bound_report(entries, r);
  std::cout << (cfg.tsv() ? rep.tsv() : rep.text());
  return kOk;
}

int cmd_lgv(int s, bool log2_only, bool show_matrix, const RunConfig& cfg) {
  if (show_matrix) {
    const LgvMatrix m = lgv_matrix(s);
    for (int i = 0; i < m.dim; ++i) {
      for (int j = 0; j < m.dim; ++j) std::cout << (j ? (cfg.tsv() ? "\t" : " ") : "") << m.at(i, j);
      std::cout << '\n';
    }
    return kOk;
  }
  BigCount v;
  {
    Timer t("lgv");
    v = lgv_count(s);
  }
  if (cfg.tsv()) {
    std::cout << "s\tlog2_lower\tdigits\tvalue\n"
              << s << '\t' << log2_lower(v) << '\t' << to_decimal(v).size() << '\t' << (log2_only ? "" : to_decimal(v))
              << '\n';
  } else if (log2_only) {
    std::cout << "log2 >= " << log2_lower(v) << " (" << to_decimal(v).size() << " decimal digits)\n";
  } else {
    std::cout << v << '\n';
  }
  return kOk;
}

int cmd_regions(bool areas, const RunConfig& cfg) {
  const auto regions = region_areas();
  if (cfg.tsv()) {
    std::cout << "signature\tarea\tregion\tslabs\tambiguous\n";
    for (const Region& r : regions) {
      std::cout << signature_name(r.signature) << '\t' << r.area << "\tR_" << r.letter << '\t'
                << signature_size(r.signature) << '\t' << (r.ambiguous ? "yes" : "no") << '\n';
    }
    return kOk;
  }
  for (const Region& r : regions) {
    std::cout << "R_" << r.letter << "  ";
    if (areas) std::cout << std::left << std::setw(12) << r.area.get_str();
    std::cout << signature_name(r.signature) << (r.ambiguous ? "  (letter fixed by tie-break)" : "") << '\n';
  }
  std::cout << regions.size() << " regions" << (areas ? "; areas are coefficients of m^2" : "") << '\n';
  return kOk;
}

struct ExtractArgs {
  std::string pattern;
  std::vector<std::string> center;
  std::string side;
  std::vector<long> shear;
  std::string nudge;
  std::string output;
};

int cmd_extract(const ExtractArgs& a, const RunConfig& cfg) {
  const Pattern pattern = Pattern::parse(a.pattern);
  Window w{{parse_rational(a.center.at(0)), parse_rational(a.center.at(1))}, parse_rational(a.side), std::nullopt};
  if (!a.shear.empty()) w.shear = Shear{a.shear[0], a.shear[1], a.shear[2], a.shear[3]};
  Matching m;
  const Rational eps = a.nudge.empty() ? Rational(0) : parse_rational(a.nudge);
  const Point origin = w.center;
  // Retry along a direction unlikely to be parallel to any pattern line,
  // halving the step each time.
  for (int attempt = 0;; ++attempt) {
    try {
      m = extract_from_pattern(pattern, w);
      break;
    } catch (const DegeneracyError& e) {
      if (eps == 0 || attempt >= 16) throw;
      const Rational step = eps / (BigCount(1) << attempt);
      w.center = Point{origin.x + step, origin.y + step * Rational(2, 7)};
      std::cerr << "degenerate window (" << e.what() << "); retrying at center (" << w.center.x << ", "
                << w.center.y << ")\n";
    }
  }
  const std::string text = serialize_matching(m);
  if (!a.output.empty()) {
    std::ofstream out(a.output);
    if (!out) throw ValidationError("cannot write " + a.output);
    out << text;
    std::cerr << "wrote " << m.size() << " chords to " << a.output << '\n';
  } else if (cfg.tsv()) {
    std::cout << "lo\thi\n";
    for (const auto& [lo, hi] : m.pairs()) std::cout << lo << '\t' << hi << '\n';
  } else {
    std::cout << text;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counts simple pseudochord arrangements and assembles pseudoline lower bounds"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--threads", cfg.threads, "worker threads, 0 = all cores")->envname("THREADS");
  app.add_option("--seed", cfg.seed, "seed for weight sampling and partition search")->envname("SEED");
  app.add_option("--budget", cfg.budget, "max partial embeddings per run")->envname("BUDGET");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "tsv"}));

  CountArgs count;
  auto* c = app.add_subcommand("count", "count arrangements of a matching file or family spec like \"(1)x5\"");
  c->add_option("input", count.input, "matching file or family spec");
  c->add_option("--order", count.order, "insertion order, comma-separated chord ids");
  c->add_flag("--independence", count.independence, "split on independent chords");
  c->add_option("--trials", count.trials, "partition candidates per split");
  c->add_option("--depth", count.depth, "max independence recursion depth");
  c->add_option("--recompute-region", count.recompute, "count every matching listed in a region file");
  c->fallthrough();

  int bn = 0;
  auto* b = app.add_subcommand("bn", "number of simple pseudoline arrangements of order n");
  b->add_option("n", bn)->required();
  b->fallthrough();

  std::string tier = "fast";
  bool fault = false;
  auto* v = app.add_subcommand("verify", "run the acceptance checks");
  v->add_option("--tier", tier, "fast, slow (fast + slow), optional, or all");
  v->add_flag("--inject-parity-fault", fault, "break the LGV parity expression to exercise its check");
  v->fallthrough();

  std::string table;
  int r = 12;
  auto* bd = app.add_subcommand("bound", "lower bound from a region table (published table by default)");
  bd->add_option("--table", table, "region table file");
  bd->add_option("--r", r, "number of line bundles")->check(CLI::PositiveNumber);
  bd->fallthrough();

  int size = 0;
  bool log2_only = false, matrix = false;
  auto* l = app.add_subcommand("lgv", "arrangements of the s x s sheared grid window");
  l->add_option("--size", size, "window size s")->required()->check(CLI::PositiveNumber);
  l->add_flag("--log2-only", log2_only, "print only the bit-length bound");
  l->add_flag("--matrix", matrix, "print the path-count matrix instead");
  l->fallthrough();

  bool areas = false;
  auto* rg = app.add_subcommand("regions", "regions of the twelve-slope construction");
  rg->add_flag("--areas", areas, "list canonical signatures with exact areas");
  rg->fallthrough();

  ExtractArgs ex;
  auto* e = app.add_subcommand("extract", "matching seen through a square window of a line pattern");
  e->add_option("--pattern", ex.pattern, "matousek, twelve:<m>, lattice:<slopes>, or a pattern file")->required();
  e->add_option("--center", ex.center, "window center x y (rationals)")->expected(2)->required();
  e->add_option("--side", ex.side, "window side length")->required();
  e->add_option("--shear", ex.shear, "integer matrix a b c d applied to the pattern")->expected(4);
  e->add_option("--nudge", ex.nudge, "on a degenerate window, retry with the center moved by about this much");
  e->add_option("-o,--output", ex.output, "write the .match file here");
  e->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*c) {
      if (count.input.empty() && count.recompute.empty()) throw ValidationError("count needs an input");
      return cmd_count(count, cfg);
    }
    if (*b) return cmd_bn(bn, cfg);
    if (*v) return cmd_verify(tier, fault, cfg);
    if (*bd) return cmd_bound(table, r, cfg);
    if (*l) return cmd_lgv(size, log2_only, matrix, cfg);
    if (*rg) return cmd_regions(areas, cfg);
    if (*e) return cmd_extract(ex, cfg);
  } catch (const BudgetExceeded& err) {
    std::cerr << "budget exceeded: " << err.what() << '\n';
    return kBudget;
  } catch (const ValidationError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kValidation;
  } catch (const InvariantViolation& err) {
    std::cerr << "internal error: " << err.what() << '\n';
    return kInvariant;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kInvariant;
  }
  return kOk;
}

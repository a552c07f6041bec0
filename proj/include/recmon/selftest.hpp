#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "recmon/formula.hpp"
#include "recmon/monitor.hpp"

namespace recmon::sweep {

// Parameters of the property sweep. The defaults pin the acceptance corpus:
// alphabet {a,b}, exhaustive HML formulas by size (>= 500), 500 random guarded
// ltmuS/ltmuC formulas, lassos |u|+|v| <= 5, finite traces |s| <= 6, and
// 10000 randomized zipping/combinator instances.
struct Config {
  Alphabet alphabet = Alphabet({"a", "b"});
  int formula_depth = 3;
  std::size_t corpus_min = 500;
  std::size_t corpus_max = 5000;
  int lasso_bound = 5;
  int finite_bound = 6;
  int random_formulas = 500;
  int formula_length_cap = 20;
  long randomized_instances = 10000;
  std::uint64_t seed = 20260810;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  long checked = 0;
  long failures = 0;
  std::string first_failure;
  double seconds = 0;
  bool pass() const { return failures == 0; }
};

// Exhaustive-by-size HML corpus over the alphabet, commutativity-deduped,
// depth-capped; grows the size budget until corpus_min is reached.
std::vector<FormulaPtr> hml_corpus(const Config &cfg);

// Seeded random guarded closed formulas in ltmuS (max_fragment) or ltmuC.
std::vector<FormulaPtr> random_ltmu_corpus(const Config &cfg, bool max_fragment);

// Seeded random closed monitor terms; `parallel` admits the parallel
// operators.
std::vector<MonitorPtr> random_monitors(const Config &cfg, int count, bool parallel,
                                        std::uint64_t salt);

// Runs the eight acceptance criteria; `progress` (optional) gets one line per
// criterion as it finishes.
std::vector<CriterionResult> run_acceptance(const Config &cfg, std::ostream *progress);

}  // namespace recmon::sweep

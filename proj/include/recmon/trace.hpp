#pragma once

#include <string>
#include <vector>

#include "recmon/alphabet.hpp"

namespace recmon {

// A finite trace (cycle empty) or an ultimately periodic infinite trace
// prefix.cycle^w (cycle non-empty).
struct TraceSpec {
  std::vector<Action> prefix;
  std::vector<Action> cycle;

  bool is_lasso() const { return !cycle.empty(); }
  bool is_finite() const { return cycle.empty(); }
  size_t total_len() const { return prefix.size() + cycle.size(); }

  // Normal form for lassos: cycle reduced to its primitive root and the
  // prefix rolled back over the cycle ("a(a)" becomes "(a)"). Finite traces
  // are already canonical.
  TraceSpec canonical() const;

  bool operator==(const TraceSpec &o) const {
    return prefix == o.prefix && cycle == o.cycle;
  }
  bool operator<(const TraceSpec &o) const {
    if (prefix != o.prefix) return prefix < o.prefix;
    return cycle < o.cycle;
  }
};

std::string to_string(const TraceSpec &t, const Alphabet &alpha);

// All finite traces of length <= bound, in length-then-lexicographic order.
std::vector<std::vector<Action>> enumerate_finite_traces(const Alphabet &alpha, int bound);

// All canonical lassos with |prefix|+|cycle| <= bound (cycle non-empty),
// deduplicated modulo lasso equality.
std::vector<TraceSpec> enumerate_lassos(const Alphabet &alpha, int bound);

}  // namespace recmon

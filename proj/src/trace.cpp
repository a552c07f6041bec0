#include "recmon/trace.hpp"

#include <algorithm>
#include <set>

namespace recmon {

namespace {

// Smallest w with v = w^k.
std::vector<Action> primitive_root(const std::vector<Action> &v) {
  size_t n = v.size();
  for (size_t len = 1; len <= n / 2; ++len) {
    if (n % len != 0) continue;
    bool ok = true;
    for (size_t i = len; i < n && ok; ++i) ok = v[i] == v[i % len];
    if (ok) return std::vector<Action>(v.begin(), v.begin() + static_cast<long>(len));
  }
  return v;
}

}  // namespace

TraceSpec TraceSpec::canonical() const {
  if (is_finite()) return *this;
  TraceSpec t;
  t.prefix = prefix;
  t.cycle = primitive_root(cycle);
  // Roll the prefix back over the cycle: u·a (a·w)^w == u (w·a)^w when the
  // last prefix action matches the last cycle action.
  while (!t.prefix.empty() && t.prefix.back() == t.cycle.back()) {
    t.prefix.pop_back();
    std::rotate(t.cycle.begin(), t.cycle.end() - 1, t.cycle.end());
  }
  t.cycle = primitive_root(t.cycle);
  return t;
}

std::string to_string(const TraceSpec &t, const Alphabet &alpha) {
  std::string out;
  for (size_t i = 0; i < t.prefix.size(); ++i) {
    if (i) out += ".";
    out += alpha.name(t.prefix[i]);
  }
  if (t.is_lasso()) {
    out += "(";
    for (size_t i = 0; i < t.cycle.size(); ++i) {
      if (i) out += ".";
      out += alpha.name(t.cycle[i]);
    }
    out += ")";
  }
  return out;
}

std::vector<std::vector<Action>> enumerate_finite_traces(const Alphabet &alpha, int bound) {
  std::vector<std::vector<Action>> out;
  out.push_back({});
  size_t level_begin = 0;
  for (int len = 1; len <= bound; ++len) {
    size_t level_end = out.size();
    for (size_t i = level_begin; i < level_end; ++i) {
      for (Action a = 0; a < alpha.size(); ++a) {
        auto t = out[i];
        t.push_back(a);
        out.push_back(std::move(t));
      }
    }
    level_begin = level_end;
  }
  return out;
}

std::vector<TraceSpec> enumerate_lassos(const Alphabet &alpha, int bound) {
  std::set<TraceSpec> seen;
  std::vector<TraceSpec> out;
  auto prefixes = enumerate_finite_traces(alpha, bound - 1);
  for (const auto &u : prefixes) {
    int room = bound - static_cast<int>(u.size());
    auto cycles = enumerate_finite_traces(alpha, room);
    for (const auto &v : cycles) {
      if (v.empty()) continue;
      TraceSpec t{u, v};
      auto c = t.canonical();
      if (seen.insert(c).second) out.push_back(c);
    }
  }
  return out;
}

}  // namespace recmon

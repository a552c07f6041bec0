#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "recmon/alphabet.hpp"
#include "recmon/process.hpp"
#include "recmon/trace.hpp"

namespace recmon {

// Finite labelled transition system with tau. States are indices; state-sets
// are bitmasks (at most 64 states, plenty at desk scale).
using StateSet = std::uint64_t;

class Lts {
 public:
  Lts() = default;

  int add_state(const std::string &name);
  void add_transition(int src, Action label, int dst);  // label may be kTau
  void set_initial(int s) { initial_ = s; }

  int num_states() const { return static_cast<int>(names_.size()); }
  int initial() const { return initial_; }
  const std::string &state_name(int s) const { return names_.at(static_cast<size_t>(s)); }
  int state_index(const std::string &name) const;  // -1 when unknown

  const std::vector<std::tuple<int, Action, int>> &transitions() const { return trans_; }

  // Strong successors of s on `label`.
  StateSet post(int s, Action label) const;
  // Weak successors: tau* for label == kTau, tau* a tau* otherwise.
  StateSet weak_post(int s, Action label) const;
  StateSet weak_post(StateSet ss, Action label) const;

  // Builds the weak-transition cache; called lazily by weak_post.
  void seal() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::tuple<int, Action, int>> trans_;
  int initial_ = 0;

  mutable bool sealed_ = false;
  mutable std::vector<StateSet> tau_closure_;                // per state
  mutable std::vector<std::vector<StateSet>> strong_;        // [action+1][state]
};

// Compiles a closed regular-CCS term into a finite LTS; rec unfolding is a
// tau step. States are canonical term strings.
Lts process_to_lts(const ProcessPtr &p, const Alphabet &alpha);

// Deterministic tau-free LTS whose weak language is exactly the prefixes of g
// (lasso cycles folded; the empty trace yields one deadlocked state).
Lts trace_process(const TraceSpec &g, const Alphabet &alpha);

// All finite traces of length <= bound producible from s via weak transitions,
// plus all canonical lassos with |prefix|+|cycle| <= bound that s can produce.
std::set<TraceSpec> produced_finfinite_traces(const Lts &l, int s, int bound,
                                              const Alphabet &alpha);

// LTS text format: `alphabet: a b c`, `initial: s0`, lines `s0 -a-> s1`
// (action may be tau). The alphabet line is optional when `alpha` is given.
Lts parse_lts(const std::string &text, Alphabet &alpha, bool alphabet_required);
std::string lts_to_string(const Lts &l, const Alphabet &alpha);

}  // namespace recmon

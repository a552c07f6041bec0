#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recmon/alphabet.hpp"

namespace recmon {

// Alternating finite automaton over the action alphabet. delta is monotone and
// represented per (state, action) as the antichain of minimal satisfying
// subsets of Q (state-sets as bitmasks; |Q| <= 64).
struct AlternatingAutomaton {
  int num_states = 0;
  int start = 0;
  std::uint64_t finals = 0;  // states accepting epsilon
  // models[state][action] = minimal S with delta(state, action)(S) = 1.
  std::vector<std::vector<std::vector<std::uint64_t>>> models;
  std::vector<std::string> labels;  // printable submonitor per state
};

struct Nfa {
  int num_states = 0;
  int start = 0;
  std::vector<bool> accepting;
  // next[state][action] = successor states.
  std::vector<std::vector<std::vector<int>>> next;
};

// Total deterministic automaton.
struct Dfa {
  int num_states = 0;
  int start = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<int>> next;  // next[state][action]

  int run(const std::vector<Action> &s) const {
    int q = start;
    for (Action a : s) q = next[static_cast<size_t>(q)][static_cast<size_t>(a)];
    return q;
  }
  bool accepts(const std::vector<Action> &s) const {
    return accepting[static_cast<size_t>(run(s))];
  }
};

// Language-preserving powerset step; unreachable subset states pruned and
// non-minimal requirement sets dropped.
Nfa alternating_to_nfa(const AlternatingAutomaton &a);

Dfa nfa_to_dfa(const Nfa &n);

// Hopcroft partition refinement; the result is the minimal total DFA.
Dfa minimize_dfa(const Dfa &d, int alphabet_size);

bool dfa_equivalent(const Dfa &a, const Dfa &b, int alphabet_size);
bool dfa_intersection_empty(const Dfa &a, const Dfa &b, int alphabet_size);
bool dfa_language_empty(const Dfa &d);

// Debug text format: `start q`, `accept q`, `state q [label]`,
// `edge src act dst[,dst...]` (alternating edges list one minimal set).
std::string to_string(const AlternatingAutomaton &a, const Alphabet &alpha);
std::string to_string(const Nfa &n, const Alphabet &alpha);
std::string to_string(const Dfa &d, const Alphabet &alpha);

}  // namespace recmon

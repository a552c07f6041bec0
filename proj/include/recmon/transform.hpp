#pragma once

#include "recmon/automata.hpp"
#include "recmon/engine.hpp"
#include "recmon/monitor.hpp"

namespace recmon {

enum class Polarity { accept, reject };

// The alternating automaton recognising L_a(m) (or L_r(m)): states are the
// submonitors of m, System N stepping, with the guard on the existential
// parallel operator requiring both sides to weakly analyse the action.
// Monitors containing parallel operators must be reactive; pure regular
// monitors convert unconditionally.
AlternatingAutomaton monitor_to_alternating(const MonitorPtr &m, Polarity pol,
                                            const Alphabet &alpha,
                                            const EngineOptions &opts = {});

// Minimal total DFA for L_a(m) or L_r(m) via the full pipeline.
Dfa monitor_language_dfa(const MonitorPtr &m, Polarity pol, const Alphabet &alpha,
                         const EngineOptions &opts = {});

// Deterministic regular monitor reaching yes exactly on d_acc's language and
// no exactly on d_rej's. Both languages must be extension-closed and disjoint.
MonitorPtr dfa_to_regular_monitor(const Dfa &d_acc, const Dfa &d_rej, const Alphabet &alpha);

// Full pipeline: parallel monitor -> alternating -> NFA -> DFA -> minimal DFA
// -> verdict-equivalent syntactically deterministic regular monitor.
MonitorPtr parallel_to_regular(const MonitorPtr &m, const Alphabet &alpha,
                               const EngineOptions &opts = {});

// Verdict-equivalent syntactically deterministic regular monitor for a
// consistent regular monitor (consistency checked exactly).
MonitorPtr determinize(const MonitorPtr &m, const Alphabet &alpha,
                       const EngineOptions &opts = {});

enum class EquivMode { exact, bounded };

// Acceptance- and rejection-equivalence. Exact mode demands both monitors be
// convertible to DFAs (regular, or reactive parallel); bounded mode compares
// weak_after verdicts on all |s| <= k.
bool verdict_equivalent(const MonitorPtr &m, const MonitorPtr &n, const Alphabet &alpha,
                        EquivMode mode = EquivMode::exact, int k = 6,
                        const EngineOptions &opts = {});

}  // namespace recmon

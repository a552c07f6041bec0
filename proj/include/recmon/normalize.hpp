#pragma once

#include <string>
#include <vector>

#include "recmon/engine.hpp"
#include "recmon/formula.hpp"
#include "recmon/monitor.hpp"

namespace recmon {

struct RewriteStep {
  std::string rule;
  FormulaPtr before, after;
};

struct RewriteTrace {
  std::vector<RewriteStep> steps;
};

// Slim normal form of an HML formula:
//   slim ::= tt | ff | AND_{a in A}[a]slim | OR_{a in A}<a>slim
// with distinct actions per family, A non-empty in the diamond family and no
// ff under a diamond. Rewrites strictly decrease the expanded length; the
// trace has at most length(f) steps. The result is linear-time equivalent.
std::pair<FormulaPtr, RewriteTrace> to_slim(const FormulaPtr &f, const Alphabet &alpha);

bool is_slim(const FormulaPtr &f, const Alphabet &alpha);

// Recursion removal for syntactically deterministic regular monitors:
// noRec(v)=v, noRec(sum a.m_a)=sum a.noRec(m_a), noRec(rec x.m)=noRec(m) via
// unfolding. At most |reach(m)|+1 unfold events are allowed along any path;
// exceeding the cap certifies that m is not complete for any property.
MonitorPtr no_rec(const MonitorPtr &m, const Alphabet &alpha, const EngineOptions &opts = {});

// Semantic tightness: for every finite s up to the horizon (monitor-DFA size
// times modal depth), if every lasso extension of s violates f then m rejects
// s already, and dually for satisfaction. f must be in HML.
bool is_tight(const MonitorPtr &m, const FormulaPtr &f, const Alphabet &alpha,
              const EngineOptions &opts = {});

// Sufficient structural condition for deterministic regular monitors: none of
// sum_{a in Act} a.no, rec x.no, sum_{a in Act} a.yes, rec x.yes occurs as a
// submonitor.
bool is_tight_structural(const MonitorPtr &m, const Alphabet &alpha);

}  // namespace recmon

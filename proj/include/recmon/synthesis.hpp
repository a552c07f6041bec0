#pragma once

#include "recmon/engine.hpp"
#include "recmon/formula.hpp"
#include "recmon/monitor.hpp"

namespace recmon {

enum class SynthesisMode {
  complete,                // HML -> dual-verdict parallel monitor
  violation,               // ltmuS/ftmuS -> sound, violation-complete
  satisfaction,            // ltmuC/ftmuC -> sound, satisfaction-complete
  branching_violation,     // sHML -> single-verdict regular rejection monitor
  branching_satisfaction,  // cHML -> single-verdict regular acceptance monitor
};

SynthesisMode parse_mode(const std::string &name);
std::string to_string(SynthesisMode mode);

// m(tt)=yes, m(ff)=no, m([A]p)=A.m(p)+~A.yes, m(<A>p)=A.m(p)+~A.no,
// conjunction/disjunction to the parallel operators; empty complement
// summands omitted. Requires f in HML, closed.
MonitorPtr synth_complete(const FormulaPtr &f, const Alphabet &alpha);

// Same clauses plus m(max X.p)=m(min X.p)=rec x.m(p), m(X)=x. Requires f
// closed and guarded, in ltmuS (violation) or ltmuC (satisfaction).
MonitorPtr synth_partial(const FormulaPtr &f, const Alphabet &alpha);

// Single-verdict regular synthesis for the branching-time fragments:
// sm(ff)=no, sm([A]p)=A.sm(p), conjunction to +, fixpoint to rec, tt to end
// in rejection mode; dual for cHML with yes.
MonitorPtr synth_branching(const FormulaPtr &f, const Alphabet &alpha);

// Dispatch on mode with the fragment checks of each variant.
MonitorPtr synthesize(const FormulaPtr &f, SynthesisMode mode, const Alphabet &alpha);

// mSyn: formula extraction from a recursion-free deterministic reactive
// monitor. mSyn(yes)=tt, mSyn(no)=ff, mSyn(end)=tt,
// mSyn(sum_{a in Act} a.m_a) = AND_a [a] mSyn(m_a).
FormulaPtr formula_from_monitor(const MonitorPtr &m, const Alphabet &alpha);

// red: introduces redundancies; rejects exactly the traces m rejects.
// red(end)=yes, red(m+n)=red(m)&&red(n), red(a.m)=a.red(m)+~a.yes, commutes
// with everything else.
MonitorPtr red(const MonitorPtr &m, const Alphabet &alpha);

// The constructive maximality pipeline: parallel-to-regular, determinize,
// recursion removal, then mSyn. Stage failures are reported with the stage
// name. Whenever m was sound and complete for some property, the result is a
// semantically equivalent HML formula.
FormulaPtr extract_complete_formula(const MonitorPtr &m, const Alphabet &alpha,
                                    const EngineOptions &opts = {});

}  // namespace recmon

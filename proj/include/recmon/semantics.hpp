#pragma once

#include "recmon/formula.hpp"
#include "recmon/lts.hpp"
#include "recmon/trace.hpp"

namespace recmon {

// Ground-truth oracles. All three evaluate closed guarded formulae by
// Knaster-Tarski fixpoint iteration over finite position/state lattices;
// nested fixpoints are recomputed naively per outer round.

// t must be a lasso. True iff t is in the linear-time denotation of f.
bool eval_linear(const FormulaPtr &f, const TraceSpec &t, const Alphabet &alpha);

// g may be finite or a lasso. Finfinite semantics: at the end of a finite
// trace <A>phi is false and [A]phi is true; on lassos agrees with eval_linear.
bool eval_finfinite(const FormulaPtr &f, const TraceSpec &g, const Alphabet &alpha);

// True iff state s of l satisfies f under the branching-time semantics
// (modalities over weak transitions).
bool eval_branching(const FormulaPtr &f, const Lts &l, int s, const Alphabet &alpha);

}  // namespace recmon

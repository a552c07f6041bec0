#pragma once

#include <memory>
#include <set>
#include <string>

#include "recmon/alphabet.hpp"

namespace recmon {

enum class FOp { Tt, Ff, And, Or, Box, Dia, Max, Min, Var };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable recHML AST node. Box/Dia carry a non-empty ActionSet and the body
// in `lhs`; Max/Min carry the binder in `name` and the body in `lhs`; Var
// carries `name`.
struct Formula {
  FOp op;
  ActionSet acts = 0;
  std::string name;
  FormulaPtr lhs, rhs;
};

FormulaPtr f_tt();
FormulaPtr f_ff();
FormulaPtr f_and(FormulaPtr l, FormulaPtr r);
FormulaPtr f_or(FormulaPtr l, FormulaPtr r);
FormulaPtr f_box(ActionSet a, FormulaPtr body);
FormulaPtr f_dia(ActionSet a, FormulaPtr body);
FormulaPtr f_max(std::string x, FormulaPtr body);
FormulaPtr f_min(std::string x, FormulaPtr body);
FormulaPtr f_var(std::string x);

bool is_fixpoint(FOp op);
bool is_modal(FOp op);

// Structural equality (exact names, exact action sets).
bool equal(const FormulaPtr &a, const FormulaPtr &b);

std::set<std::string> free_vars(const FormulaPtr &f);
bool is_closed(const FormulaPtr &f);

// Every recursion variable occurs under a modality within its binder's body.
bool is_guarded(const FormulaPtr &f);

// Capture-avoiding substitution of `repl` for free occurrences of `x`.
FormulaPtr substitute(const FormulaPtr &f, const std::string &x, const FormulaPtr &repl);

// Renames binders so that each bound variable has a unique binder; free
// variables are untouched. Applied by the parser.
FormulaPtr uniquify_binders(const FormulaPtr &f);

// Length of the formula as a string of symbols, with action-set modalities
// priced as their per-action expansion ([{a,b}]p counts as [a]p & [b]p).
long length(const FormulaPtr &f, const Alphabet &alpha);

// ms measure for guarded formulae: distance from the root to a constant or a
// modality, counting fixpoints and boolean connectives.
long measure_ms(const FormulaPtr &f);

// Longest nesting of modalities.
int modal_depth(const FormulaPtr &f);

// Syntactic dual: swaps tt/ff, and/or, box/diamond, max/min.
FormulaPtr dual(const FormulaPtr &f);

std::string to_string(const FormulaPtr &f, const Alphabet &alpha);

// Fragment membership flags (syntactic; variables permitted, closedness is
// tracked separately).
struct Fragment {
  bool hml = false;     // fixpoint-free recHML
  bool ltmus = false;   // maxHML: both modalities, max only
  bool ltmuc = false;   // minHML: both modalities, min only
  bool ftmus = false;   // box only, max only
  bool ftmuc = false;   // diamond only, min only
  bool shml = false;    // box, and, max
  bool chml = false;    // diamond, or, min
  bool closed = false;
  bool guarded = false;
};

Fragment classify(const FormulaPtr &f);

}  // namespace recmon

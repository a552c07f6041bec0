#pragma once

#include <string>

#include "recmon/formula.hpp"
#include "recmon/monitor.hpp"
#include "recmon/process.hpp"
#include "recmon/trace.hpp"

namespace recmon {

// Recursive-descent parsers for the concrete grammars. All report syntax
// errors with a character position, reject actions outside the alphabet and
// the reserved name tau (except in processes), and alpha-rename binders so
// every bound variable has a unique binder.
//
//   formula := "tt" | "ff" | "(" f ")" | "[" acts "]" f | "<" acts ">" f
//            | f "&" f | f "|" f | ("max"|"min") IDENT "." f | IDENT
//            with LTL sugar X f, f U g, f R g desugared at parse time;
//            precedence: modal prefix > U/R > "&" > "|".
//   acts    := IDENT {"," IDENT} | "*" | "~" "{" IDENT {"," IDENT} "}"
//   monitor := "yes" | "no" | "end" | "(" m ")" | act "." m | m "+" m
//            | m "&&" m | m "||" m | "rec" IDENT "." m | IDENT
//            precedence: prefix > "+" > "&&" > "||".
//   process := "nil" | ("tau"|act) "." p | p "+" p | "rec" IDENT "." p
//            | IDENT | "(" p ")"
//   trace   := [act {"." act}] ["(" act {"." act} ")"]   (empty = epsilon)

FormulaPtr parse_formula(const std::string &text, const Alphabet &alpha);
MonitorPtr parse_monitor(const std::string &text, const Alphabet &alpha);
ProcessPtr parse_process(const std::string &text, const Alphabet &alpha);
TraceSpec parse_trace(const std::string &text, const Alphabet &alpha);

}  // namespace recmon

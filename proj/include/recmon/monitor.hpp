#pragma once

#include <memory>
#include <set>
#include <string>

#include "recmon/alphabet.hpp"

namespace recmon {

enum class MOp { Yes, No, End, Act, Sum, ParAnd, ParOr, Rec, Var };

struct Monitor;
using MonitorPtr = std::shared_ptr<const Monitor>;

// Immutable monitor AST. Act carries the prefix action and the body in `lhs`;
// Rec carries the binder in `name`; ParAnd/ParOr are the conjunctive (&&) and
// disjunctive (||) parallel operators.
struct Monitor {
  MOp op;
  Action act = 0;
  std::string name;
  MonitorPtr lhs, rhs;
};

MonitorPtr m_yes();
MonitorPtr m_no();
MonitorPtr m_end();
MonitorPtr m_act(Action a, MonitorPtr body);
MonitorPtr m_sum(MonitorPtr l, MonitorPtr r);
MonitorPtr m_conj(MonitorPtr l, MonitorPtr r);
MonitorPtr m_disj(MonitorPtr l, MonitorPtr r);
MonitorPtr m_rec(std::string x, MonitorPtr body);
MonitorPtr m_var(std::string x);

// Sum of a.body for each a in the set, in canonical action order; nullptr when
// the set is empty (callers must omit the summand).
MonitorPtr m_prefix_set(ActionSet s, const MonitorPtr &body);

bool is_verdict(const MonitorPtr &m);
bool is_regular(const MonitorPtr &m);        // no parallel operators
bool is_recursion_free(const MonitorPtr &m); // no rec binders and no variables
bool is_single_verdict(const MonitorPtr &m); // at most one of {yes,no} occurs

// Every sum of two or more summands is of the form sum_{a in A} a.m_a.
bool is_syntactically_deterministic(const MonitorPtr &m);

bool equal(const MonitorPtr &a, const MonitorPtr &b);

std::set<std::string> free_vars(const MonitorPtr &m);
bool is_closed(const MonitorPtr &m);

MonitorPtr substitute(const MonitorPtr &m, const std::string &x, const MonitorPtr &repl);
MonitorPtr uniquify_binders(const MonitorPtr &m);

// Length as a string of symbols; bounds the number of submonitors.
long length(const MonitorPtr &m);

// The size measure from the state-space characterisation (rec is free).
long size_measure(const MonitorPtr &m);

std::string to_string(const MonitorPtr &m, const Alphabet &alpha);

// Canonical key: binders renamed in traversal order, then printed. Structural
// identity modulo alpha-renaming; used as the state identity for memoisation.
std::string canon_key(const MonitorPtr &m, const Alphabet &alpha);

// Compares two monitors modulo associativity/commutativity of + and the
// parallel operators (used for paper regression vectors).
bool equal_modulo_ac(const MonitorPtr &a, const MonitorPtr &b, const Alphabet &alpha);

}  // namespace recmon

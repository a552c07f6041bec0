#pragma once

#include <memory>
#include <set>
#include <string>

#include "recmon/alphabet.hpp"

namespace recmon {

enum class POp { Nil, Act, Sum, Rec, Var };

struct Process;
using ProcessPtr = std::shared_ptr<const Process>;

// Regular-CCS process terms. Act may carry kTau.
struct Process {
  POp op;
  Action act = 0;  // kTau allowed
  std::string name;
  ProcessPtr lhs, rhs;
};

ProcessPtr p_nil();
ProcessPtr p_act(Action a, ProcessPtr body);  // a may be kTau
ProcessPtr p_sum(ProcessPtr l, ProcessPtr r);
ProcessPtr p_rec(std::string x, ProcessPtr body);
ProcessPtr p_var(std::string x);

std::set<std::string> free_vars(const ProcessPtr &p);
bool is_closed(const ProcessPtr &p);
ProcessPtr substitute(const ProcessPtr &p, const std::string &x, const ProcessPtr &repl);
ProcessPtr uniquify_binders(const ProcessPtr &p);

std::string to_string(const ProcessPtr &p, const Alphabet &alpha);

}  // namespace recmon

#include "recmon/process.hpp"

#include <map>

#include "recmon/errors.hpp"

namespace recmon {

namespace {

ProcessPtr node(POp op, Action act, std::string name, ProcessPtr l, ProcessPtr r) {
  auto p = std::make_shared<Process>();
  p->op = op;
  p->act = act;
  p->name = std::move(name);
  p->lhs = std::move(l);
  p->rhs = std::move(r);
  return p;
}

std::string fresh_name(const std::string &base, const std::set<std::string> &avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

}  // namespace

ProcessPtr p_nil() {
  static const ProcessPtr n = node(POp::Nil, 0, {}, nullptr, nullptr);
  return n;
}
ProcessPtr p_act(Action a, ProcessPtr body) { return node(POp::Act, a, {}, std::move(body), nullptr); }
ProcessPtr p_sum(ProcessPtr l, ProcessPtr r) { return node(POp::Sum, 0, {}, std::move(l), std::move(r)); }
ProcessPtr p_rec(std::string x, ProcessPtr body) { return node(POp::Rec, 0, std::move(x), std::move(body), nullptr); }
ProcessPtr p_var(std::string x) { return node(POp::Var, 0, std::move(x), nullptr, nullptr); }

namespace {

void free_vars_into(const ProcessPtr &p, std::set<std::string> &bound,
                    std::set<std::string> &out) {
  switch (p->op) {
    case POp::Nil:
      return;
    case POp::Var:
      if (!bound.count(p->name)) out.insert(p->name);
      return;
    case POp::Act:
      free_vars_into(p->lhs, bound, out);
      return;
    case POp::Sum:
      free_vars_into(p->lhs, bound, out);
      free_vars_into(p->rhs, bound, out);
      return;
    case POp::Rec: {
      bool fresh = bound.insert(p->name).second;
      free_vars_into(p->lhs, bound, out);
      if (fresh) bound.erase(p->name);
      return;
    }
  }
}

}  // namespace

std::set<std::string> free_vars(const ProcessPtr &p) {
  std::set<std::string> bound, out;
  free_vars_into(p, bound, out);
  return out;
}

bool is_closed(const ProcessPtr &p) { return free_vars(p).empty(); }

ProcessPtr substitute(const ProcessPtr &p, const std::string &x, const ProcessPtr &repl) {
  switch (p->op) {
    case POp::Nil:
      return p;
    case POp::Var:
      return p->name == x ? repl : p;
    case POp::Act:
      return p_act(p->act, substitute(p->lhs, x, repl));
    case POp::Sum:
      return p_sum(substitute(p->lhs, x, repl), substitute(p->rhs, x, repl));
    case POp::Rec: {
      if (p->name == x) return p;
      auto fv = free_vars(p->lhs);
      if (!fv.count(x)) return p;
      auto rv = free_vars(repl);
      std::string binder = p->name;
      ProcessPtr body = p->lhs;
      if (rv.count(binder)) {
        std::set<std::string> avoid = rv;
        for (const auto &v : fv) avoid.insert(v);
        std::string nb = fresh_name(binder, avoid);
        body = substitute(body, binder, p_var(nb));
        binder = nb;
      }
      return p_rec(binder, substitute(body, x, repl));
    }
  }
  return p;
}

namespace {

ProcessPtr uniquify(const ProcessPtr &p, std::map<std::string, std::string> &scope,
                    std::set<std::string> &used) {
  switch (p->op) {
    case POp::Nil:
      return p;
    case POp::Var: {
      auto it = scope.find(p->name);
      return it == scope.end() ? p : p_var(it->second);
    }
    case POp::Act:
      return p_act(p->act, uniquify(p->lhs, scope, used));
    case POp::Sum: {
      auto l = uniquify(p->lhs, scope, used);
      auto r = uniquify(p->rhs, scope, used);
      return p_sum(l, r);
    }
    case POp::Rec: {
      std::string binder = fresh_name(p->name, used);
      used.insert(binder);
      auto saved = scope.find(p->name);
      std::string prev;
      bool had = saved != scope.end();
      if (had) prev = saved->second;
      scope[p->name] = binder;
      auto body = uniquify(p->lhs, scope, used);
      if (had)
        scope[p->name] = prev;
      else
        scope.erase(p->name);
      return p_rec(binder, body);
    }
  }
  return p;
}

// precedence: 0 = +, 1 = prefix/atom
void print(const ProcessPtr &p, const Alphabet &alpha, int prec, std::string &out) {
  switch (p->op) {
    case POp::Nil:
      out += "nil";
      return;
    case POp::Var:
      out += p->name;
      return;
    case POp::Act:
      out += (p->act == kTau ? std::string("tau") : alpha.name(p->act)) + ".";
      print(p->lhs, alpha, 1, out);
      return;
    case POp::Sum: {
      bool paren = prec > 0;
      if (paren) out += "(";
      print(p->lhs, alpha, 1, out);
      out += " + ";
      print(p->rhs, alpha, 0, out);
      if (paren) out += ")";
      return;
    }
    case POp::Rec: {
      bool paren = prec > 0;
      if (paren) out += "(";
      out += "rec " + p->name + ".";
      print(p->lhs, alpha, 0, out);
      if (paren) out += ")";
      return;
    }
  }
}

}  // namespace

ProcessPtr uniquify_binders(const ProcessPtr &p) {
  std::map<std::string, std::string> scope;
  std::set<std::string> used = free_vars(p);
  return uniquify(p, scope, used);
}

std::string to_string(const ProcessPtr &p, const Alphabet &alpha) {
  std::string out;
  print(p, alpha, 0, out);
  return out;
}

}  // namespace recmon

#include "recmon/formula.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

#include "recmon/errors.hpp"

namespace recmon {

namespace {

FormulaPtr node(FOp op, ActionSet acts, std::string name, FormulaPtr l, FormulaPtr r) {
  auto f = std::make_shared<Formula>();
  f->op = op;
  f->acts = acts;
  f->name = std::move(name);
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  return f;
}

}  // namespace

FormulaPtr f_tt() {
  static const FormulaPtr t = node(FOp::Tt, 0, {}, nullptr, nullptr);
  return t;
}
FormulaPtr f_ff() {
  static const FormulaPtr f = node(FOp::Ff, 0, {}, nullptr, nullptr);
  return f;
}
FormulaPtr f_and(FormulaPtr l, FormulaPtr r) {
  return node(FOp::And, 0, {}, std::move(l), std::move(r));
}
FormulaPtr f_or(FormulaPtr l, FormulaPtr r) {
  return node(FOp::Or, 0, {}, std::move(l), std::move(r));
}
FormulaPtr f_box(ActionSet a, FormulaPtr body) {
  if (a == 0) fail(Errc::input, "empty action set in modality");
  return node(FOp::Box, a, {}, std::move(body), nullptr);
}
FormulaPtr f_dia(ActionSet a, FormulaPtr body) {
  if (a == 0) fail(Errc::input, "empty action set in modality");
  return node(FOp::Dia, a, {}, std::move(body), nullptr);
}
FormulaPtr f_max(std::string x, FormulaPtr body) {
  return node(FOp::Max, 0, std::move(x), std::move(body), nullptr);
}
FormulaPtr f_min(std::string x, FormulaPtr body) {
  return node(FOp::Min, 0, std::move(x), std::move(body), nullptr);
}
FormulaPtr f_var(std::string x) { return node(FOp::Var, 0, std::move(x), nullptr, nullptr); }

bool is_fixpoint(FOp op) { return op == FOp::Max || op == FOp::Min; }
bool is_modal(FOp op) { return op == FOp::Box || op == FOp::Dia; }

bool equal(const FormulaPtr &a, const FormulaPtr &b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op || a->acts != b->acts || a->name != b->name) return false;
  return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

namespace {

void free_vars_into(const FormulaPtr &f, std::set<std::string> &bound,
                    std::set<std::string> &out) {
  switch (f->op) {
    case FOp::Tt:
    case FOp::Ff:
      return;
    case FOp::Var:
      if (!bound.count(f->name)) out.insert(f->name);
      return;
    case FOp::And:
    case FOp::Or:
      free_vars_into(f->lhs, bound, out);
      free_vars_into(f->rhs, bound, out);
      return;
    case FOp::Box:
    case FOp::Dia:
      free_vars_into(f->lhs, bound, out);
      return;
    case FOp::Max:
    case FOp::Min: {
      bool fresh = bound.insert(f->name).second;
      free_vars_into(f->lhs, bound, out);
      if (fresh) bound.erase(f->name);
      return;
    }
  }
}

}  // namespace

std::set<std::string> free_vars(const FormulaPtr &f) {
  std::set<std::string> bound, out;
  free_vars_into(f, bound, out);
  return out;
}

bool is_closed(const FormulaPtr &f) { return free_vars(f).empty(); }

namespace {

// True when every free occurrence of x in f is under a modality.
bool occurrences_guarded(const FormulaPtr &f, const std::string &x) {
  switch (f->op) {
    case FOp::Tt:
    case FOp::Ff:
      return true;
    case FOp::Var:
      return f->name != x;
    case FOp::Box:
    case FOp::Dia:
      return true;  // everything below is guarded by this modality
    case FOp::And:
    case FOp::Or:
      return occurrences_guarded(f->lhs, x) && occurrences_guarded(f->rhs, x);
    case FOp::Max:
    case FOp::Min:
      if (f->name == x) return true;  // shadowed
      return occurrences_guarded(f->lhs, x);
  }
  return true;
}

}  // namespace

bool is_guarded(const FormulaPtr &f) {
  switch (f->op) {
    case FOp::Tt:
    case FOp::Ff:
    case FOp::Var:
      return true;
    case FOp::And:
    case FOp::Or:
      return is_guarded(f->lhs) && is_guarded(f->rhs);
    case FOp::Box:
    case FOp::Dia:
      return is_guarded(f->lhs);
    case FOp::Max:
    case FOp::Min:
      return occurrences_guarded(f->lhs, f->name) && is_guarded(f->lhs);
  }
  return true;
}

namespace {

std::string fresh_name(const std::string &base, const std::set<std::string> &avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

}  // namespace

FormulaPtr substitute(const FormulaPtr &f, const std::string &x, const FormulaPtr &repl) {
  switch (f->op) {
    case FOp::Tt:
    case FOp::Ff:
      return f;
    case FOp::Var:
      return f->name == x ? repl : f;
    case FOp::And:
      return f_and(substitute(f->lhs, x, repl), substitute(f->rhs, x, repl));
    case FOp::Or:
      return f_or(substitute(f->lhs, x, repl), substitute(f->rhs, x, repl));
    case FOp::Box:
      return f_box(f->acts, substitute(f->lhs, x, repl));
    case FOp::Dia:
      return f_dia(f->acts, substitute(f->lhs, x, repl));
    case FOp::Max:
    case FOp::Min: {
      if (f->name == x) return f;  // shadowed
      auto fv = free_vars(f->lhs);
      if (!fv.count(x)) return f;
      auto rv = free_vars(repl);
      std::string binder = f->name;
      FormulaPtr body = f->lhs;
      if (rv.count(binder)) {  // would capture: rename this binder first
        std::set<std::string> avoid = rv;
        for (const auto &v : fv) avoid.insert(v);
        std::string nb = fresh_name(binder, avoid);
        body = substitute(body, binder, f_var(nb));
        binder = nb;
      }
      body = substitute(body, x, repl);
      return f->op == FOp::Max ? f_max(binder, body) : f_min(binder, body);
    }
  }
  return f;
}

namespace {

FormulaPtr uniquify(const FormulaPtr &f, std::map<std::string, std::string> &scope,
                    std::set<std::string> &used) {
  switch (f->op) {
    case FOp::Tt:
    case FOp::Ff:
      return f;
    case FOp::Var: {
      auto it = scope.find(f->name);
      return it == scope.end() ? f : f_var(it->second);
    }
    case FOp::And: {
      auto l = uniquify(f->lhs, scope, used);
      auto r = uniquify(f->rhs, scope, used);
      return f_and(l, r);
    }
    case FOp::Or: {
      auto l = uniquify(f->lhs, scope, used);
      auto r = uniquify(f->rhs, scope, used);
      return f_or(l, r);
    }
    case FOp::Box:
      return f_box(f->acts, uniquify(f->lhs, scope, used));
    case FOp::Dia:
      return f_dia(f->acts, uniquify(f->lhs, scope, used));
    case FOp::Max:
    case FOp::Min: {
      std::string binder = fresh_name(f->name, used);
      used.insert(binder);
      auto saved = scope.find(f->name);
      std::string prev;
      bool had = saved != scope.end();
      if (had) prev = saved->second;
      scope[f->name] = binder;
      auto body = uniquify(f->lhs, scope, used);
      if (had)
        scope[f->name] = prev;
      else
        scope.erase(f->name);
      return f->op == FOp::Max ? f_max(binder, body) : f_min(binder, body);
    }
  }
  return f;
}

}  // namespace

FormulaPtr uniquify_binders(const FormulaPtr &f) {
  std::map<std::string, std::string> scope;
  std::set<std::string> used = free_vars(f);
  return uniquify(f, scope, used);
}

long length(const FormulaPtr &f, const Alphabet &alpha) {
  switch (f->op) {
    case FOp::Tt:
    case FOp::Ff:
    case FOp::Var:
      return 1;
    case FOp::And:
    case FOp::Or:
      return length(f->lhs, alpha) + length(f->rhs, alpha) + 1;
    case FOp::Box:
    case FOp::Dia: {
      // priced as the per-action family
      long k = set_size(f->acts);
      return k * (1 + length(f->lhs, alpha)) + (k - 1);
    }
    case FOp::Max:
    case FOp::Min:
      return 2 + length(f->lhs, alpha);
  }
  return 1;
}

long measure_ms(const FormulaPtr &f) {
  switch (f->op) {
    case FOp::Tt:
    case FOp::Ff:
    case FOp::Box:
    case FOp::Dia:
      return 0;
    case FOp::Var:
      return 0;
    case FOp::And:
    case FOp::Or:
      return std::max(measure_ms(f->lhs), measure_ms(f->rhs)) + 1;
    case FOp::Max:
    case FOp::Min:
      return measure_ms(f->lhs) + 1;
  }
  return 0;
}

int modal_depth(const FormulaPtr &f) {
  switch (f->op) {
    case FOp::Tt:
    case FOp::Ff:
    case FOp::Var:
      return 0;
    case FOp::And:
    case FOp::Or:
      return std::max(modal_depth(f->lhs), modal_depth(f->rhs));
    case FOp::Box:
    case FOp::Dia:
      return 1 + modal_depth(f->lhs);
    case FOp::Max:
    case FOp::Min:
      return modal_depth(f->lhs);
  }
  return 0;
}

FormulaPtr dual(const FormulaPtr &f) {
  switch (f->op) {
    case FOp::Tt:
      return f_ff();
    case FOp::Ff:
      return f_tt();
    case FOp::Var:
      return f;
    case FOp::And:
      return f_or(dual(f->lhs), dual(f->rhs));
    case FOp::Or:
      return f_and(dual(f->lhs), dual(f->rhs));
    case FOp::Box:
      return f_dia(f->acts, dual(f->lhs));
    case FOp::Dia:
      return f_box(f->acts, dual(f->lhs));
    case FOp::Max:
      return f_min(f->name, dual(f->lhs));
    case FOp::Min:
      return f_max(f->name, dual(f->lhs));
  }
  return f;
}

std::string Alphabet::set_to_string(ActionSet s) const {
  if (s == all() && size() > 1) return "*";
  std::string out;
  bool first = true;
  for_each_action(s, [&](Action a) {
    if (!first) out += ",";
    out += name(a);
    first = false;
  });
  return out;
}

Alphabet Alphabet::from_csv(const std::string &csv) {
  std::vector<std::string> names;
  std::string cur;
  for (char c : csv) {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) names.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) names.push_back(cur);
  return Alphabet(names);
}

namespace {

// precedence: 0 = |, 1 = &, 2 = prefix/atom
void print(const FormulaPtr &f, const Alphabet &alpha, int prec, std::string &out) {
  switch (f->op) {
    case FOp::Tt:
      out += "tt";
      return;
    case FOp::Ff:
      out += "ff";
      return;
    case FOp::Var:
      out += f->name;
      return;
    case FOp::Box:
      out += "[" + alpha.set_to_string(f->acts) + "]";
      print(f->lhs, alpha, 2, out);
      return;
    case FOp::Dia:
      out += "<" + alpha.set_to_string(f->acts) + ">";
      print(f->lhs, alpha, 2, out);
      return;
    case FOp::And: {
      bool paren = prec > 1;
      if (paren) out += "(";
      print(f->lhs, alpha, 2, out);
      out += " & ";
      print(f->rhs, alpha, 1, out);
      if (paren) out += ")";
      return;
    }
    case FOp::Or: {
      bool paren = prec > 0;
      if (paren) out += "(";
      print(f->lhs, alpha, 1, out);
      out += " | ";
      print(f->rhs, alpha, 0, out);
      if (paren) out += ")";
      return;
    }
    case FOp::Max:
    case FOp::Min: {
      bool paren = prec > 0;
      if (paren) out += "(";
      out += (f->op == FOp::Max ? "max " : "min ") + f->name + ".";
      print(f->lhs, alpha, 0, out);
      if (paren) out += ")";
      return;
    }
  }
}

}  // namespace

std::string to_string(const FormulaPtr &f, const Alphabet &alpha) {
  std::string out;
  print(f, alpha, 0, out);
  return out;
}

namespace {

struct FragWalk {
  bool has_box = false, has_dia = false, has_and = false, has_or = false;
  bool has_max = false, has_min = false, has_var = false;
};

void walk(const FormulaPtr &f, FragWalk &w) {
  switch (f->op) {
    case FOp::Tt:
    case FOp::Ff:
      return;
    case FOp::Var:
      w.has_var = true;
      return;
    case FOp::And:
      w.has_and = true;
      walk(f->lhs, w);
      walk(f->rhs, w);
      return;
    case FOp::Or:
      w.has_or = true;
      walk(f->lhs, w);
      walk(f->rhs, w);
      return;
    case FOp::Box:
      w.has_box = true;
      walk(f->lhs, w);
      return;
    case FOp::Dia:
      w.has_dia = true;
      walk(f->lhs, w);
      return;
    case FOp::Max:
      w.has_max = true;
      walk(f->lhs, w);
      return;
    case FOp::Min:
      w.has_min = true;
      walk(f->lhs, w);
      return;
  }
}

}  // namespace

Fragment classify(const FormulaPtr &f) {
  FragWalk w;
  walk(f, w);
  Fragment fr;
  fr.hml = !w.has_max && !w.has_min && !w.has_var;
  fr.ltmus = !w.has_min;
  fr.ltmuc = !w.has_max;
  fr.ftmus = fr.ltmus && !w.has_dia;
  fr.ftmuc = fr.ltmuc && !w.has_box;
  fr.shml = fr.ftmus && !w.has_or;
  fr.chml = fr.ftmuc && !w.has_and;
  fr.closed = is_closed(f);
  fr.guarded = is_guarded(f);
  return fr;
}

}  // namespace recmon

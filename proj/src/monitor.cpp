#include "recmon/monitor.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "recmon/errors.hpp"

namespace recmon {

namespace {

MonitorPtr node(MOp op, Action act, std::string name, MonitorPtr l, MonitorPtr r) {
  auto m = std::make_shared<Monitor>();
  m->op = op;
  m->act = act;
  m->name = std::move(name);
  m->lhs = std::move(l);
  m->rhs = std::move(r);
  return m;
}

}  // namespace

MonitorPtr m_yes() {
  static const MonitorPtr v = node(MOp::Yes, 0, {}, nullptr, nullptr);
  return v;
}
MonitorPtr m_no() {
  static const MonitorPtr v = node(MOp::No, 0, {}, nullptr, nullptr);
  return v;
}
MonitorPtr m_end() {
  static const MonitorPtr v = node(MOp::End, 0, {}, nullptr, nullptr);
  return v;
}
MonitorPtr m_act(Action a, MonitorPtr body) { return node(MOp::Act, a, {}, std::move(body), nullptr); }
MonitorPtr m_sum(MonitorPtr l, MonitorPtr r) { return node(MOp::Sum, 0, {}, std::move(l), std::move(r)); }
MonitorPtr m_conj(MonitorPtr l, MonitorPtr r) { return node(MOp::ParAnd, 0, {}, std::move(l), std::move(r)); }
MonitorPtr m_disj(MonitorPtr l, MonitorPtr r) { return node(MOp::ParOr, 0, {}, std::move(l), std::move(r)); }
MonitorPtr m_rec(std::string x, MonitorPtr body) { return node(MOp::Rec, 0, std::move(x), std::move(body), nullptr); }
MonitorPtr m_var(std::string x) { return node(MOp::Var, 0, std::move(x), nullptr, nullptr); }

MonitorPtr m_prefix_set(ActionSet s, const MonitorPtr &body) {
  MonitorPtr out;
  for_each_action(s, [&](Action a) {
    auto summand = m_act(a, body);
    out = out ? m_sum(out, summand) : summand;
  });
  return out;
}

bool is_verdict(const MonitorPtr &m) {
  return m->op == MOp::Yes || m->op == MOp::No || m->op == MOp::End;
}

bool is_regular(const MonitorPtr &m) {
  switch (m->op) {
    case MOp::ParAnd:
    case MOp::ParOr:
      return false;
    case MOp::Act:
    case MOp::Rec:
      return is_regular(m->lhs);
    case MOp::Sum:
      return is_regular(m->lhs) && is_regular(m->rhs);
    default:
      return true;
  }
}

bool is_recursion_free(const MonitorPtr &m) {
  switch (m->op) {
    case MOp::Rec:
    case MOp::Var:
      return false;
    case MOp::Act:
      return is_recursion_free(m->lhs);
    case MOp::Sum:
    case MOp::ParAnd:
    case MOp::ParOr:
      return is_recursion_free(m->lhs) && is_recursion_free(m->rhs);
    default:
      return true;
  }
}

namespace {

void count_verdicts(const MonitorPtr &m, bool &has_yes, bool &has_no) {
  switch (m->op) {
    case MOp::Yes:
      has_yes = true;
      return;
    case MOp::No:
      has_no = true;
      return;
    case MOp::Act:
    case MOp::Rec:
      count_verdicts(m->lhs, has_yes, has_no);
      return;
    case MOp::Sum:
    case MOp::ParAnd:
    case MOp::ParOr:
      count_verdicts(m->lhs, has_yes, has_no);
      count_verdicts(m->rhs, has_yes, has_no);
      return;
    default:
      return;
  }
}

void sum_family(const MonitorPtr &m, std::vector<MonitorPtr> &out) {
  if (m->op == MOp::Sum) {
    sum_family(m->lhs, out);
    sum_family(m->rhs, out);
  } else {
    out.push_back(m);
  }
}

}  // namespace

bool is_single_verdict(const MonitorPtr &m) {
  bool y = false, n = false;
  count_verdicts(m, y, n);
  return !(y && n);
}

bool is_syntactically_deterministic(const MonitorPtr &m) {
  switch (m->op) {
    case MOp::Yes:
    case MOp::No:
    case MOp::End:
    case MOp::Var:
      return true;
    case MOp::Act:
    case MOp::Rec:
      return is_syntactically_deterministic(m->lhs);
    case MOp::Sum: {
      std::vector<MonitorPtr> fam;
      sum_family(m, fam);
      ActionSet seen = 0;
      for (const auto &s : fam) {
        if (s->op != MOp::Act) return false;
        if (set_contains(seen, s->act)) return false;
        seen |= set_of(s->act);
        if (!is_syntactically_deterministic(s->lhs)) return false;
      }
      return true;
    }
    case MOp::ParAnd:
    case MOp::ParOr:
      return is_syntactically_deterministic(m->lhs) &&
             is_syntactically_deterministic(m->rhs);
  }
  return true;
}

bool equal(const MonitorPtr &a, const MonitorPtr &b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op || a->act != b->act || a->name != b->name) return false;
  return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

namespace {

void free_vars_into(const MonitorPtr &m, std::set<std::string> &bound,
                    std::set<std::string> &out) {
  switch (m->op) {
    case MOp::Var:
      if (!bound.count(m->name)) out.insert(m->name);
      return;
    case MOp::Act:
      free_vars_into(m->lhs, bound, out);
      return;
    case MOp::Sum:
    case MOp::ParAnd:
    case MOp::ParOr:
      free_vars_into(m->lhs, bound, out);
      free_vars_into(m->rhs, bound, out);
      return;
    case MOp::Rec: {
      bool fresh = bound.insert(m->name).second;
      free_vars_into(m->lhs, bound, out);
      if (fresh) bound.erase(m->name);
      return;
    }
    default:
      return;
  }
}

std::string fresh_name(const std::string &base, const std::set<std::string> &avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

}  // namespace

std::set<std::string> free_vars(const MonitorPtr &m) {
  std::set<std::string> bound, out;
  free_vars_into(m, bound, out);
  return out;
}

bool is_closed(const MonitorPtr &m) { return free_vars(m).empty(); }

MonitorPtr substitute(const MonitorPtr &m, const std::string &x, const MonitorPtr &repl) {
  switch (m->op) {
    case MOp::Yes:
    case MOp::No:
    case MOp::End:
      return m;
    case MOp::Var:
      return m->name == x ? repl : m;
    case MOp::Act:
      return m_act(m->act, substitute(m->lhs, x, repl));
    case MOp::Sum:
      return m_sum(substitute(m->lhs, x, repl), substitute(m->rhs, x, repl));
    case MOp::ParAnd:
      return m_conj(substitute(m->lhs, x, repl), substitute(m->rhs, x, repl));
    case MOp::ParOr:
      return m_disj(substitute(m->lhs, x, repl), substitute(m->rhs, x, repl));
    case MOp::Rec: {
      if (m->name == x) return m;
      auto fv = free_vars(m->lhs);
      if (!fv.count(x)) return m;
      auto rv = free_vars(repl);
      std::string binder = m->name;
      MonitorPtr body = m->lhs;
      if (rv.count(binder)) {
        std::set<std::string> avoid = rv;
        for (const auto &v : fv) avoid.insert(v);
        std::string nb = fresh_name(binder, avoid);
        body = substitute(body, binder, m_var(nb));
        binder = nb;
      }
      return m_rec(binder, substitute(body, x, repl));
    }
  }
  return m;
}

namespace {

MonitorPtr uniquify(const MonitorPtr &m, std::map<std::string, std::string> &scope,
                    std::set<std::string> &used) {
  switch (m->op) {
    case MOp::Yes:
    case MOp::No:
    case MOp::End:
      return m;
    case MOp::Var: {
      auto it = scope.find(m->name);
      return it == scope.end() ? m : m_var(it->second);
    }
    case MOp::Act:
      return m_act(m->act, uniquify(m->lhs, scope, used));
    case MOp::Sum: {
      auto l = uniquify(m->lhs, scope, used);
      auto r = uniquify(m->rhs, scope, used);
      return m_sum(l, r);
    }
    case MOp::ParAnd: {
      auto l = uniquify(m->lhs, scope, used);
      auto r = uniquify(m->rhs, scope, used);
      return m_conj(l, r);
    }
    case MOp::ParOr: {
      auto l = uniquify(m->lhs, scope, used);
      auto r = uniquify(m->rhs, scope, used);
      return m_disj(l, r);
    }
    case MOp::Rec: {
      std::string binder = fresh_name(m->name, used);
      used.insert(binder);
      auto saved = scope.find(m->name);
      std::string prev;
      bool had = saved != scope.end();
      if (had) prev = saved->second;
      scope[m->name] = binder;
      auto body = uniquify(m->lhs, scope, used);
      if (had)
        scope[m->name] = prev;
      else
        scope.erase(m->name);
      return m_rec(binder, body);
    }
  }
  return m;
}

}  // namespace

MonitorPtr uniquify_binders(const MonitorPtr &m) {
  std::map<std::string, std::string> scope;
  std::set<std::string> used = free_vars(m);
  return uniquify(m, scope, used);
}

long length(const MonitorPtr &m) {
  switch (m->op) {
    case MOp::Yes:
    case MOp::No:
    case MOp::End:
    case MOp::Var:
      return 1;
    case MOp::Act:
      return 1 + length(m->lhs);
    case MOp::Sum:
    case MOp::ParAnd:
    case MOp::ParOr:
      return length(m->lhs) + length(m->rhs) + 1;
    case MOp::Rec:
      return 2 + length(m->lhs);
  }
  return 1;
}

long size_measure(const MonitorPtr &m) {
  switch (m->op) {
    case MOp::Yes:
    case MOp::No:
    case MOp::End:
    case MOp::Var:
      return 1;
    case MOp::Act:
      return 1 + size_measure(m->lhs);
    case MOp::Sum:
    case MOp::ParAnd:
    case MOp::ParOr:
      return 1 + size_measure(m->lhs) + size_measure(m->rhs);
    case MOp::Rec:
      return size_measure(m->lhs);
  }
  return 1;
}

namespace {

// precedence: 0 = ||, 1 = &&, 2 = +, 3 = prefix/atom
void print(const MonitorPtr &m, const Alphabet &alpha, int prec,
           const std::map<std::string, std::string> *rename, std::string &out) {
  switch (m->op) {
    case MOp::Yes:
      out += "yes";
      return;
    case MOp::No:
      out += "no";
      return;
    case MOp::End:
      out += "end";
      return;
    case MOp::Var: {
      if (rename) {
        auto it = rename->find(m->name);
        out += it == rename->end() ? m->name : it->second;
      } else {
        out += m->name;
      }
      return;
    }
    case MOp::Act:
      out += alpha.name(m->act) + ".";
      print(m->lhs, alpha, 3, rename, out);
      return;
    case MOp::Sum: {
      bool paren = prec > 2;
      if (paren) out += "(";
      print(m->lhs, alpha, 3, rename, out);
      out += " + ";
      print(m->rhs, alpha, 2, rename, out);
      if (paren) out += ")";
      return;
    }
    case MOp::ParAnd: {
      bool paren = prec > 1;
      if (paren) out += "(";
      print(m->lhs, alpha, 2, rename, out);
      out += " && ";
      print(m->rhs, alpha, 1, rename, out);
      if (paren) out += ")";
      return;
    }
    case MOp::ParOr: {
      bool paren = prec > 0;
      if (paren) out += "(";
      print(m->lhs, alpha, 1, rename, out);
      out += " || ";
      print(m->rhs, alpha, 0, rename, out);
      if (paren) out += ")";
      return;
    }
    case MOp::Rec: {
      bool paren = prec > 0;
      if (paren) out += "(";
      out += "rec ";
      if (rename) {
        auto it = rename->find(m->name);
        out += it == rename->end() ? m->name : it->second;
      } else {
        out += m->name;
      }
      out += ".";
      print(m->lhs, alpha, 0, rename, out);
      if (paren) out += ")";
      return;
    }
  }
}

void collect_binders(const MonitorPtr &m, std::map<std::string, std::string> &rename,
                     int &counter) {
  switch (m->op) {
    case MOp::Rec:
      if (!rename.count(m->name)) rename[m->name] = "%" + std::to_string(counter++);
      collect_binders(m->lhs, rename, counter);
      return;
    case MOp::Act:
      collect_binders(m->lhs, rename, counter);
      return;
    case MOp::Sum:
    case MOp::ParAnd:
    case MOp::ParOr:
      collect_binders(m->lhs, rename, counter);
      collect_binders(m->rhs, rename, counter);
      return;
    default:
      return;
  }
}

}  // namespace

std::string to_string(const MonitorPtr &m, const Alphabet &alpha) {
  std::string out;
  print(m, alpha, 0, nullptr, out);
  return out;
}

std::string canon_key(const MonitorPtr &m, const Alphabet &alpha) {
  // Note: binder names are renamed positionally; with unique binders this is
  // exactly identity modulo alpha-conversion. Free variables keep their name.
  std::map<std::string, std::string> rename;
  int counter = 0;
  collect_binders(m, rename, counter);
  std::string out;
  print(m, alpha, 0, &rename, out);
  return out;
}

namespace {

void ac_family(const MonitorPtr &m, MOp op, std::vector<MonitorPtr> &out) {
  if (m->op == op) {
    ac_family(m->lhs, op, out);
    ac_family(m->rhs, op, out);
  } else {
    out.push_back(m);
  }
}

std::string ac_key(const MonitorPtr &m, const Alphabet &alpha) {
  switch (m->op) {
    case MOp::Sum:
    case MOp::ParAnd:
    case MOp::ParOr: {
      std::vector<MonitorPtr> fam;
      ac_family(m, m->op, fam);
      std::vector<std::string> keys;
      keys.reserve(fam.size());
      for (const auto &s : fam) keys.push_back(ac_key(s, alpha));
      std::sort(keys.begin(), keys.end());
      const char *tag = m->op == MOp::Sum ? "+" : (m->op == MOp::ParAnd ? "&&" : "||");
      std::string out = std::string("(") + tag;
      for (const auto &k : keys) out += " " + k;
      return out + ")";
    }
    case MOp::Act:
      return alpha.name(m->act) + "." + ac_key(m->lhs, alpha);
    case MOp::Rec:
      return "rec " + m->name + "." + ac_key(m->lhs, alpha);
    default:
      return to_string(m, alpha);
  }
}

}  // namespace

bool equal_modulo_ac(const MonitorPtr &a, const MonitorPtr &b, const Alphabet &alpha) {
  return ac_key(uniquify_binders(a), alpha) == ac_key(uniquify_binders(b), alpha);
}

}  // namespace recmon

#include "recmon/normalize.hpp"

#include <functional>
#include <map>
#include <optional>

#include "recmon/errors.hpp"
#include "recmon/semantics.hpp"
#include "recmon/transform.hpp"

namespace recmon {

namespace {

// [{a,b}]p as the family [a]p & [b]p, in canonical action order.
FormulaPtr expand_sets(const FormulaPtr &f) {
  switch (f->op) {
    case FOp::Tt:
    case FOp::Ff:
    case FOp::Var:
      return f;
    case FOp::And:
      return f_and(expand_sets(f->lhs), expand_sets(f->rhs));
    case FOp::Or:
      return f_or(expand_sets(f->lhs), expand_sets(f->rhs));
    case FOp::Max:
      return f_max(f->name, expand_sets(f->lhs));
    case FOp::Min:
      return f_min(f->name, expand_sets(f->lhs));
    case FOp::Box:
    case FOp::Dia: {
      FormulaPtr body = expand_sets(f->lhs);
      FormulaPtr out;
      for_each_action(f->acts, [&](Action a) {
        FormulaPtr atom = f->op == FOp::Box ? f_box(set_of(a), body) : f_dia(set_of(a), body);
        out = out ? (f->op == FOp::Box ? f_and(out, atom) : f_or(out, atom)) : atom;
      });
      return out;
    }
  }
  return f;
}

// Family view of a slim-shaped formula: a conjunction tree of boxes or a
// disjunction tree of diamonds, with per-action bodies.
struct Family {
  bool box = false;
  std::map<Action, FormulaPtr> bodies;  // canonical action order
};

std::optional<Family> box_family(const FormulaPtr &f) {
  Family fam;
  fam.box = true;
  std::vector<FormulaPtr> stack{f};
  while (!stack.empty()) {
    FormulaPtr cur = stack.back();
    stack.pop_back();
    if (cur->op == FOp::And) {
      stack.push_back(cur->lhs);
      stack.push_back(cur->rhs);
      continue;
    }
    if (cur->op != FOp::Box) return std::nullopt;
    bool dup = false;
    for_each_action(cur->acts, [&](Action a) {
      if (!fam.bodies.emplace(a, cur->lhs).second) dup = true;
    });
    if (dup) return std::nullopt;  // repeated action: family not yet merged
  }
  return fam;
}

std::optional<Family> dia_family(const FormulaPtr &f) {
  Family fam;
  fam.box = false;
  std::vector<FormulaPtr> stack{f};
  while (!stack.empty()) {
    FormulaPtr cur = stack.back();
    stack.pop_back();
    if (cur->op == FOp::Or) {
      stack.push_back(cur->lhs);
      stack.push_back(cur->rhs);
      continue;
    }
    if (cur->op != FOp::Dia) return std::nullopt;
    bool dup = false;
    for_each_action(cur->acts, [&](Action a) {
      if (!fam.bodies.emplace(a, cur->lhs).second) dup = true;
    });
    if (dup) return std::nullopt;
  }
  return fam;
}

// Family covering the whole alphabet with every body a given constant.
bool family_all(const Family &fam, FOp leaf, const Alphabet &alpha) {
  ActionSet covered = 0;
  for (const auto &[a, body] : fam.bodies) {
    if (body->op != leaf) return false;
    covered |= set_of(a);
  }
  return covered == alpha.all();
}

FormulaPtr fold_family(const Family &fam) {
  if (fam.bodies.empty()) return fam.box ? f_tt() : f_ff();
  FormulaPtr out;
  for (const auto &[a, body] : fam.bodies) {
    FormulaPtr atom = fam.box ? f_box(set_of(a), body) : f_dia(set_of(a), body);
    out = out ? (fam.box ? f_and(out, atom) : f_or(out, atom)) : atom;
  }
  return out;
}

bool family_all(const Family &fam, FOp leaf, const Alphabet &alpha);

bool slim_rec(const FormulaPtr &f, const Alphabet &alpha) {
  if (f->op == FOp::Tt || f->op == FOp::Ff) return true;
  if (auto bf = box_family(f)) {
    if (family_all(*bf, FOp::Ff, alpha)) return false;  // denotes no trace
    for (const auto &[a, body] : bf->bodies)
      if (!slim_rec(body, alpha)) return false;
    return true;
  }
  if (auto df = dia_family(f)) {
    if (family_all(*df, FOp::Tt, alpha)) return false;  // denotes every trace
    for (const auto &[a, body] : df->bodies)
      if (body->op == FOp::Ff || !slim_rec(body, alpha)) return false;
    return true;
  }
  return false;
}

struct Rewriter {
  const Alphabet &alpha;

  struct Hit {
    FormulaPtr result;
    std::string rule;
  };

  // Innermost-leftmost single rewrite; children first, then node-local rules.
  std::optional<Hit> rewrite(const FormulaPtr &f) {
    switch (f->op) {
      case FOp::Tt:
      case FOp::Ff:
      case FOp::Var:
        return std::nullopt;
      case FOp::Max:
      case FOp::Min:
        fail(Errc::fragment, "slim normalisation applies to HML formulas", "to_slim");
      case FOp::Box:
      case FOp::Dia: {
        if (auto h = rewrite(f->lhs))
          return Hit{f->op == FOp::Box ? f_box(f->acts, h->result) : f_dia(f->acts, h->result),
                     h->rule};
        if (f->op == FOp::Box && f->lhs->op == FOp::Tt) return Hit{f_tt(), "modal-trivial"};
        if (f->op == FOp::Dia && f->lhs->op == FOp::Ff) return Hit{f_ff(), "modal-trivial"};
        // over infinite traces every trace has a head action
        if (f->op == FOp::Box && f->acts == alpha.all() && f->lhs->op == FOp::Ff)
          return Hit{f_ff(), "box-family-empty"};
        if (f->op == FOp::Dia && f->acts == alpha.all() && f->lhs->op == FOp::Tt)
          return Hit{f_tt(), "diamond-family-full"};
        return std::nullopt;
      }
      case FOp::And: {
        if (auto h = rewrite(f->lhs)) return Hit{f_and(h->result, f->rhs), h->rule};
        if (auto h = rewrite(f->rhs)) return Hit{f_and(f->lhs, h->result), h->rule};
        return and_rules(f);
      }
      case FOp::Or: {
        if (auto h = rewrite(f->lhs)) return Hit{f_or(h->result, f->rhs), h->rule};
        if (auto h = rewrite(f->rhs)) return Hit{f_or(f->lhs, h->result), h->rule};
        return or_rules(f);
      }
    }
    return std::nullopt;
  }

  std::optional<Hit> and_rules(const FormulaPtr &f) {
    const FormulaPtr &l = f->lhs, &r = f->rhs;
    if (l->op == FOp::Ff || r->op == FOp::Ff) return Hit{f_ff(), "absorb-trivial"};
    if (l->op == FOp::Tt) return Hit{r, "absorb-trivial"};
    if (r->op == FOp::Tt) return Hit{l, "absorb-trivial"};

    // Duplicate-action merges inside a flat modal family.
    {
      std::optional<Hit> merged;
      if (merge_dup(f, FOp::And, merged)) return merged;
    }

    auto lb = box_family(l), rb = box_family(r);
    auto ld = dia_family(l), rd = dia_family(r);
    if (lb && rb) {
      // a full-alphabet family of [a]ff denotes no trace at all
      Family whole;
      whole.box = true;
      whole.bodies = lb->bodies;
      whole.bodies.insert(rb->bodies.begin(), rb->bodies.end());
      if (family_all(whole, FOp::Ff, alpha)) return Hit{f_ff(), "box-family-empty"};
      return std::nullopt;  // a larger box family, already slim
    }

    if (ld && rd) {
      // diamond families: only a shared head action can satisfy both
      Family out;
      out.box = false;
      for (const auto &[a, body] : ld->bodies) {
        auto it = rd->bodies.find(a);
        if (it != rd->bodies.end()) out.bodies[a] = f_and(body, it->second);
      }
      return Hit{fold_family(out), "diamond-conjunction"};
    }

    // box family against diamond family: the diamond side fixes the head
    if (lb && rd) return Hit{dia_and_box(*lb, *rd), "diamond-and-box"};
    if (ld && rb) return Hit{dia_and_box(*rb, *ld), "diamond-and-box"};
    return std::nullopt;
  }

  FormulaPtr dia_and_box(const Family &boxes, const Family &dias) {
    Family out;
    out.box = false;
    for (const auto &[a, dbody] : dias.bodies) {
      auto it = boxes.bodies.find(a);
      out.bodies[a] = it != boxes.bodies.end() ? f_and(it->second, dbody) : dbody;
    }
    return fold_family(out);
  }

  std::optional<Hit> or_rules(const FormulaPtr &f) {
    const FormulaPtr &l = f->lhs, &r = f->rhs;
    if (l->op == FOp::Tt || r->op == FOp::Tt) return Hit{f_tt(), "absorb-trivial"};
    if (l->op == FOp::Ff) return Hit{r, "absorb-trivial"};
    if (r->op == FOp::Ff) return Hit{l, "absorb-trivial"};

    {
      std::optional<Hit> merged;
      if (merge_dup(f, FOp::Or, merged)) return merged;
    }

    auto lb = box_family(l), rb = box_family(r);
    auto ld = dia_family(l), rd = dia_family(r);
    if (ld && rd) {
      // a full-alphabet family of <a>tt holds of every trace
      Family whole;
      whole.box = false;
      whole.bodies = ld->bodies;
      whole.bodies.insert(rd->bodies.begin(), rd->bodies.end());
      if (family_all(whole, FOp::Tt, alpha)) return Hit{f_tt(), "diamond-family-full"};
      return std::nullopt;  // a larger diamond family, already slim
    }

    if (lb && rb) {
      // every head outside the intersection satisfies one box vacuously
      Family out;
      out.box = true;
      for (const auto &[a, body] : lb->bodies) {
        auto it = rb->bodies.find(a);
        if (it != rb->bodies.end()) out.bodies[a] = f_or(body, it->second);
      }
      return Hit{fold_family(out), "box-disjunction"};
    }
    if (lb && rd) return Hit{box_or_dia(*lb, *rd), "box-disjunction"};
    if (ld && rb) return Hit{box_or_dia(*rb, *ld), "box-disjunction"};
    return std::nullopt;
  }

  FormulaPtr box_or_dia(const Family &boxes, const Family &dias) {
    // heads outside the box family are vacuously satisfied; diamonds only
    // strengthen the shared actions
    Family out;
    out.box = true;
    for (const auto &[a, bbody] : boxes.bodies) {
      auto it = dias.bodies.find(a);
      out.bodies[a] = it != dias.bodies.end() ? f_or(bbody, it->second) : bbody;
    }
    return fold_family(out);
  }

  // Merges the first duplicated modal action in an associative family:
  // [a]p & [a]q -> [a](p & q) and <a>p | <a>q -> <a>(p | q), plus the mixed
  // conjunction cases <a>p & <b>q -> ff / <a>p & [a]q -> <a>(p & q).
  bool merge_dup(const FormulaPtr &f, FOp op, std::optional<Hit> &out) {
    // Only handles flat families of single modalities; the family rules above
    // cover the mixed tree shapes.
    std::vector<FormulaPtr> fam;
    std::function<void(const FormulaPtr &)> flat = [&](const FormulaPtr &g) {
      if (g->op == op) {
        flat(g->lhs);
        flat(g->rhs);
      } else {
        fam.push_back(g);
      }
    };
    flat(f);

    bool conj = op == FOp::And;
    for (size_t i = 0; i < fam.size(); ++i) {
      if (!is_modal(fam[i]->op)) return false;  // handled by the family rules
      for (size_t j = i + 1; j < fam.size(); ++j) {
        if (!is_modal(fam[j]->op)) return false;
        const auto &fi = fam[i];
        const auto &fj = fam[j];
        if (fi->acts != fj->acts) {
          if (conj && fi->op == FOp::Dia && fj->op == FOp::Dia &&
              (fi->acts & fj->acts) == 0) {
            out = Hit{f_ff(), "diamond-conjunction"};
            return true;
          }
          continue;
        }
        const char *rule;
        bool both_box = fi->op == FOp::Box && fj->op == FOp::Box;
        bool both_dia = fi->op == FOp::Dia && fj->op == FOp::Dia;
        if (conj)
          rule = both_box ? "box-merge" : (both_dia ? "diamond-conjunction" : "diamond-and-box");
        else
          rule = both_dia ? "diamond-merge" : "box-disjunction";
        // merged node kind: the stronger modality wins (diamond under &,
        // box under |)
        FOp kind = conj ? (both_box ? FOp::Box : FOp::Dia) : (both_dia ? FOp::Dia : FOp::Box);
        FormulaPtr body = conj ? f_and(fi->lhs, fj->lhs) : f_or(fi->lhs, fj->lhs);
        FormulaPtr merged = kind == FOp::Box ? f_box(fi->acts, body) : f_dia(fi->acts, body);
        FormulaPtr rebuilt = merged;
        for (size_t k = 0; k < fam.size(); ++k)
          if (k != i && k != j) rebuilt = conj ? f_and(rebuilt, fam[k]) : f_or(rebuilt, fam[k]);
        out = Hit{rebuilt, rule};
        return true;
      }
    }
    return false;
  }
};

}  // namespace

std::pair<FormulaPtr, RewriteTrace> to_slim(const FormulaPtr &f, const Alphabet &alpha) {
  if (!classify(f).hml) fail(Errc::fragment, "slim normalisation applies to HML formulas", "to_slim");
  RewriteTrace trace;
  FormulaPtr cur = expand_sets(f);
  long budget = length(f, alpha);
  Rewriter rw{alpha};
  for (;;) {
    auto hit = rw.rewrite(cur);
    if (!hit) break;
    long before = length(cur, alpha);
    long after = length(hit->result, alpha);
    if (after >= before)
      fail(Errc::internal,
           "slim rewrite '" + hit->rule + "' did not decrease length (" +
               std::to_string(before) + " -> " + std::to_string(after) + ")");
    trace.steps.push_back({hit->rule, cur, hit->result});
    cur = hit->result;
    if (static_cast<long>(trace.steps.size()) > budget)
      fail(Errc::internal, "slim rewriting exceeded the length bound");
  }
  if (!slim_rec(cur, alpha)) fail(Errc::internal, "slim normalisation left a non-slim formula");
  return {cur, std::move(trace)};
}

bool is_slim(const FormulaPtr &f, const Alphabet &alpha) { return slim_rec(f, alpha); }

namespace {

MonitorPtr no_rec_go(const MonitorPtr &m, long unfolds, long cap) {
  switch (m->op) {
    case MOp::Yes:
    case MOp::No:
    case MOp::End:
      return m;
    case MOp::Act:
      return m_act(m->act, no_rec_go(m->lhs, unfolds, cap));
    case MOp::Sum:
      return m_sum(no_rec_go(m->lhs, unfolds, cap), no_rec_go(m->rhs, unfolds, cap));
    case MOp::Rec:
      if (unfolds >= cap)
        fail(Errc::cap_exceeded,
             "unfolding cap exceeded; the monitor is not complete for any property",
             "no_rec");
      return no_rec_go(substitute(m->lhs, m->name, m), unfolds + 1, cap);
    case MOp::Var:
      fail(Errc::precondition, "monitor must be closed", "no_rec");
    default:
      fail(Errc::precondition, "recursion removal applies to regular monitors", "no_rec");
  }
}

}  // namespace

MonitorPtr no_rec(const MonitorPtr &m, const Alphabet &alpha, const EngineOptions &opts) {
  if (!is_regular(m))
    fail(Errc::precondition, "recursion removal applies to regular monitors", "no_rec");
  if (!is_syntactically_deterministic(m))
    fail(Errc::precondition, "monitor is not syntactically deterministic", "no_rec");
  long cap = static_cast<long>(reach(m, alpha, opts).size()) + 1;
  return no_rec_go(m, 0, cap);
}

namespace {

struct TightChecker {
  const FormulaPtr &f;
  const Alphabet &alpha;
  int depth;
  std::map<std::vector<Action>, bool> violate_memo, satisfy_memo;

  bool all_violate(const std::vector<Action> &s) {
    auto it = violate_memo.find(s);
    if (it != violate_memo.end()) return it->second;
    bool out;
    if (static_cast<int>(s.size()) >= depth) {
      TraceSpec t{s, {0}};
      out = !eval_linear(f, t, alpha);
    } else {
      out = true;
      for (Action a = 0; a < alpha.size() && out; ++a) {
        auto ext = s;
        ext.push_back(a);
        out = all_violate(ext);
      }
    }
    violate_memo.emplace(s, out);
    return out;
  }

  bool all_satisfy(const std::vector<Action> &s) {
    auto it = satisfy_memo.find(s);
    if (it != satisfy_memo.end()) return it->second;
    bool out;
    if (static_cast<int>(s.size()) >= depth) {
      TraceSpec t{s, {0}};
      out = eval_linear(f, t, alpha);
    } else {
      out = true;
      for (Action a = 0; a < alpha.size() && out; ++a) {
        auto ext = s;
        ext.push_back(a);
        out = all_satisfy(ext);
      }
    }
    satisfy_memo.emplace(s, out);
    return out;
  }
};

}  // namespace

bool is_tight(const MonitorPtr &m, const FormulaPtr &f, const Alphabet &alpha,
              const EngineOptions &opts) {
  if (!classify(f).hml || !is_closed(f))
    fail(Errc::fragment, "semantic tightness check needs a closed HML formula", "is_tight");
  Dfa acc = monitor_language_dfa(m, Polarity::accept, alpha, opts);
  Dfa rej = monitor_language_dfa(m, Polarity::reject, alpha, opts);
  // For fixpoint-free formulas the satisfaction status of every extension is
  // fixed by the first modal-depth actions, so that horizon is exact (the
  // DFA-size product bound is only needed with recursion).
  int depth = modal_depth(f);
  TightChecker tc{f, alpha, depth, {}, {}};
  for (const auto &s : enumerate_finite_traces(alpha, depth)) {
    if (tc.all_violate(s) && !rej.accepts(s)) return false;
    if (tc.all_satisfy(s) && !acc.accepts(s)) return false;
  }
  return true;
}

bool is_tight_structural(const MonitorPtr &m, const Alphabet &alpha) {
  if (!is_regular(m) || !is_syntactically_deterministic(m))
    fail(Errc::precondition, "structural tightness needs a deterministic regular monitor",
         "is_tight_structural");
  // none of: sum over the whole alphabet into one verdict, rec x.no, rec x.yes
  std::function<bool(const MonitorPtr &)> ok = [&](const MonitorPtr &sub) -> bool {
    switch (sub->op) {
      case MOp::Yes:
      case MOp::No:
      case MOp::End:
      case MOp::Var:
        return true;
      case MOp::Rec:
        if (sub->lhs->op == MOp::Yes || sub->lhs->op == MOp::No) return false;
        return ok(sub->lhs);
      case MOp::Act:
      case MOp::Sum: {
        // family of prefixes covering Act into the same verdict?
        std::vector<MonitorPtr> fam;
        std::function<void(const MonitorPtr &)> flat = [&](const MonitorPtr &g) {
          if (g->op == MOp::Sum) {
            flat(g->lhs);
            flat(g->rhs);
          } else {
            fam.push_back(g);
          }
        };
        flat(sub);
        ActionSet covered = 0;
        bool all_yes = true, all_no = true;
        for (const auto &g : fam) {
          if (g->op != MOp::Act) {
            all_yes = all_no = false;
            break;
          }
          covered |= set_of(g->act);
          all_yes = all_yes && g->lhs->op == MOp::Yes;
          all_no = all_no && g->lhs->op == MOp::No;
        }
        if (covered == alpha.all() && (all_yes || all_no)) return false;
        for (const auto &g : fam)
          if (g->op == MOp::Act && !ok(g->lhs)) return false;
        return true;
      }
      default:
        return true;
    }
  };
  return ok(m);
}

}  // namespace recmon

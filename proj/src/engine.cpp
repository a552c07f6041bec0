#include "recmon/engine.hpp"

#include <deque>
#include <random>

#include "recmon/errors.hpp"
#include "recmon/transform.hpp"

namespace recmon {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    case Verdict::end:
      return "end";
    case Verdict::none_yet:
      return "none-yet";
  }
  return "?";
}

bool MonitorSet::insert(const MonitorPtr &m, const Alphabet &alpha) {
  return by_key_.emplace(canon_key(m, alpha), m).second;
}
bool MonitorSet::contains(const MonitorPtr &m, const Alphabet &alpha) const {
  return by_key_.count(canon_key(m, alpha)) > 0;
}
std::vector<MonitorPtr> MonitorSet::items() const {
  std::vector<MonitorPtr> out;
  out.reserve(by_key_.size());
  for (const auto &[k, m] : by_key_) out.push_back(m);
  return out;
}
bool MonitorSet::contains_verdict(MOp v) const {
  const char *key = v == MOp::Yes ? "yes" : (v == MOp::No ? "no" : "end");
  return by_key_.count(key) > 0;
}

namespace {

// Collects the binder map x -> rec x.m_x of a root monitor (System N).
void binder_map(const MonitorPtr &m, std::map<std::string, MonitorPtr> &out) {
  switch (m->op) {
    case MOp::Rec:
      out[m->name] = m;
      binder_map(m->lhs, out);
      return;
    case MOp::Act:
      binder_map(m->lhs, out);
      return;
    case MOp::Sum:
    case MOp::ParAnd:
    case MOp::ParOr:
      binder_map(m->lhs, out);
      binder_map(m->rhs, out);
      return;
    default:
      return;
  }
}

struct Stepper {
  const Alphabet &alpha;
  EngineOptions opts;
  std::map<std::string, MonitorPtr> binders;  // System N only

  Stepper(const Alphabet &a, const EngineOptions &o, const MonitorPtr &root)
      : alpha(a), opts(o) {
    if (opts.system == System::N && root) binder_map(root, binders);
  }

  void successors(const MonitorPtr &m, Action label, std::vector<MonitorPtr> &out) const {
    switch (m->op) {
      case MOp::Yes:
      case MOp::No:
      case MOp::End:
        if (label != kTau) out.push_back(m);  // mVer
        return;
      case MOp::Act:
        if (label == m->act) out.push_back(m->lhs);  // mAct
        return;
      case MOp::Var:
        if (opts.system == System::N && label == kTau) {
          auto it = binders.find(m->name);
          if (it != binders.end()) out.push_back(it->second);  // mRecB
        }
        return;
      case MOp::Rec:
        if (label == kTau) {
          if (opts.system == System::O)
            out.push_back(substitute(m->lhs, m->name, m));  // mRec
          else
            out.push_back(m->lhs);  // mRecF
        }
        return;
      case MOp::Sum: {  // mSelL / mSelR
        successors(m->lhs, label, out);
        successors(m->rhs, label, out);
        return;
      }
      case MOp::ParAnd:
      case MOp::ParOr: {
        auto rebuild = [&](MonitorPtr l, MonitorPtr r) {
          return m->op == MOp::ParAnd ? m_conj(std::move(l), std::move(r))
                                      : m_disj(std::move(l), std::move(r));
        };
        if (label != kTau) {  // mPar: both sides must analyse
          std::vector<MonitorPtr> ls, rs;
          successors(m->lhs, label, ls);
          successors(m->rhs, label, rs);
          for (const auto &l : ls)
            for (const auto &r : rs) out.push_back(rebuild(l, r));
          return;
        }
        // mTauL / mTauR
        std::vector<MonitorPtr> ls, rs;
        successors(m->lhs, kTau, ls);
        successors(m->rhs, kTau, rs);
        for (const auto &l : ls) out.push_back(rebuild(l, m->rhs));
        for (const auto &r : rs) out.push_back(rebuild(m->lhs, r));
        // verdict reconfiguration
        bool conj = m->op == MOp::ParAnd;
        const MonitorPtr &a = m->lhs;
        const MonitorPtr &b = m->rhs;
        if (a->op == MOp::End && b->op == MOp::End) out.push_back(m_end());  // mVrE
        if (conj) {
          if (a->op == MOp::Yes) out.push_back(b);         // mVrC1
          if (b->op == MOp::Yes) out.push_back(a);         // mVrC1 (sym)
          if (a->op == MOp::No) out.push_back(m_no());     // mVrC2
          if (b->op == MOp::No) out.push_back(m_no());     // mVrC2 (sym)
        } else {
          if (a->op == MOp::No) out.push_back(b);          // mVrD1
          if (b->op == MOp::No) out.push_back(a);          // mVrD1 (sym)
          if (a->op == MOp::Yes) out.push_back(m_yes());   // mVrD2
          if (b->op == MOp::Yes) out.push_back(m_yes());   // mVrD2 (sym)
        }
        return;
      }
    }
  }

  // tau-closure with a visited set; throws on the cap.
  MonitorSet tau_closure(const MonitorSet &from) const {
    MonitorSet seen = from;
    std::deque<MonitorPtr> todo;
    for (const auto &m : from.items()) todo.push_back(m);
    while (!todo.empty()) {
      MonitorPtr m = todo.front();
      todo.pop_front();
      std::vector<MonitorPtr> succ;
      successors(m, kTau, succ);
      for (const auto &n : succ) {
        if (seen.insert(n, alpha)) {
          if (seen.size() > opts.closure_cap)
            fail(Errc::cap_exceeded,
                 "tau-closure exceeded " + std::to_string(opts.closure_cap) +
                     " distinct monitor states");
          todo.push_back(n);
        }
      }
    }
    return seen;
  }

  MonitorSet step_set(const MonitorSet &from, Action a) const {
    MonitorSet out;
    for (const auto &m : from.items()) {
      std::vector<MonitorPtr> succ;
      successors(m, a, succ);
      for (const auto &n : succ) out.insert(n, alpha);
    }
    return out;
  }
};

}  // namespace

std::vector<MonitorPtr> step(const MonitorPtr &m, Action label, const Alphabet &alpha,
                             const EngineOptions &opts, const MonitorPtr &root) {
  Stepper st(alpha, opts, root ? root : m);
  std::vector<MonitorPtr> out;
  st.successors(m, label, out);
  return out;
}

MonitorSet weak_after(const MonitorPtr &m, const std::vector<Action> &s,
                      const Alphabet &alpha, const EngineOptions &opts) {
  if (!is_closed(m) && opts.system == System::O)
    fail(Errc::precondition, "monitor must be closed", "weak_after");
  Stepper st(alpha, opts, m);
  MonitorSet cur;
  cur.insert(m, alpha);
  cur = st.tau_closure(cur);
  for (Action a : s) {
    cur = st.step_set(cur, a);
    cur = st.tau_closure(cur);
  }
  return cur;
}

bool accepts(const MonitorPtr &m, const std::vector<Action> &s, const Alphabet &alpha,
             const EngineOptions &opts) {
  return weak_after(m, s, alpha, opts).contains_verdict(MOp::Yes);
}

bool rejects(const MonitorPtr &m, const std::vector<Action> &s, const Alphabet &alpha,
             const EngineOptions &opts) {
  return weak_after(m, s, alpha, opts).contains_verdict(MOp::No);
}

std::map<std::vector<Action>, std::pair<bool, bool>> bounded_verdicts(
    const MonitorPtr &m, int bound, const Alphabet &alpha, const EngineOptions &opts) {
  Stepper st(alpha, opts, m);
  std::map<std::vector<Action>, std::pair<bool, bool>> out;
  struct Level {
    std::vector<Action> trace;
    MonitorSet states;
  };
  std::deque<Level> todo;
  {
    MonitorSet init;
    init.insert(m, alpha);
    todo.push_back({{}, st.tau_closure(init)});
  }
  while (!todo.empty()) {
    Level lvl = std::move(todo.front());
    todo.pop_front();
    out[lvl.trace] = {lvl.states.contains_verdict(MOp::Yes),
                      lvl.states.contains_verdict(MOp::No)};
    if (static_cast<int>(lvl.trace.size()) >= bound) continue;
    for (Action a = 0; a < alpha.size(); ++a) {
      MonitorSet next = st.tau_closure(st.step_set(lvl.states, a));
      Level nl;
      nl.trace = lvl.trace;
      nl.trace.push_back(a);
      nl.states = std::move(next);
      todo.push_back(std::move(nl));
    }
  }
  return out;
}

bool can_weak_step(const MonitorPtr &m, Action a, const Alphabet &alpha,
                   const EngineOptions &opts, const MonitorPtr &root) {
  Stepper st(alpha, opts, root ? root : m);
  MonitorSet cur;
  cur.insert(m, alpha);
  cur = st.tau_closure(cur);
  return st.step_set(cur, a).size() > 0;
}

Verdict lasso_verdict(const MonitorPtr &m, const TraceSpec &t, const Alphabet &alpha) {
  Dfa acc = monitor_language_dfa(m, Polarity::accept, alpha);
  Dfa rej = monitor_language_dfa(m, Polarity::reject, alpha);
  return lasso_verdict_with(acc, rej, t);
}

Verdict lasso_verdict_with(const Dfa &acc, const Dfa &rej, const TraceSpec &t) {
  if (!t.is_lasso()) fail(Errc::input, "lasso_verdict needs a lasso trace");

  // First index (number of letters read) at which the DFA accepts a prefix of
  // the lasso, or -1. A repeat of the DFA state at the cycle boundary closes
  // the search.
  auto first_hit = [&](const Dfa &d) -> long {
    long idx = 0;
    int q = d.start;
    if (d.accepting[static_cast<size_t>(q)]) return 0;
    for (Action a : t.prefix) {
      q = d.next[static_cast<size_t>(q)][static_cast<size_t>(a)];
      ++idx;
      if (d.accepting[static_cast<size_t>(q)]) return idx;
    }
    std::set<int> seen;
    while (seen.insert(q).second) {
      for (Action a : t.cycle) {
        q = d.next[static_cast<size_t>(q)][static_cast<size_t>(a)];
        ++idx;
        if (d.accepting[static_cast<size_t>(q)]) return idx;
      }
    }
    return -1;
  };

  long ay = first_hit(acc);
  long an = first_hit(rej);
  if (ay < 0 && an < 0) return Verdict::none_yet;
  if (ay < 0) return Verdict::no;
  if (an < 0) return Verdict::yes;
  // Both only happens for inconsistent monitors: earliest witness wins,
  // rejection on ties.
  return an <= ay ? Verdict::no : Verdict::yes;
}

std::vector<MonitorPtr> reach(const MonitorPtr &m, const Alphabet &alpha,
                              const EngineOptions &opts) {
  Stepper st(alpha, opts, m);
  MonitorSet seen;
  seen.insert(m, alpha);
  std::deque<MonitorPtr> todo{m};
  while (!todo.empty()) {
    MonitorPtr cur = todo.front();
    todo.pop_front();
    for (Action label = kTau; label < alpha.size(); ++label) {
      std::vector<MonitorPtr> succ;
      st.successors(cur, label, succ);
      for (const auto &n : succ) {
        if (seen.insert(n, alpha)) {
          if (seen.size() > opts.closure_cap)
            fail(Errc::cap_exceeded, "reachable-state exploration exceeded cap");
          todo.push_back(n);
        }
      }
    }
  }
  return seen.items();
}

namespace {

void states_char(const MonitorPtr &m, bool skip, MonitorSet &out, const Alphabet &alpha);

void states_char(const MonitorPtr &m, bool skip, MonitorSet &out, const Alphabet &alpha) {
  switch (m->op) {
    case MOp::Yes:
    case MOp::No:
    case MOp::End:
    case MOp::Var:
      out.insert(m, alpha);
      return;
    case MOp::Act:
      if (!skip) out.insert(m, alpha);
      states_char(m->lhs, false, out, alpha);
      return;
    case MOp::Sum:
      if (!skip) out.insert(m, alpha);
      states_char(m->lhs, true, out, alpha);
      states_char(m->rhs, true, out, alpha);
      return;
    case MOp::Rec: {
      if (!skip) out.insert(m, alpha);
      // states(m')[rec x.m'/x]
      MonitorSet inner;
      states_char(m->lhs, false, inner, alpha);
      for (const auto &s : inner.items()) out.insert(substitute(s, m->name, m), alpha);
      return;
    }
    default:
      fail(Errc::precondition, "states characterisation applies to regular monitors");
  }
}

}  // namespace

std::vector<MonitorPtr> states_characterisation(const MonitorPtr &m, const Alphabet &alpha) {
  if (!is_regular(m)) fail(Errc::precondition, "states characterisation applies to regular monitors");
  MonitorSet out;
  states_char(m, false, out, alpha);
  return out.items();
}

MonitorPtr collapse_verdicts(const MonitorPtr &m) {
  switch (m->op) {
    case MOp::ParAnd:
    case MOp::ParOr: {
      MonitorPtr l = collapse_verdicts(m->lhs);
      MonitorPtr r = collapse_verdicts(m->rhs);
      bool conj = m->op == MOp::ParAnd;
      MOp win = conj ? MOp::No : MOp::Yes;
      MOp drop = conj ? MOp::Yes : MOp::No;
      if (l->op == win || r->op == win) return conj ? m_no() : m_yes();
      if (l->op == drop) return r;
      if (r->op == drop) return l;
      if (l->op == MOp::End && r->op == MOp::End) return m_end();
      return conj ? m_conj(l, r) : m_disj(l, r);
    }
    case MOp::Act:
      return m_act(m->act, collapse_verdicts(m->lhs));
    case MOp::Sum:
      return m_sum(collapse_verdicts(m->lhs), collapse_verdicts(m->rhs));
    case MOp::Rec:
      return m_rec(m->name, collapse_verdicts(m->lhs));
    default:
      return m;
  }
}

bool is_reactive(const MonitorPtr &m, const Alphabet &alpha, const EngineOptions &opts) {
  // Explored under System N: System O substitutes on unfolding, so even
  // regular monitors change shape, while N only moves between subterms.
  // Reactivity agrees across the two systems (states correspond through the
  // unfolding relation, which preserves weak steps). Verdict pairs are
  // collapsed in the state identity; parallel monitors can still be
  // infinite-state, hence the cap.
  EngineOptions nopts = opts;
  nopts.system = System::N;
  Stepper st(alpha, nopts, m);
  MonitorSet seen;
  seen.insert(collapse_verdicts(m), alpha);
  std::deque<MonitorPtr> todo{collapse_verdicts(m)};
  while (!todo.empty()) {
    MonitorPtr cur = todo.front();
    todo.pop_front();
    for (Action a = 0; a < alpha.size(); ++a)
      if (!can_weak_step(cur, a, alpha, nopts, m)) return false;
    for (Action label = kTau; label < alpha.size(); ++label) {
      std::vector<MonitorPtr> succ;
      st.successors(cur, label, succ);
      for (const auto &n : succ) {
        MonitorPtr cn = collapse_verdicts(n);
        if (seen.insert(cn, alpha)) {
          if (seen.size() > opts.closure_cap)
            fail(Errc::cap_exceeded, "reactivity exploration exceeded cap", "is_reactive");
          todo.push_back(cn);
        }
      }
    }
  }
  return true;
}

bool is_consistent(const MonitorPtr &m, const Alphabet &alpha, int bound,
                   const EngineOptions &opts) {
  if (is_regular(m)) {
    Dfa acc = monitor_language_dfa(m, Polarity::accept, alpha, opts);
    Dfa rej = monitor_language_dfa(m, Polarity::reject, alpha, opts);
    return dfa_intersection_empty(acc, rej, alpha.size());
  }
  for (const auto &[s, verdicts] : bounded_verdicts(m, bound, alpha, opts))
    if (verdicts.first && verdicts.second) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Instrumentation

namespace {

struct ConfigKey {
  std::string mon;
  int state;
  bool operator<(const ConfigKey &o) const {
    return state != o.state ? state < o.state : mon < o.mon;
  }
};

struct InstrMove {
  Action label;
  const char *rule;
  InstrumentedConfig config;
};

struct InstrStepper {
  const Alphabet &alpha;
  const Lts &lts;
  Stepper mon;

  InstrStepper(const Alphabet &a, const Lts &l, const EngineOptions &opts,
               const MonitorPtr &root)
      : alpha(a), lts(l), mon(a, opts, root) {}

  // All strong steps of <m, p>; label kTau covers iAsyP and iAsyM.
  std::vector<InstrMove> successors(const InstrumentedConfig &c) const {
    std::vector<InstrMove> out;
    // process moves
    for (const auto &[src, label, dst] : lts.transitions()) {
      if (src != c.state) continue;
      if (label == kTau) {
        out.push_back({kTau, "iAsyP", {c.monitor, dst}});
        continue;
      }
      std::vector<MonitorPtr> ms;
      mon.successors(c.monitor, label, ms);
      if (!ms.empty()) {
        for (const auto &n : ms) out.push_back({label, "iMon", {n, dst}});
      } else {
        std::vector<MonitorPtr> taus;
        mon.successors(c.monitor, kTau, taus);
        if (taus.empty()) out.push_back({label, "iTer", {m_end(), dst}});
      }
    }
    // monitor tau moves (iAsyM)
    std::vector<MonitorPtr> taus;
    mon.successors(c.monitor, kTau, taus);
    for (const auto &n : taus) out.push_back({kTau, "iAsyM", {n, c.state}});
    return out;
  }
};

}  // namespace

std::set<std::pair<std::vector<Action>, Verdict>> instrument_exhaustive(
    const MonitorPtr &m, const Lts &l, int depth, const Alphabet &alpha,
    const EngineOptions &opts) {
  InstrStepper st(alpha, l, opts, m);
  std::set<std::pair<std::vector<Action>, Verdict>> out;

  auto tau_close = [&](std::set<ConfigKey> &seen, std::deque<InstrumentedConfig> &frontier,
                       std::vector<InstrumentedConfig> &closed) {
    while (!frontier.empty()) {
      auto c = frontier.front();
      frontier.pop_front();
      closed.push_back(c);
      for (const auto &mv : st.successors(c)) {
        if (mv.label != kTau) continue;
        ConfigKey key{canon_key(mv.config.monitor, alpha), mv.config.state};
        if (seen.insert(key).second) {
          if (seen.size() > opts.closure_cap)
            fail(Errc::cap_exceeded, "instrumentation exploration exceeded cap");
          frontier.push_back(mv.config);
        }
      }
    }
  };

  struct Level {
    std::vector<Action> trace;
    std::vector<InstrumentedConfig> configs;
  };

  std::deque<Level> levels;
  {
    std::set<ConfigKey> seen;
    std::deque<InstrumentedConfig> frontier;
    InstrumentedConfig init{m, l.initial()};
    seen.insert({canon_key(m, alpha), l.initial()});
    frontier.push_back(init);
    Level lvl;
    tau_close(seen, frontier, lvl.configs);
    levels.push_back(std::move(lvl));
  }

  while (!levels.empty()) {
    Level lvl = std::move(levels.front());
    levels.pop_front();
    for (const auto &c : lvl.configs)
      if (is_verdict(c.monitor)) {
        Verdict v = c.monitor->op == MOp::Yes
                        ? Verdict::yes
                        : (c.monitor->op == MOp::No ? Verdict::no : Verdict::end);
        out.insert({lvl.trace, v});
      }
    if (static_cast<int>(lvl.trace.size()) >= depth) continue;
    for (Action a = 0; a < alpha.size(); ++a) {
      std::set<ConfigKey> seen;
      std::deque<InstrumentedConfig> frontier;
      for (const auto &c : lvl.configs) {
        for (const auto &mv : st.successors(c)) {
          if (mv.label != a) continue;
          ConfigKey key{canon_key(mv.config.monitor, alpha), mv.config.state};
          if (seen.insert(key).second) frontier.push_back(mv.config);
        }
      }
      if (frontier.empty()) continue;
      Level next;
      next.trace = lvl.trace;
      next.trace.push_back(a);
      tau_close(seen, frontier, next.configs);
      levels.push_back(std::move(next));
    }
  }
  return out;
}

std::vector<InstrumentStep> instrument_random(const MonitorPtr &m, const Lts &l,
                                              std::uint64_t seed, int fuel,
                                              const Alphabet &alpha,
                                              const EngineOptions &opts) {
  InstrStepper st(alpha, l, opts, m);
  std::mt19937_64 rng(seed);
  std::vector<InstrumentStep> out;
  InstrumentedConfig cur{m, l.initial()};
  bool prefer_process_tau = true;  // alternating preference between the sides
  for (int i = 0; i < fuel; ++i) {
    auto succ = st.successors(cur);
    if (succ.empty()) break;
    std::vector<InstrMove> visible, ptau, mtau;
    for (auto &s : succ) {
      if (s.label != kTau)
        visible.push_back(s);
      else if (std::string(s.rule) == "iAsyP")
        ptau.push_back(s);
      else
        mtau.push_back(s);
    }
    std::vector<InstrMove> *pool;
    if (visible.empty())
      pool = prefer_process_tau ? (!ptau.empty() ? &ptau : &mtau)
                                : (!mtau.empty() ? &mtau : &ptau);
    else if (ptau.empty() && mtau.empty())
      pool = &visible;
    else if (rng() & 1)
      pool = &visible;
    else
      pool = prefer_process_tau ? (!ptau.empty() ? &ptau : &mtau)
                                : (!mtau.empty() ? &mtau : &ptau);
    prefer_process_tau = !prefer_process_tau;
    const auto &choice = (*pool)[rng() % pool->size()];
    out.push_back({choice.label, choice.rule, choice.config.monitor, choice.config.state});
    cur = choice.config;
    if (is_verdict(cur.monitor) && cur.monitor->op != MOp::End) break;
  }
  return out;
}

}  // namespace recmon

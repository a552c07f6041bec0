#include "recmon/transform.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "recmon/errors.hpp"

namespace recmon {

namespace {

bool has_parallel(const MonitorPtr &m) { return !is_regular(m); }

// Distinct submonitors (subterms) of m, root first. Binders are unique after
// parsing, so structural identity is the right notion.
void collect_submonitors(const MonitorPtr &m, std::vector<MonitorPtr> &order,
                         std::map<std::string, int> &index, const Alphabet &alpha) {
  std::string key = to_string(m, alpha);
  if (index.emplace(key, static_cast<int>(order.size())).second) order.push_back(m);
  switch (m->op) {
    case MOp::Act:
    case MOp::Rec:
      collect_submonitors(m->lhs, order, index, alpha);
      return;
    case MOp::Sum:
    case MOp::ParAnd:
    case MOp::ParOr:
      collect_submonitors(m->lhs, order, index, alpha);
      collect_submonitors(m->rhs, order, index, alpha);
      return;
    default:
      return;
  }
}

std::vector<std::uint64_t> antichain_union(const std::vector<std::uint64_t> &xs,
                                           const std::vector<std::uint64_t> &ys) {
  std::vector<std::uint64_t> all = xs;
  all.insert(all.end(), ys.begin(), ys.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::vector<std::uint64_t> out;
  for (std::uint64_t s : all) {
    bool minimal = true;
    for (std::uint64_t t : all)
      if (t != s && (t & ~s) == 0) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(s);
  }
  return out;
}

std::vector<std::uint64_t> antichain_product(const std::vector<std::uint64_t> &xs,
                                             const std::vector<std::uint64_t> &ys) {
  std::vector<std::uint64_t> all;
  all.reserve(xs.size() * ys.size());
  for (std::uint64_t x : xs)
    for (std::uint64_t y : ys) all.push_back(x | y);
  return antichain_union(all, {});
}

}  // namespace

AlternatingAutomaton monitor_to_alternating(const MonitorPtr &m, Polarity pol,
                                            const Alphabet &alpha,
                                            const EngineOptions &opts) {
  if (!is_closed(m))
    fail(Errc::precondition, "monitor must be closed", "monitor_to_alternating");
  if (has_parallel(m) && !opts.assume_reactive && !is_reactive(m, alpha, opts))
    fail(Errc::precondition, "parallel monitor is not reactive", "monitor_to_alternating");

  EngineOptions nopts = opts;
  nopts.system = System::N;

  std::vector<MonitorPtr> q;
  std::map<std::string, int> index;
  collect_submonitors(m, q, index, alpha);
  int n = static_cast<int>(q.size());
  if (n > 63) fail(Errc::cap_exceeded, "too many submonitors for the bitset representation");

  auto idx = [&](const MonitorPtr &sub) {
    auto it = index.find(to_string(sub, alpha));
    if (it == index.end()) fail(Errc::internal, "submonitor not interned");
    return it->second;
  };

  // Binder map of the root: x -> rec x.m_x and its body.
  std::map<std::string, MonitorPtr> binders;
  {
    std::deque<MonitorPtr> todo{m};
    while (!todo.empty()) {
      auto cur = todo.front();
      todo.pop_front();
      switch (cur->op) {
        case MOp::Rec:
          binders[cur->name] = cur;
          todo.push_back(cur->lhs);
          break;
        case MOp::Act:
          todo.push_back(cur->lhs);
          break;
        case MOp::Sum:
        case MOp::ParAnd:
        case MOp::ParOr:
          todo.push_back(cur->lhs);
          todo.push_back(cur->rhs);
          break;
        default:
          break;
      }
    }
  }

  MOp target = pol == Polarity::accept ? MOp::Yes : MOp::No;

  // F: submonitors that reach the target verdict on tau moves alone
  // (System N, so open subterms step via mRecB).
  std::uint64_t finals = 0;
  for (int i = 0; i < n; ++i) {
    MonitorSet closure;
    closure.insert(q[static_cast<size_t>(i)], alpha);
    std::deque<MonitorPtr> todo{q[static_cast<size_t>(i)]};
    bool hit = false;
    while (!todo.empty() && !hit) {
      auto cur = todo.front();
      todo.pop_front();
      if (cur->op == target) {
        hit = true;
        break;
      }
      for (const auto &succ : step(cur, kTau, alpha, nopts, m)) {
        if (succ->op == target) {
          hit = true;
          break;
        }
        if (closure.insert(succ, alpha)) {
          if (closure.size() > opts.closure_cap)
            fail(Errc::cap_exceeded, "epsilon-acceptance closure exceeded cap");
          todo.push_back(succ);
        }
      }
    }
    if (hit) finals |= std::uint64_t{1} << i;
  }

  // Weak-analysis predicate (System N) per submonitor and action, for the
  // guard on the existential side of the parallel pair.
  std::vector<std::vector<bool>> weak(static_cast<size_t>(n),
                                      std::vector<bool>(static_cast<size_t>(alpha.size())));
  for (int i = 0; i < n; ++i)
    for (Action a = 0; a < alpha.size(); ++a)
      weak[static_cast<size_t>(i)][static_cast<size_t>(a)] =
          can_weak_step(q[static_cast<size_t>(i)], a, alpha, nopts, m);

  // Minimal satisfying subsets of delta(q, a), as the least closure of the
  // rules; iterate to a fixpoint since rec/var alias their bodies.
  AlternatingAutomaton aut;
  aut.num_states = n;
  aut.start = idx(m);
  aut.finals = finals;
  aut.models.assign(static_cast<size_t>(n),
                    std::vector<std::vector<std::uint64_t>>(static_cast<size_t>(alpha.size())));
  aut.labels.reserve(static_cast<size_t>(n));
  for (const auto &sub : q) aut.labels.push_back(to_string(sub, alpha));

  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      const MonitorPtr &sub = q[static_cast<size_t>(i)];
      for (Action a = 0; a < alpha.size(); ++a) {
        auto &cur = aut.models[static_cast<size_t>(i)][static_cast<size_t>(a)];
        std::vector<std::uint64_t> fresh;
        if ((finals >> i) & 1u) fresh.push_back(0);  // delta_0
        switch (sub->op) {
          case MOp::Act:
            if (sub->act == a) fresh.push_back(std::uint64_t{1} << idx(sub->lhs));
            break;
          case MOp::Sum: {
            const auto &l = aut.models[static_cast<size_t>(idx(sub->lhs))][static_cast<size_t>(a)];
            const auto &r = aut.models[static_cast<size_t>(idx(sub->rhs))][static_cast<size_t>(a)];
            fresh = antichain_union(l, r);
            break;
          }
          case MOp::ParAnd:
          case MOp::ParOr: {
            const auto &l = aut.models[static_cast<size_t>(idx(sub->lhs))][static_cast<size_t>(a)];
            const auto &r = aut.models[static_cast<size_t>(idx(sub->rhs))][static_cast<size_t>(a)];
            // In the acceptance automaton ParAnd is the universal pair and
            // ParOr the existential one (guarded by weak analysis of both
            // sides); rejection swaps the roles.
            bool universal = (sub->op == MOp::ParAnd) == (pol == Polarity::accept);
            if (universal) {
              fresh = antichain_product(l, r);
            } else if (weak[static_cast<size_t>(idx(sub->lhs))][static_cast<size_t>(a)] &&
                       weak[static_cast<size_t>(idx(sub->rhs))][static_cast<size_t>(a)]) {
              fresh = antichain_union(l, r);
            }
            break;
          }
          case MOp::Rec: {
            fresh = aut.models[static_cast<size_t>(idx(sub->lhs))][static_cast<size_t>(a)];
            break;
          }
          case MOp::Var: {
            auto it = binders.find(sub->name);
            if (it != binders.end())
              fresh = aut.models[static_cast<size_t>(idx(it->second->lhs))][static_cast<size_t>(a)];
            break;
          }
          default:
            break;  // verdicts have only delta_0
        }
        auto merged = antichain_union(cur, fresh);
        if (merged != cur) {
          cur = std::move(merged);
          changed = true;
        }
      }
    }
  }
  return aut;
}

Dfa monitor_language_dfa(const MonitorPtr &m, Polarity pol, const Alphabet &alpha,
                         const EngineOptions &opts) {
  auto aut = monitor_to_alternating(m, pol, alpha, opts);
  auto nfa = alternating_to_nfa(aut);
  auto dfa = nfa_to_dfa(nfa);
  return minimize_dfa(dfa, alpha.size());
}

namespace {

// States that can reach an accepting state of either automaton (the live
// region of the product).
struct Product {
  const Dfa &acc;
  const Dfa &rej;
  int actions;
  std::map<std::pair<int, int>, int> cls;  // 1 accept, 2 reject, 0 live, 3 dead

  Product(const Dfa &a, const Dfa &r, int k) : acc(a), rej(r), actions(k) {}

  int classify(std::pair<int, int> s) {
    auto it = cls.find(s);
    if (it != cls.end()) return it->second;
    // BFS forward to find whether any verdict state is reachable.
    std::set<std::pair<int, int>> seen{s};
    std::deque<std::pair<int, int>> todo{s};
    bool live = false;
    while (!todo.empty() && !live) {
      auto cur = todo.front();
      todo.pop_front();
      if (acc.accepting[static_cast<size_t>(cur.first)] ||
          rej.accepting[static_cast<size_t>(cur.second)]) {
        live = true;
        break;
      }
      for (int a = 0; a < actions; ++a) {
        std::pair<int, int> t{acc.next[static_cast<size_t>(cur.first)][static_cast<size_t>(a)],
                              rej.next[static_cast<size_t>(cur.second)][static_cast<size_t>(a)]};
        if (seen.insert(t).second) todo.push_back(t);
      }
    }
    int result;
    if (acc.accepting[static_cast<size_t>(s.first)])
      result = 1;
    else if (rej.accepting[static_cast<size_t>(s.second)])
      result = 2;
    else
      result = live ? 0 : 3;
    cls.emplace(s, result);
    return result;
  }
};

MonitorPtr emit_state(Product &prod, std::pair<int, int> s, const Alphabet &alpha,
                      std::map<std::pair<int, int>, std::string> &path,
                      int &binder_counter) {
  int c = prod.classify(s);
  if (c == 1) return m_yes();
  if (c == 2) return m_no();
  if (c == 3) return m_end();

  auto it = path.find(s);
  if (it != path.end()) return m_var(it->second);

  std::string binder = "x" + std::to_string(binder_counter++);
  path.emplace(s, binder);
  MonitorPtr body;
  for (Action a = 0; a < alpha.size(); ++a) {
    std::pair<int, int> t{prod.acc.next[static_cast<size_t>(s.first)][static_cast<size_t>(a)],
                          prod.rej.next[static_cast<size_t>(s.second)][static_cast<size_t>(a)]};
    if (prod.classify(t) == 3) continue;  // dead successors are omitted
    MonitorPtr sub = emit_state(prod, t, alpha, path, binder_counter);
    MonitorPtr summand = m_act(a, sub);
    body = body ? m_sum(body, summand) : summand;
  }
  path.erase(s);
  if (!body) return m_end();  // live classification implies this cannot happen
  if (free_vars(body).count(binder)) return m_rec(binder, body);
  return body;
}

}  // namespace

MonitorPtr dfa_to_regular_monitor(const Dfa &d_acc, const Dfa &d_rej, const Alphabet &alpha) {
  if (!dfa_intersection_empty(d_acc, d_rej, alpha.size()))
    fail(Errc::precondition, "acceptance and rejection languages intersect",
         "dfa_to_regular_monitor");
  // Monitor languages are extension-closed; reject DFAs that are not.
  for (const Dfa *d : {&d_acc, &d_rej}) {
    for (int q = 0; q < d->num_states; ++q) {
      if (!d->accepting[static_cast<size_t>(q)]) continue;
      for (int a = 0; a < alpha.size(); ++a)
        if (!d->accepting[static_cast<size_t>(d->next[static_cast<size_t>(q)][static_cast<size_t>(a)])])
          fail(Errc::precondition, "language is not extension-closed",
               "dfa_to_regular_monitor");
    }
  }

  Product prod(d_acc, d_rej, alpha.size());
  std::map<std::pair<int, int>, std::string> path;
  int counter = 0;
  return emit_state(prod, {d_acc.start, d_rej.start}, alpha, path, counter);
}

MonitorPtr parallel_to_regular(const MonitorPtr &m, const Alphabet &alpha,
                               const EngineOptions &opts) {
  Dfa acc = monitor_language_dfa(m, Polarity::accept, alpha, opts);
  Dfa rej = monitor_language_dfa(m, Polarity::reject, alpha, opts);
  return dfa_to_regular_monitor(acc, rej, alpha);
}

MonitorPtr determinize(const MonitorPtr &m, const Alphabet &alpha, const EngineOptions &opts) {
  if (!is_regular(m)) fail(Errc::precondition, "determinize expects a regular monitor");
  if (!is_consistent(m, alpha, 6, opts))
    fail(Errc::precondition, "monitor is inconsistent", "determinize");
  return parallel_to_regular(m, alpha, opts);
}

bool verdict_equivalent(const MonitorPtr &m, const MonitorPtr &n, const Alphabet &alpha,
                        EquivMode mode, int k, const EngineOptions &opts) {
  if (mode == EquivMode::exact) {
    for (Polarity pol : {Polarity::accept, Polarity::reject}) {
      Dfa dm = monitor_language_dfa(m, pol, alpha, opts);
      Dfa dn = monitor_language_dfa(n, pol, alpha, opts);
      if (!dfa_equivalent(dm, dn, alpha.size())) return false;
    }
    return true;
  }
  auto tm = bounded_verdicts(m, k, alpha, opts);
  auto tn = bounded_verdicts(n, k, alpha, opts);
  return tm == tn;
}

}  // namespace recmon

#include "recmon/semantics.hpp"

#include <cstdint>
#include <functional>
#include <map>

#include "recmon/errors.hpp"

namespace recmon {

namespace {

// Shared fixpoint evaluator over a finite deterministic-or-not structure.
// Positions/states are bits of a mask; `modal` computes the one-step modal
// clause for a body denotation.
struct Evaluator {
  std::uint64_t full;
  // diamond(A, S): positions with an A-successor inside S.
  std::function<std::uint64_t(ActionSet, std::uint64_t)> diamond;
  std::function<std::uint64_t(ActionSet, std::uint64_t)> box;

  std::map<std::string, std::uint64_t> env;

  std::uint64_t eval(const FormulaPtr &f) {
    switch (f->op) {
      case FOp::Tt:
        return full;
      case FOp::Ff:
        return 0;
      case FOp::Var: {
        auto it = env.find(f->name);
        if (it == env.end()) fail(Errc::precondition, "unbound variable " + f->name);
        return it->second;
      }
      case FOp::And:
        return eval(f->lhs) & eval(f->rhs);
      case FOp::Or:
        return eval(f->lhs) | eval(f->rhs);
      case FOp::Dia:
        return diamond(f->acts, eval(f->lhs));
      case FOp::Box:
        return box(f->acts, eval(f->lhs));
      case FOp::Max:
      case FOp::Min: {
        // Knaster-Tarski by iteration; inner fixpoints recompute per round.
        std::uint64_t cur = f->op == FOp::Max ? full : 0;
        auto saved = env.find(f->name);
        std::uint64_t prev = 0;
        bool had = saved != env.end();
        if (had) prev = saved->second;
        for (;;) {
          env[f->name] = cur;
          std::uint64_t next = eval(f->lhs);
          if (next == cur) break;
          cur = next;
        }
        if (had)
          env[f->name] = prev;
        else
          env.erase(f->name);
        return cur;
      }
    }
    return 0;
  }
};

void check_pre(const FormulaPtr &f, const char *op) {
  if (!is_closed(f)) fail(Errc::precondition, "formula must be closed", op);
  if (!is_guarded(f)) fail(Errc::precondition, "formula must be guarded", op);
}

// Lasso/finite trace as positions 0..n-1 with an optional terminal position.
struct TraceModel {
  std::vector<Action> label;  // per non-terminal position
  std::vector<int> succ;      // per non-terminal position
  bool has_terminal = false;  // finite traces end in a successor-less position
  int positions = 0;

  static TraceModel build(const TraceSpec &t) {
    TraceModel m;
    std::vector<Action> word = t.prefix;
    word.insert(word.end(), t.cycle.begin(), t.cycle.end());
    int n = static_cast<int>(word.size());
    m.label = word;
    m.succ.resize(static_cast<size_t>(n));
    if (t.is_lasso()) {
      for (int i = 0; i < n; ++i) m.succ[static_cast<size_t>(i)] = i + 1;
      m.succ[static_cast<size_t>(n - 1)] = static_cast<int>(t.prefix.size());
      m.positions = n;
    } else {
      for (int i = 0; i < n; ++i) m.succ[static_cast<size_t>(i)] = i + 1;
      m.has_terminal = true;
      m.positions = n + 1;  // position n is the empty suffix
    }
    return m;
  }
};

bool eval_on_model(const FormulaPtr &f, const TraceModel &m) {
  Evaluator ev;
  ev.full = m.positions >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m.positions) - 1;
  int letters = static_cast<int>(m.label.size());
  ev.diamond = [&](ActionSet acts, std::uint64_t s) {
    std::uint64_t out = 0;
    for (int i = 0; i < letters; ++i)
      if (set_contains(acts, m.label[static_cast<size_t>(i)]) &&
          ((s >> m.succ[static_cast<size_t>(i)]) & 1u))
        out |= std::uint64_t{1} << i;
    // the terminal position has no successor: diamond is false there
    return out;
  };
  ev.box = [&](ActionSet acts, std::uint64_t s) {
    std::uint64_t out = 0;
    for (int i = 0; i < letters; ++i) {
      bool ok = !set_contains(acts, m.label[static_cast<size_t>(i)]) ||
                ((s >> m.succ[static_cast<size_t>(i)]) & 1u);
      if (ok) out |= std::uint64_t{1} << i;
    }
    if (m.has_terminal) out |= std::uint64_t{1} << letters;  // vacuously true
    return out;
  };
  return (ev.eval(f) >> 0) & 1u;
}

}  // namespace

bool eval_linear(const FormulaPtr &f, const TraceSpec &t, const Alphabet &alpha) {
  (void)alpha;
  check_pre(f, "eval_linear");
  if (!t.is_lasso())
    fail(Errc::input, "linear-time semantics needs an infinite (lasso) trace", "eval_linear");
  return eval_on_model(f, TraceModel::build(t));
}

bool eval_finfinite(const FormulaPtr &f, const TraceSpec &g, const Alphabet &alpha) {
  (void)alpha;
  check_pre(f, "eval_finfinite");
  return eval_on_model(f, TraceModel::build(g));
}

bool eval_branching(const FormulaPtr &f, const Lts &l, int s, const Alphabet &alpha) {
  (void)alpha;
  check_pre(f, "eval_branching");
  l.seal();
  Evaluator ev;
  int n = l.num_states();
  ev.full = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  ev.diamond = [&](ActionSet acts, std::uint64_t set) {
    std::uint64_t out = 0;
    for (int q = 0; q < n; ++q) {
      bool hit = false;
      for_each_action(acts, [&](Action a) {
        if (!hit && (l.weak_post(q, a) & set)) hit = true;
      });
      if (hit) out |= std::uint64_t{1} << q;
    }
    return out;
  };
  ev.box = [&](ActionSet acts, std::uint64_t set) {
    std::uint64_t out = 0;
    for (int q = 0; q < n; ++q) {
      bool ok = true;
      for_each_action(acts, [&](Action a) {
        if (ok && (l.weak_post(q, a) & ~set)) ok = false;
      });
      if (ok) out |= std::uint64_t{1} << q;
    }
    return out;
  };
  return (ev.eval(f) >> s) & 1u;
}

}  // namespace recmon

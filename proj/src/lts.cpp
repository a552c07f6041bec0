#include "recmon/lts.hpp"

#include <deque>
#include <map>
#include <sstream>
#include <tuple>

#include "recmon/errors.hpp"

namespace recmon {

int Lts::add_state(const std::string &name) {
  if (names_.size() >= 64) fail(Errc::cap_exceeded, "LTS limited to 64 states");
  names_.push_back(name);
  sealed_ = false;
  return static_cast<int>(names_.size()) - 1;
}

void Lts::add_transition(int src, Action label, int dst) {
  trans_.emplace_back(src, label, dst);
  sealed_ = false;
}

int Lts::state_index(const std::string &name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

StateSet Lts::post(int s, Action label) const {
  StateSet out = 0;
  for (const auto &[src, l, dst] : trans_)
    if (src == s && l == label) out |= StateSet{1} << dst;
  return out;
}

void Lts::seal() const {
  if (sealed_) return;
  int n = num_states();
  // strong_[a+1][s]: successors of s on action a (index 0 = tau).
  int max_label = 0;
  for (const auto &[src, l, dst] : trans_) max_label = std::max(max_label, l + 1);
  strong_.assign(static_cast<size_t>(max_label) + 1, std::vector<StateSet>(n, 0));
  for (const auto &[src, l, dst] : trans_)
    strong_[static_cast<size_t>(l + 1)][static_cast<size_t>(src)] |= StateSet{1} << dst;

  tau_closure_.assign(static_cast<size_t>(n), 0);
  for (int s = 0; s < n; ++s) tau_closure_[static_cast<size_t>(s)] = StateSet{1} << s;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < n; ++s) {
      StateSet cur = tau_closure_[static_cast<size_t>(s)];
      StateSet next = cur;
      for (int q = 0; q < n; ++q)
        if ((cur >> q) & 1u) next |= strong_[0][static_cast<size_t>(q)];
      if (next != cur) {
        tau_closure_[static_cast<size_t>(s)] = next;
        changed = true;
      }
    }
  }
  sealed_ = true;
}

StateSet Lts::weak_post(int s, Action label) const {
  seal();
  StateSet start = tau_closure_[static_cast<size_t>(s)];
  if (label == kTau) return start;
  StateSet mid = 0;
  size_t idx = static_cast<size_t>(label + 1);
  for (int q = 0; q < num_states(); ++q)
    if ((start >> q) & 1u)
      mid |= idx < strong_.size() ? strong_[idx][static_cast<size_t>(q)] : 0;
  StateSet out = 0;
  for (int q = 0; q < num_states(); ++q)
    if ((mid >> q) & 1u) out |= tau_closure_[static_cast<size_t>(q)];
  return out;
}

StateSet Lts::weak_post(StateSet ss, Action label) const {
  StateSet out = 0;
  for (int q = 0; q < num_states(); ++q)
    if ((ss >> q) & 1u) out |= weak_post(q, label);
  return out;
}

// ---------------------------------------------------------------------------

Lts process_to_lts(const ProcessPtr &p, const Alphabet &alpha) {
  if (!is_closed(p)) fail(Errc::precondition, "process must be closed before execution");

  // Strong successors of a closed term; rec unfolds via tau.
  auto successors = [&](const ProcessPtr &q) {
    std::vector<std::pair<Action, ProcessPtr>> out;
    auto rec = [&](auto &&self, const ProcessPtr &r) -> void {
      switch (r->op) {
        case POp::Nil:
        case POp::Var:
          return;
        case POp::Act:
          out.emplace_back(r->act, r->lhs);
          return;
        case POp::Sum:
          self(self, r->lhs);
          self(self, r->rhs);
          return;
        case POp::Rec:
          out.emplace_back(kTau, substitute(r->lhs, r->name, r));
          return;
      }
    };
    rec(rec, q);
    return out;
  };

  Lts lts;
  std::map<std::string, int> index;
  std::deque<std::pair<ProcessPtr, int>> todo;
  auto intern = [&](const ProcessPtr &q) {
    std::string key = to_string(q, alpha);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    int id = lts.add_state(key);
    index.emplace(key, id);
    todo.emplace_back(q, id);
    return id;
  };
  intern(p);
  lts.set_initial(0);
  while (!todo.empty()) {
    auto [q, id] = todo.front();
    todo.pop_front();
    for (const auto &[label, succ] : successors(q))
      lts.add_transition(id, label, intern(succ));
  }
  return lts;
}

Lts trace_process(const TraceSpec &g, const Alphabet &alpha) {
  (void)alpha;
  Lts lts;
  size_t n = g.prefix.size() + g.cycle.size();
  if (n == 0) {
    lts.add_state("e");
    lts.set_initial(0);
    return lts;
  }
  for (size_t i = 0; i <= n; ++i) {
    if (i == n && g.is_lasso()) break;  // cycle folds back, no terminal state
    lts.add_state("p" + std::to_string(i));
  }
  std::vector<Action> word = g.prefix;
  word.insert(word.end(), g.cycle.begin(), g.cycle.end());
  for (size_t i = 0; i < n; ++i) {
    size_t dst = i + 1;
    if (dst == n && g.is_lasso()) dst = g.prefix.size();
    lts.add_transition(static_cast<int>(i), word[i], static_cast<int>(dst));
  }
  lts.set_initial(0);
  return lts;
}

std::set<TraceSpec> produced_finfinite_traces(const Lts &l, int s, int bound,
                                              const Alphabet &alpha) {
  std::set<TraceSpec> out;

  // Finite traces via the determinised weak-reachability graph.
  struct Node {
    StateSet set;
    std::vector<Action> word;
  };
  std::deque<Node> frontier;
  frontier.push_back({l.weak_post(s, kTau), {}});
  out.insert(TraceSpec{{}, {}});
  while (!frontier.empty()) {
    Node cur = frontier.front();
    frontier.pop_front();
    if (static_cast<int>(cur.word.size()) >= bound) continue;
    for (Action a = 0; a < alpha.size(); ++a) {
      StateSet next = 0;
      for (int q = 0; q < l.num_states(); ++q)
        if ((cur.set >> q) & 1u) next |= l.weak_post(q, a);
      if (!next) continue;
      Node nn{next, cur.word};
      nn.word.push_back(a);
      out.insert(TraceSpec{nn.word, {}});
      frontier.push_back(std::move(nn));
    }
  }

  // Lassos: s produces u v^w iff the subset trajectory along u v v ... stays
  // non-empty forever; subsets at the cycle boundary repeat, so it is enough
  // to iterate until a repeat.
  auto run_word = [&](StateSet from, const std::vector<Action> &w) {
    StateSet cur = from;
    for (Action a : w) {
      if (!cur) return StateSet{0};
      cur = l.weak_post(cur, a);
    }
    return cur;
  };
  StateSet start = l.weak_post(s, kTau);
  for (const auto &lasso : enumerate_lassos(alpha, bound)) {
    StateSet after_u = run_word(start, lasso.prefix);
    std::set<StateSet> seen;
    StateSet cur = after_u;
    bool produces = cur != 0;
    while (produces && seen.insert(cur).second) {
      cur = run_word(cur, lasso.cycle);
      if (!cur) produces = false;
    }
    if (produces) out.insert(lasso);
  }
  return out;
}

// ---------------------------------------------------------------------------

Lts parse_lts(const std::string &text, Alphabet &alpha, bool alphabet_required) {
  Lts lts;
  std::map<std::string, int> states;
  std::string initial_name;
  bool have_alpha = alpha.size() > 0;

  auto intern = [&](const std::string &name) {
    auto it = states.find(name);
    if (it != states.end()) return it->second;
    int id = lts.add_state(name);
    states.emplace(name, id);
    return id;
  };

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip comments and whitespace
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto issp = [](char c) { return std::isspace(static_cast<unsigned char>(c)); };
    while (!line.empty() && issp(line.front())) line.erase(line.begin());
    while (!line.empty() && issp(line.back())) line.pop_back();
    if (line.empty()) continue;

    if (line.rfind("alphabet:", 0) == 0) {
      std::istringstream fields(line.substr(9));
      std::vector<std::string> names;
      std::string w;
      while (fields >> w) names.push_back(w);
      alpha = Alphabet(names);
      have_alpha = true;
      continue;
    }
    if (line.rfind("initial:", 0) == 0) {
      std::istringstream fields(line.substr(8));
      if (!(fields >> initial_name))
        fail(Errc::syntax, "missing state after 'initial:' on line " + std::to_string(lineno));
      continue;
    }
    // transition: SRC -act-> DST
    auto arrow_open = line.find('-');
    auto arrow_close = line.find("->", arrow_open == std::string::npos ? 0 : arrow_open + 1);
    if (arrow_open == std::string::npos || arrow_close == std::string::npos)
      fail(Errc::syntax, "expected 'src -act-> dst' on line " + std::to_string(lineno));
    auto trim = [&](std::string s) {
      while (!s.empty() && issp(s.front())) s.erase(s.begin());
      while (!s.empty() && issp(s.back())) s.pop_back();
      return s;
    };
    std::string src = trim(line.substr(0, arrow_open));
    std::string act = trim(line.substr(arrow_open + 1, arrow_close - arrow_open - 1));
    std::string dst = trim(line.substr(arrow_close + 2));
    if (src.empty() || act.empty() || dst.empty())
      fail(Errc::syntax, "expected 'src -act-> dst' on line " + std::to_string(lineno));
    if (!have_alpha) fail(Errc::input, "alphabet must be declared before transitions");
    Action label = act == "tau" ? kTau : alpha.require(act);
    lts.add_transition(intern(src), label, intern(dst));
  }
  if (!have_alpha && alphabet_required) fail(Errc::input, "LTS file declares no alphabet");
  if (!initial_name.empty()) {
    int s = lts.state_index(initial_name);
    if (s < 0) s = intern(initial_name);
    lts.set_initial(s);
  } else if (lts.num_states() == 0) {
    fail(Errc::input, "LTS has no states");
  }
  return lts;
}

std::string lts_to_string(const Lts &l, const Alphabet &alpha) {
  std::ostringstream out;
  out << "alphabet:";
  for (const auto &n : alpha.names()) out << " " << n;
  out << "\ninitial: " << l.state_name(l.initial()) << "\n";
  for (const auto &[src, label, dst] : l.transitions())
    out << l.state_name(src) << " -" << (label == kTau ? "tau" : alpha.name(label))
        << "-> " << l.state_name(dst) << "\n";
  return out.str();
}

}  // namespace recmon

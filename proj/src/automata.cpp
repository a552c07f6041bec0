#include "recmon/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "recmon/errors.hpp"

namespace recmon {

namespace {

// Drops supersets, keeping a ⊆-antichain of minimal sets.
std::vector<std::uint64_t> minimize_antichain(std::vector<std::uint64_t> sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<std::uint64_t> out;
  for (std::uint64_t s : sets) {
    bool minimal = true;
    for (std::uint64_t t : sets)
      if (t != s && (t & ~s) == 0) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(s);
  }
  return out;
}

}  // namespace

Nfa alternating_to_nfa(const AlternatingAutomaton &a) {
  int actions = a.models.empty() ? 0 : static_cast<int>(a.models[0].size());
  std::map<std::uint64_t, int> index;
  std::vector<std::uint64_t> subsets;

  auto intern = [&](std::uint64_t s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    if (subsets.size() >= (1u << 20))
      fail(Errc::cap_exceeded, "NFA subset construction exceeded cap");
    int id = static_cast<int>(subsets.size());
    index.emplace(s, id);
    subsets.push_back(s);
    return id;
  };

  intern(std::uint64_t{1} << a.start);

  std::vector<std::vector<std::vector<int>>> next;
  for (size_t sid = 0; sid < subsets.size(); ++sid) {
    std::uint64_t s = subsets[sid];
    next.emplace_back(static_cast<size_t>(actions));
    for (int act = 0; act < actions; ++act) {
      // Successor requirement sets: one minimal model per member, unioned.
      // Keeping only ⊆-minimal unions preserves the language.
      std::vector<std::uint64_t> unions{0};
      bool dead = false;
      for (int q = 0; q < a.num_states && !dead; ++q) {
        if (!((s >> q) & 1u)) continue;
        const auto &mm = a.models[static_cast<size_t>(q)][static_cast<size_t>(act)];
        if (mm.empty()) {
          dead = true;
          break;
        }
        std::vector<std::uint64_t> grown;
        grown.reserve(unions.size() * mm.size());
        for (std::uint64_t u : unions)
          for (std::uint64_t t : mm) grown.push_back(u | t);
        unions = minimize_antichain(std::move(grown));
      }
      if (dead) continue;
      for (std::uint64_t u : unions)
        next[sid][static_cast<size_t>(act)].push_back(intern(u));
    }
  }

  Nfa nfa;
  nfa.num_states = static_cast<int>(subsets.size());
  nfa.start = 0;
  nfa.accepting.resize(static_cast<size_t>(nfa.num_states));
  for (int i = 0; i < nfa.num_states; ++i)
    nfa.accepting[static_cast<size_t>(i)] = (subsets[static_cast<size_t>(i)] & ~a.finals) == 0;
  nfa.next = std::move(next);
  return nfa;
}

Dfa nfa_to_dfa(const Nfa &n) {
  int actions = n.next.empty() ? 0 : static_cast<int>(n.next[0].size());
  std::map<std::set<int>, int> index;
  std::vector<std::set<int>> subsets;

  auto intern = [&](std::set<int> s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(subsets.size());
    index.emplace(s, id);
    subsets.push_back(std::move(s));
    return id;
  };

  intern(std::set<int>{n.start});
  Dfa d;
  for (size_t sid = 0; sid < subsets.size(); ++sid) {
    std::set<int> s = subsets[sid];  // copy: subsets may reallocate below
    bool accepting = false;
    for (int q : s) accepting = accepting || n.accepting[static_cast<size_t>(q)];
    d.accepting.push_back(accepting);
    d.next.emplace_back(static_cast<size_t>(actions), 0);
    for (int a = 0; a < actions; ++a) {
      std::set<int> t;
      for (int q : s)
        for (int r : n.next[static_cast<size_t>(q)][static_cast<size_t>(a)]) t.insert(r);
      d.next[sid][static_cast<size_t>(a)] = intern(std::move(t));
    }
  }
  d.num_states = static_cast<int>(subsets.size());
  d.start = 0;
  return d;
}

Dfa minimize_dfa(const Dfa &d, int alphabet_size) {
  int n = d.num_states;
  if (n == 0) return d;

  // Hopcroft partition refinement.
  std::vector<int> block(static_cast<size_t>(n));
  std::vector<std::set<int>> blocks(2);
  for (int q = 0; q < n; ++q) {
    int b = d.accepting[static_cast<size_t>(q)] ? 1 : 0;
    block[static_cast<size_t>(q)] = b;
    blocks[static_cast<size_t>(b)].insert(q);
  }
  if (blocks[0].empty() || blocks[1].empty()) {
    if (blocks[0].empty()) {
      blocks.erase(blocks.begin());
      for (auto &b : block) b = 0;
    } else {
      blocks.pop_back();
    }
  }

  // predecessors per action
  std::vector<std::vector<std::vector<int>>> pred(
      static_cast<size_t>(alphabet_size), std::vector<std::vector<int>>(static_cast<size_t>(n)));
  for (int q = 0; q < n; ++q)
    for (int a = 0; a < alphabet_size; ++a)
      pred[static_cast<size_t>(a)][static_cast<size_t>(d.next[static_cast<size_t>(q)][static_cast<size_t>(a)])]
          .push_back(q);

  std::set<std::pair<int, int>> worklist;  // (block index, action)
  for (size_t b = 0; b < blocks.size(); ++b)
    for (int a = 0; a < alphabet_size; ++a) worklist.insert({static_cast<int>(b), a});

  while (!worklist.empty()) {
    auto [bi, a] = *worklist.begin();
    worklist.erase(worklist.begin());
    std::set<int> splitter = blocks[static_cast<size_t>(bi)];  // copy: blocks mutate below

    // states with an a-transition into the splitter
    std::set<int> incoming;
    for (int q : splitter)
      for (int p : pred[static_cast<size_t>(a)][static_cast<size_t>(q)]) incoming.insert(p);
    if (incoming.empty()) continue;

    std::map<int, std::vector<int>> touched;  // block -> members hit
    for (int p : incoming) touched[block[static_cast<size_t>(p)]].push_back(p);

    for (auto &[tb, members] : touched) {
      auto &orig = blocks[static_cast<size_t>(tb)];
      if (members.size() == orig.size()) continue;  // block not split
      int nb = static_cast<int>(blocks.size());
      std::set<int> moved(members.begin(), members.end());
      for (int q : moved) orig.erase(q);
      blocks.push_back(moved);
      for (int q : moved) block[static_cast<size_t>(q)] = nb;
      for (int act = 0; act < alphabet_size; ++act) {
        if (worklist.count({tb, act})) {
          worklist.insert({nb, act});
        } else {
          // add the smaller half
          worklist.insert(blocks[static_cast<size_t>(tb)].size() <= moved.size()
                              ? std::make_pair(tb, act)
                              : std::make_pair(nb, act));
        }
      }
    }
  }

  Dfa out;
  out.num_states = static_cast<int>(blocks.size());
  out.start = block[static_cast<size_t>(d.start)];
  out.accepting.assign(static_cast<size_t>(out.num_states), false);
  out.next.assign(static_cast<size_t>(out.num_states),
                  std::vector<int>(static_cast<size_t>(alphabet_size), 0));
  for (int q = 0; q < n; ++q) {
    int b = block[static_cast<size_t>(q)];
    out.accepting[static_cast<size_t>(b)] = d.accepting[static_cast<size_t>(q)];
    for (int a = 0; a < alphabet_size; ++a)
      out.next[static_cast<size_t>(b)][static_cast<size_t>(a)] =
          block[static_cast<size_t>(d.next[static_cast<size_t>(q)][static_cast<size_t>(a)])];
  }

  // Drop states unreachable from the start (Hopcroft keeps them).
  std::vector<int> remap(static_cast<size_t>(out.num_states), -1);
  std::deque<int> todo{out.start};
  remap[static_cast<size_t>(out.start)] = 0;
  int count = 1;
  while (!todo.empty()) {
    int q = todo.front();
    todo.pop_front();
    for (int a = 0; a < alphabet_size; ++a) {
      int t = out.next[static_cast<size_t>(q)][static_cast<size_t>(a)];
      if (remap[static_cast<size_t>(t)] < 0) {
        remap[static_cast<size_t>(t)] = count++;
        todo.push_back(t);
      }
    }
  }
  Dfa pruned;
  pruned.num_states = count;
  pruned.start = 0;
  pruned.accepting.assign(static_cast<size_t>(count), false);
  pruned.next.assign(static_cast<size_t>(count),
                     std::vector<int>(static_cast<size_t>(alphabet_size), 0));
  for (int q = 0; q < out.num_states; ++q) {
    int r = remap[static_cast<size_t>(q)];
    if (r < 0) continue;
    pruned.accepting[static_cast<size_t>(r)] = out.accepting[static_cast<size_t>(q)];
    for (int a = 0; a < alphabet_size; ++a)
      pruned.next[static_cast<size_t>(r)][static_cast<size_t>(a)] =
          remap[static_cast<size_t>(out.next[static_cast<size_t>(q)][static_cast<size_t>(a)])];
  }
  return pruned;
}

namespace {

// Reachable product states of two total DFAs.
template <typename F>
void product_walk(const Dfa &a, const Dfa &b, int alphabet_size, F &&visit) {
  std::set<std::pair<int, int>> seen;
  std::deque<std::pair<int, int>> todo;
  todo.push_back({a.start, b.start});
  seen.insert({a.start, b.start});
  while (!todo.empty()) {
    auto [qa, qb] = todo.front();
    todo.pop_front();
    visit(qa, qb);
    for (int act = 0; act < alphabet_size; ++act) {
      std::pair<int, int> t{a.next[static_cast<size_t>(qa)][static_cast<size_t>(act)],
                            b.next[static_cast<size_t>(qb)][static_cast<size_t>(act)]};
      if (seen.insert(t).second) todo.push_back(t);
    }
  }
}

}  // namespace

bool dfa_equivalent(const Dfa &a, const Dfa &b, int alphabet_size) {
  bool equal = true;
  product_walk(a, b, alphabet_size, [&](int qa, int qb) {
    if (a.accepting[static_cast<size_t>(qa)] != b.accepting[static_cast<size_t>(qb)])
      equal = false;
  });
  return equal;
}

bool dfa_intersection_empty(const Dfa &a, const Dfa &b, int alphabet_size) {
  bool empty = true;
  product_walk(a, b, alphabet_size, [&](int qa, int qb) {
    if (a.accepting[static_cast<size_t>(qa)] && b.accepting[static_cast<size_t>(qb)])
      empty = false;
  });
  return empty;
}

bool dfa_language_empty(const Dfa &d) {
  for (bool acc : d.accepting)
    if (acc) {
      // reachability established by construction: all states kept are reachable
      return false;
    }
  return true;
}

std::string to_string(const AlternatingAutomaton &a, const Alphabet &alpha) {
  std::ostringstream out;
  out << "start q" << a.start << "\n";
  for (int q = 0; q < a.num_states; ++q) {
    out << "state q" << q;
    if (!a.labels.empty()) out << "  # " << a.labels[static_cast<size_t>(q)];
    out << "\n";
    if ((a.finals >> q) & 1u) out << "accept q" << q << "\n";
  }
  for (int q = 0; q < a.num_states; ++q)
    for (int act = 0; act < alpha.size(); ++act)
      for (std::uint64_t model : a.models[static_cast<size_t>(q)][static_cast<size_t>(act)]) {
        out << "edge q" << q << " " << alpha.name(act) << " ";
        bool first = true;
        if (model == 0) out << "{}";
        for (int r = 0; r < a.num_states; ++r)
          if ((model >> r) & 1u) {
            out << (first ? "" : ",") << "q" << r;
            first = false;
          }
        out << "\n";
      }
  return out.str();
}

std::string to_string(const Nfa &n, const Alphabet &alpha) {
  std::ostringstream out;
  out << "start q" << n.start << "\n";
  for (int q = 0; q < n.num_states; ++q) {
    out << "state q" << q << "\n";
    if (n.accepting[static_cast<size_t>(q)]) out << "accept q" << q << "\n";
  }
  for (int q = 0; q < n.num_states; ++q)
    for (int a = 0; a < alpha.size(); ++a)
      for (int t : n.next[static_cast<size_t>(q)][static_cast<size_t>(a)])
        out << "edge q" << q << " " << alpha.name(a) << " q" << t << "\n";
  return out.str();
}

std::string to_string(const Dfa &d, const Alphabet &alpha) {
  std::ostringstream out;
  out << "start q" << d.start << "\n";
  for (int q = 0; q < d.num_states; ++q) {
    out << "state q" << q << "\n";
    if (d.accepting[static_cast<size_t>(q)]) out << "accept q" << q << "\n";
  }
  for (int q = 0; q < d.num_states; ++q)
    for (int a = 0; a < alpha.size(); ++a)
      out << "edge q" << q << " " << alpha.name(a) << " q"
          << d.next[static_cast<size_t>(q)][static_cast<size_t>(a)] << "\n";
  return out.str();
}

}  // namespace recmon

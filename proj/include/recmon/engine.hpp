#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "recmon/lts.hpp"
#include "recmon/monitor.hpp"
#include "recmon/trace.hpp"

namespace recmon {

// Small-step operational semantics for regular and parallel monitors.
// System O is the user-facing rule set (rec unfolds via tau); System N
// replaces mRec with mRecF/mRecB and is what the automaton construction uses.
enum class System { O, N };

enum class Verdict { yes, no, end, none_yet };
std::string to_string(Verdict v);

struct EngineOptions {
  System system = System::O;
  // Cap on distinct monitor states visited per tau-closure; rec growth in
  // parallel monitors is otherwise unbounded.
  size_t closure_cap = 10000;
  // Callers holding a reactivity guarantee (the synthesis theorems) may skip
  // the explored reactivity precondition, which need not terminate on
  // infinite-state parallel monitors.
  bool assume_reactive = false;
};

// Set of monitors deduplicated by canonical key.
class MonitorSet {
 public:
  bool insert(const MonitorPtr &m, const Alphabet &alpha);
  bool contains_key(const std::string &key) const { return by_key_.count(key) > 0; }
  bool contains(const MonitorPtr &m, const Alphabet &alpha) const;
  size_t size() const { return by_key_.size(); }
  std::vector<MonitorPtr> items() const;
  bool contains_verdict(MOp v) const;

 private:
  std::map<std::string, MonitorPtr> by_key_;
};

// Successors of m on an external action or tau, by the rule systems of
// Figures "Monitors and Instrumentation" / "Parallel Monitors". For System N
// the binder map is taken from `root` (defaults to m itself).
std::vector<MonitorPtr> step(const MonitorPtr &m, Action label, const Alphabet &alpha,
                             const EngineOptions &opts = {},
                             const MonitorPtr &root = nullptr);

// All monitors reachable via tau* a1 tau* ... an tau*.
MonitorSet weak_after(const MonitorPtr &m, const std::vector<Action> &s,
                      const Alphabet &alpha, const EngineOptions &opts = {});

bool accepts(const MonitorPtr &m, const std::vector<Action> &s, const Alphabet &alpha,
             const EngineOptions &opts = {});
bool rejects(const MonitorPtr &m, const std::vector<Action> &s, const Alphabet &alpha,
             const EngineOptions &opts = {});

// (accepts, rejects) for every |s| <= bound, sharing the frontier across
// prefixes; much cheaper than one weak_after per trace.
std::map<std::vector<Action>, std::pair<bool, bool>> bounded_verdicts(
    const MonitorPtr &m, int bound, const Alphabet &alpha, const EngineOptions &opts = {});

// Whether m can weakly analyse `a` (tau* a).
bool can_weak_step(const MonitorPtr &m, Action a, const Alphabet &alpha,
                   const EngineOptions &opts = {}, const MonitorPtr &root = nullptr);

// yes (resp. no) iff some finite prefix of the lasso t is accepted
// (rejected); decided exactly through the acceptance/rejection DFAs of the
// transform module.
Verdict lasso_verdict(const MonitorPtr &m, const TraceSpec &t, const Alphabet &alpha);

// Same decision from precomputed DFAs (sweeps build them once per monitor).
struct Dfa;
Verdict lasso_verdict_with(const Dfa &acc, const Dfa &rej, const TraceSpec &t);

// Reachable states of a closed regular monitor (all strong steps).
std::vector<MonitorPtr> reach(const MonitorPtr &m, const Alphabet &alpha,
                              const EngineOptions &opts = {});

// The states/size characterisation of the monitor state space.
std::vector<MonitorPtr> states_characterisation(const MonitorPtr &m, const Alphabet &alpha);

// Every reachable state can weakly analyse every external action. Regular
// monitors are decided exactly; parallel exploration is capped.
bool is_reactive(const MonitorPtr &m, const Alphabet &alpha, const EngineOptions &opts = {});

// Collapses decided verdict pairs (yes && m -> m, no && m -> no, ...); a
// sound state identity for reactivity exploration since the collapse steps
// are tau moves that commute with analysis.
MonitorPtr collapse_verdicts(const MonitorPtr &m);

// No finite trace reaches both yes and no. Exact via the DFA product for
// regular monitors; bounded (all |s| <= bound) for parallel ones.
bool is_consistent(const MonitorPtr &m, const Alphabet &alpha, int bound = 6,
                   const EngineOptions &opts = {});

// ---- Instrumentation -------------------------------------------------------

struct InstrumentedConfig {
  MonitorPtr monitor;
  int state = 0;
};

struct InstrumentStep {
  Action label = kTau;  // kTau for the asynchronous rules
  std::string rule;     // iMon, iTer, iAsyP, iAsyM
  MonitorPtr monitor;
  int state = 0;
};

// Exhaustive instrumentation: every (s, v) with <m,p> =s=> <v,p'> and
// |s| <= depth, v a verdict.
std::set<std::pair<std::vector<Action>, Verdict>> instrument_exhaustive(
    const MonitorPtr &m, const Lts &l, int depth, const Alphabet &alpha,
    const EngineOptions &opts = {});

// One random run, scheduling process and monitor tau moves with alternating
// preference; stops at `fuel` steps or when both sides are stuck.
std::vector<InstrumentStep> instrument_random(const MonitorPtr &m, const Lts &l,
                                              std::uint64_t seed, int fuel,
                                              const Alphabet &alpha,
                                              const EngineOptions &opts = {});

}  // namespace recmon

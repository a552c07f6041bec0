#include "recmon/synthesis.hpp"

#include <map>

#include "recmon/errors.hpp"
#include "recmon/normalize.hpp"
#include "recmon/transform.hpp"

namespace recmon {

SynthesisMode parse_mode(const std::string &name) {
  if (name == "complete") return SynthesisMode::complete;
  if (name == "violation") return SynthesisMode::violation;
  if (name == "satisfaction") return SynthesisMode::satisfaction;
  if (name == "branching-violation") return SynthesisMode::branching_violation;
  if (name == "branching-satisfaction") return SynthesisMode::branching_satisfaction;
  fail(Errc::input, "unknown synthesis mode '" + name + "'");
}

std::string to_string(SynthesisMode mode) {
  switch (mode) {
    case SynthesisMode::complete:
      return "complete";
    case SynthesisMode::violation:
      return "violation";
    case SynthesisMode::satisfaction:
      return "satisfaction";
    case SynthesisMode::branching_violation:
      return "branching-violation";
    case SynthesisMode::branching_satisfaction:
      return "branching-satisfaction";
  }
  return "?";
}

namespace {

// Shared clauses of the complete and partial linear-time syntheses; they
// differ only in which fragments are admitted.
MonitorPtr linear_synth(const FormulaPtr &f, const Alphabet &alpha,
                        std::map<std::string, std::string> &rec_names, int &counter) {
  switch (f->op) {
    case FOp::Tt:
      return m_yes();
    case FOp::Ff:
      return m_no();
    case FOp::And:
      return m_conj(linear_synth(f->lhs, alpha, rec_names, counter),
                    linear_synth(f->rhs, alpha, rec_names, counter));
    case FOp::Or:
      return m_disj(linear_synth(f->lhs, alpha, rec_names, counter),
                    linear_synth(f->rhs, alpha, rec_names, counter));
    case FOp::Box: {
      MonitorPtr body = m_prefix_set(f->acts, linear_synth(f->lhs, alpha, rec_names, counter));
      MonitorPtr co = m_prefix_set(alpha.complement(f->acts), m_yes());
      return co ? m_sum(body, co) : body;
    }
    case FOp::Dia: {
      MonitorPtr body = m_prefix_set(f->acts, linear_synth(f->lhs, alpha, rec_names, counter));
      MonitorPtr co = m_prefix_set(alpha.complement(f->acts), m_no());
      return co ? m_sum(body, co) : body;
    }
    case FOp::Max:
    case FOp::Min: {
      std::string x = "x" + std::to_string(counter++);
      rec_names[f->name] = x;
      auto body = linear_synth(f->lhs, alpha, rec_names, counter);
      return m_rec(x, body);
    }
    case FOp::Var: {
      auto it = rec_names.find(f->name);
      if (it == rec_names.end()) fail(Errc::precondition, "unbound variable " + f->name);
      return m_var(it->second);
    }
  }
  fail(Errc::internal, "unreachable");
}

void require_closed_guarded(const FormulaPtr &f, const char *op) {
  if (!is_closed(f)) fail(Errc::fragment, "formula must be closed", op);
  if (!is_guarded(f)) fail(Errc::precondition, "formula must be guarded", op);
}

}  // namespace

MonitorPtr synth_complete(const FormulaPtr &f, const Alphabet &alpha) {
  require_closed_guarded(f, "synth_complete");
  if (!classify(f).hml)
    fail(Errc::fragment, "complete synthesis needs a fixpoint-free (HML) formula",
         "synth_complete");
  std::map<std::string, std::string> rec_names;
  int counter = 0;
  return linear_synth(f, alpha, rec_names, counter);
}

MonitorPtr synth_partial(const FormulaPtr &f, const Alphabet &alpha) {
  require_closed_guarded(f, "synth_partial");
  auto fr = classify(f);
  if (!fr.ltmus && !fr.ltmuc)
    fail(Errc::fragment, "partial synthesis needs an ltmuS or ltmuC formula",
         "synth_partial");
  std::map<std::string, std::string> rec_names;
  int counter = 0;
  return linear_synth(f, alpha, rec_names, counter);
}

namespace {

MonitorPtr branching_synth(const FormulaPtr &f, bool rejection, const Alphabet &alpha,
                           std::map<std::string, std::string> &rec_names, int &counter) {
  switch (f->op) {
    case FOp::Tt:
      return rejection ? m_end() : m_yes();
    case FOp::Ff:
      return rejection ? m_no() : m_end();
    case FOp::And:
    case FOp::Or:
      return m_sum(branching_synth(f->lhs, rejection, alpha, rec_names, counter),
                   branching_synth(f->rhs, rejection, alpha, rec_names, counter));
    case FOp::Box:
    case FOp::Dia:
      return m_prefix_set(f->acts, branching_synth(f->lhs, rejection, alpha, rec_names, counter));
    case FOp::Max:
    case FOp::Min: {
      std::string x = "x" + std::to_string(counter++);
      rec_names[f->name] = x;
      auto body = branching_synth(f->lhs, rejection, alpha, rec_names, counter);
      return m_rec(x, body);
    }
    case FOp::Var: {
      auto it = rec_names.find(f->name);
      if (it == rec_names.end()) fail(Errc::precondition, "unbound variable " + f->name);
      return m_var(it->second);
    }
  }
  fail(Errc::internal, "unreachable");
}

}  // namespace

MonitorPtr synth_branching(const FormulaPtr &f, const Alphabet &alpha) {
  require_closed_guarded(f, "synth_branching");
  auto fr = classify(f);
  if (!fr.shml && !fr.chml)
    fail(Errc::fragment, "branching synthesis needs an sHML or cHML formula",
         "synth_branching");
  std::map<std::string, std::string> rec_names;
  int counter = 0;
  return branching_synth(f, fr.shml, alpha, rec_names, counter);
}

MonitorPtr synthesize(const FormulaPtr &f, SynthesisMode mode, const Alphabet &alpha) {
  auto fr = classify(f);
  switch (mode) {
    case SynthesisMode::complete:
      return synth_complete(f, alpha);
    case SynthesisMode::violation:
      if (!fr.ltmus) fail(Errc::fragment, "violation mode needs an ltmuS formula");
      return synth_partial(f, alpha);
    case SynthesisMode::satisfaction:
      if (!fr.ltmuc) fail(Errc::fragment, "satisfaction mode needs an ltmuC formula");
      return synth_partial(f, alpha);
    case SynthesisMode::branching_violation:
      if (!fr.shml) fail(Errc::fragment, "branching-violation mode needs an sHML formula");
      return synth_branching(f, alpha);
    case SynthesisMode::branching_satisfaction:
      if (!fr.chml) fail(Errc::fragment, "branching-satisfaction mode needs a cHML formula");
      return synth_branching(f, alpha);
  }
  fail(Errc::internal, "unreachable");
}

namespace {

// Sum family as prefixes; nullopt result encoded by `ok`.
struct PrefixFamily {
  bool ok = false;
  std::map<Action, MonitorPtr> children;
};

PrefixFamily prefix_family(const MonitorPtr &m) {
  PrefixFamily fam;
  std::vector<MonitorPtr> stack{m};
  while (!stack.empty()) {
    MonitorPtr cur = stack.back();
    stack.pop_back();
    if (cur->op == MOp::Sum) {
      stack.push_back(cur->lhs);
      stack.push_back(cur->rhs);
      continue;
    }
    if (cur->op != MOp::Act) return {};
    if (fam.children.count(cur->act)) return {};  // not deterministic
    fam.children[cur->act] = cur->lhs;
  }
  fam.ok = true;
  return fam;
}

}  // namespace

FormulaPtr formula_from_monitor(const MonitorPtr &m, const Alphabet &alpha) {
  if (!is_recursion_free(m))
    fail(Errc::precondition, "monitor must be recursion-free", "formula_from_monitor");
  switch (m->op) {
    case MOp::Yes:
    case MOp::End:
      return f_tt();  // end never reaches a verdict; tt is the weakest sound choice
    case MOp::No:
      return f_ff();
    case MOp::Act:
    case MOp::Sum: {
      auto fam = prefix_family(m);
      if (!fam.ok)
        fail(Errc::precondition, "monitor is not syntactically deterministic",
             "formula_from_monitor");
      ActionSet covered = 0;
      for (const auto &[a, child] : fam.children) covered |= set_of(a);
      if (covered != alpha.all())
        fail(Errc::precondition, "monitor is not reactive (sum does not cover the alphabet)",
             "formula_from_monitor");
      FormulaPtr out;
      for (const auto &[a, child] : fam.children) {
        FormulaPtr conjunct = f_box(set_of(a), formula_from_monitor(child, alpha));
        out = out ? f_and(out, conjunct) : conjunct;
      }
      return out;
    }
    default:
      fail(Errc::precondition, "monitor outside the recursion-free deterministic fragment",
           "formula_from_monitor");
  }
}

MonitorPtr red(const MonitorPtr &m, const Alphabet &alpha) {
  switch (m->op) {
    case MOp::Yes:
    case MOp::No:
    case MOp::Var:
      return m;
    case MOp::End:
      return m_yes();
    case MOp::Act: {
      MonitorPtr body = m_act(m->act, red(m->lhs, alpha));
      MonitorPtr co = m_prefix_set(alpha.complement(set_of(m->act)), m_yes());
      return co ? m_sum(body, co) : body;
    }
    case MOp::Sum:
      return m_conj(red(m->lhs, alpha), red(m->rhs, alpha));
    case MOp::ParAnd:
      return m_conj(red(m->lhs, alpha), red(m->rhs, alpha));
    case MOp::ParOr:
      return m_disj(red(m->lhs, alpha), red(m->rhs, alpha));
    case MOp::Rec:
      return m_rec(m->name, red(m->lhs, alpha));
  }
  return m;
}

FormulaPtr extract_complete_formula(const MonitorPtr &m, const Alphabet &alpha,
                                    const EngineOptions &opts) {
  MonitorPtr regular;
  try {
    regular = parallel_to_regular(m, alpha, opts);
  } catch (const Error &e) {
    throw Error(e.code(), e.what(), "extract[parallel-to-regular]");
  }
  // parallel_to_regular output is already syntactically deterministic; the
  // determinize stage revalidates consistency on the regular route.
  MonitorPtr det;
  try {
    det = determinize(regular, alpha, opts);
  } catch (const Error &e) {
    throw Error(e.code(), e.what(), "extract[determinize]");
  }
  MonitorPtr norec;
  try {
    norec = no_rec(det, alpha, opts);
  } catch (const Error &e) {
    throw Error(e.code(), e.what(), "extract[no-rec]");
  }
  try {
    return formula_from_monitor(norec, alpha);
  } catch (const Error &e) {
    throw Error(e.code(), e.what(), "extract[formula-from-monitor]");
  }
}

}  // namespace recmon

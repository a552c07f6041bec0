// recmon: recHML monitor synthesis and analysis tool.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "recmon/engine.hpp"
#include "recmon/errors.hpp"
#include "recmon/lts.hpp"
#include "recmon/normalize.hpp"
#include "recmon/parse.hpp"
#include "recmon/selftest.hpp"
#include "recmon/semantics.hpp"
#include "recmon/synthesis.hpp"
#include "recmon/transform.hpp"

using json = nlohmann::json;
using namespace recmon;

namespace {

struct Report {
  std::string command;
  json inputs = json::object();
  json result;
  std::vector<std::string> diagnostics;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  bool use_json = false;
  int exit_code = 0;

  void emit() {
    if (!use_json) return;
    json doc;
    doc["command"] = command;
    doc["inputs"] = inputs;
    doc["result"] = result;
    doc["diagnostics"] = diagnostics;
    doc["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    doc["exit"] = exit_code;
    std::cout << doc.dump(2) << std::endl;
  }
};

Alphabet need_alphabet(const std::string &csv) {
  if (csv.empty())
    fail(Errc::input, "an alphabet is required (use --alphabet a,b or an LTS file header)");
  return Alphabet::from_csv(csv);
}

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) fail(Errc::input, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Lts load_lts(const std::string &path, const std::string &alpha_csv, Alphabet &alpha) {
  if (!alpha_csv.empty()) alpha = Alphabet::from_csv(alpha_csv);
  return parse_lts(read_file(path), alpha, alpha_csv.empty());
}

json fragment_json(const Fragment &fr) {
  return json{{"HML", fr.hml},       {"ltmuS", fr.ltmus}, {"ltmuC", fr.ltmuc},
              {"ftmuS", fr.ftmus},   {"ftmuC", fr.ftmuc}, {"sHML", fr.shml},
              {"cHML", fr.chml},     {"closed", fr.closed}, {"guarded", fr.guarded}};
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"recmon: compile recHML formulas into runtime monitors, run them over "
               "traces and processes, and transform parallel monitors into "
               "deterministic regular ones"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  std::string alpha_csv;
  bool json_out = false;
  std::uint64_t seed = 1;
  app.add_option("--alphabet", alpha_csv, "comma-separated external actions (e.g. a,b)");
  app.add_flag("--json", json_out, "emit one JSON report on stdout");
  app.add_option("--seed", seed, "seed for randomized commands");

  // classify
  std::string cl_formula;
  auto *cmd_classify = app.add_subcommand("classify", "fragment membership of a formula");
  cmd_classify->add_option("formula", cl_formula)->required();

  // synth
  std::string sy_formula, sy_mode = "complete";
  auto *cmd_synth = app.add_subcommand("synth", "synthesise a monitor from a formula");
  cmd_synth->add_option("formula", sy_formula)->required();
  cmd_synth->add_option("--mode", sy_mode,
                        "complete|violation|satisfaction|branching-violation|"
                        "branching-satisfaction");

  // verdict
  std::string ve_monitor, ve_trace;
  auto *cmd_verdict = app.add_subcommand("verdict", "run a monitor over a trace");
  cmd_verdict->add_option("monitor", ve_monitor)->required();
  cmd_verdict->add_option("--trace", ve_trace)->required();

  // check
  std::string ch_formula, ch_trace, ch_sem = "linear";
  auto *cmd_check = app.add_subcommand("check", "evaluate a formula on a trace");
  cmd_check->add_option("formula", ch_formula)->required();
  cmd_check->add_option("--trace", ch_trace)->required();
  cmd_check->add_option("--semantics", ch_sem, "linear|finfinite");

  // mc
  std::string mc_formula, mc_lts, mc_state;
  auto *cmd_mc = app.add_subcommand("mc", "evaluate a formula on an LTS state");
  cmd_mc->add_option("formula", mc_formula)->required();
  cmd_mc->add_option("--lts", mc_lts, "LTS file")->required();
  cmd_mc->add_option("--state", mc_state, "state name (default: the declared initial)");

  // transform
  std::string tr_monitor, tr_emit = "monitor", tr_polarity = "accept";
  auto *cmd_transform =
      app.add_subcommand("transform", "parallel monitor to deterministic regular monitor");
  cmd_transform->add_option("monitor", tr_monitor)->required();
  cmd_transform->add_option("--emit", tr_emit, "monitor|alternating|nfa|dfa");
  cmd_transform->add_option("--polarity", tr_polarity, "accept|reject (automata emission)");

  // normalize
  std::string no_formula;
  auto *cmd_normalize = app.add_subcommand("normalize", "slim normal form with rewrite steps");
  cmd_normalize->add_option("formula", no_formula)->required();

  // equiv
  std::string eq_m, eq_n;
  int eq_bounded = -1;
  auto *cmd_equiv = app.add_subcommand("equiv", "verdict equivalence of two monitors");
  cmd_equiv->add_option("m", eq_m)->required();
  cmd_equiv->add_option("n", eq_n)->required();
  cmd_equiv->add_option("--bounded", eq_bounded, "compare on all |s| <= k instead of exactly");

  // simulate
  std::string si_monitor, si_lts, si_mode = "exhaustive";
  int si_depth = 4, si_fuel = 50;
  auto *cmd_simulate = app.add_subcommand("simulate", "instrument a monitor with a process");
  cmd_simulate->add_option("monitor", si_monitor)->required();
  cmd_simulate->add_option("--lts", si_lts, "LTS file")->required();
  cmd_simulate->add_option("--mode", si_mode, "exhaustive|random");
  cmd_simulate->add_option("--depth", si_depth, "trace depth (exhaustive)");
  cmd_simulate->add_option("--fuel", si_fuel, "max steps (random)");

  // extract
  std::string ex_monitor;
  auto *cmd_extract =
      app.add_subcommand("extract", "HML formula a complete monitor is monitoring for");
  cmd_extract->add_option("monitor", ex_monitor)->required();

  // selftest
  int st_depth = 3, st_trace_bound = 5, st_random = 100;
  long st_instances = 2000;
  auto *cmd_selftest = app.add_subcommand("selftest", "run the property sweep");
  cmd_selftest->add_option("--formula-depth", st_depth);
  cmd_selftest->add_option("--trace-bound", st_trace_bound);
  cmd_selftest->add_option("--random-formulas", st_random);
  cmd_selftest->add_option("--instances", st_instances, "randomized instances per lemma");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  Report report;
  report.use_json = json_out;

  try {
    if (*cmd_classify) {
      report.command = "classify";
      Alphabet alpha = need_alphabet(alpha_csv);
      auto f = parse_formula(cl_formula, alpha);
      auto fr = classify(f);
      report.inputs["formula"] = to_string(f, alpha);
      report.result = fragment_json(fr);
      if (!json_out) {
        std::cout << "formula: " << to_string(f, alpha) << "\n";
        std::cout << "HML: " << (fr.hml ? "yes" : "no") << "  ltmuS: " << (fr.ltmus ? "yes" : "no")
                  << "  ltmuC: " << (fr.ltmuc ? "yes" : "no")
                  << "  ftmuS: " << (fr.ftmus ? "yes" : "no")
                  << "  ftmuC: " << (fr.ftmuc ? "yes" : "no")
                  << "  sHML: " << (fr.shml ? "yes" : "no")
                  << "  cHML: " << (fr.chml ? "yes" : "no") << "\n";
        std::cout << "closed: " << (fr.closed ? "yes" : "no")
                  << "  guarded: " << (fr.guarded ? "yes" : "no") << std::endl;
      }
    } else if (*cmd_synth) {
      report.command = "synth";
      Alphabet alpha = need_alphabet(alpha_csv);
      auto f = parse_formula(sy_formula, alpha);
      auto m = synthesize(f, parse_mode(sy_mode), alpha);
      report.inputs["formula"] = to_string(f, alpha);
      report.inputs["mode"] = sy_mode;
      report.result = to_string(m, alpha);
      if (!json_out) std::cout << to_string(m, alpha) << std::endl;
    } else if (*cmd_verdict) {
      report.command = "verdict";
      Alphabet alpha = need_alphabet(alpha_csv);
      auto m = parse_monitor(ve_monitor, alpha);
      auto t = parse_trace(ve_trace, alpha);
      report.inputs["monitor"] = to_string(m, alpha);
      report.inputs["trace"] = to_string(t, alpha);
      Verdict v;
      if (t.is_lasso()) {
        v = lasso_verdict(m, t, alpha);
      } else {
        bool acc = accepts(m, t.prefix, alpha);
        bool rej = rejects(m, t.prefix, alpha);
        v = acc ? Verdict::yes : (rej ? Verdict::no : Verdict::none_yet);
        if (acc && rej) report.diagnostics.push_back("monitor is inconsistent on this trace");
      }
      report.result = to_string(v);
      report.exit_code = (v == Verdict::yes) ? 0 : 1;
      if (!json_out) std::cout << to_string(v) << std::endl;
    } else if (*cmd_check) {
      report.command = "check";
      Alphabet alpha = need_alphabet(alpha_csv);
      auto f = parse_formula(ch_formula, alpha);
      auto t = parse_trace(ch_trace, alpha);
      bool truth;
      if (ch_sem == "linear")
        truth = eval_linear(f, t, alpha);
      else if (ch_sem == "finfinite")
        truth = eval_finfinite(f, t, alpha);
      else
        fail(Errc::input, "unknown semantics '" + ch_sem + "'");
      report.inputs["formula"] = to_string(f, alpha);
      report.inputs["trace"] = to_string(t, alpha);
      report.inputs["semantics"] = ch_sem;
      report.result = truth;
      report.exit_code = truth ? 0 : 1;
      if (!json_out) std::cout << (truth ? "true" : "false") << std::endl;
    } else if (*cmd_mc) {
      report.command = "mc";
      Alphabet alpha;
      Lts l = load_lts(mc_lts, alpha_csv, alpha);
      auto f = parse_formula(mc_formula, alpha);
      int s = l.initial();
      if (!mc_state.empty()) {
        s = l.state_index(mc_state);
        if (s < 0) fail(Errc::input, "unknown state '" + mc_state + "'");
      }
      bool truth = eval_branching(f, l, s, alpha);
      report.inputs["formula"] = to_string(f, alpha);
      report.inputs["state"] = l.state_name(s);
      report.result = truth;
      report.exit_code = truth ? 0 : 1;
      if (!json_out) std::cout << (truth ? "true" : "false") << std::endl;
    } else if (*cmd_transform) {
      report.command = "transform";
      Alphabet alpha = need_alphabet(alpha_csv);
      auto m = parse_monitor(tr_monitor, alpha);
      report.inputs["monitor"] = to_string(m, alpha);
      report.inputs["emit"] = tr_emit;
      Polarity pol = tr_polarity == "reject" ? Polarity::reject : Polarity::accept;
      std::string text;
      if (tr_emit == "monitor") {
        auto r = is_regular(m) ? determinize(m, alpha) : parallel_to_regular(m, alpha);
        text = to_string(r, alpha);
      } else if (tr_emit == "alternating") {
        text = to_string(monitor_to_alternating(m, pol, alpha), alpha);
      } else if (tr_emit == "nfa") {
        text = to_string(alternating_to_nfa(monitor_to_alternating(m, pol, alpha)), alpha);
      } else if (tr_emit == "dfa") {
        text = to_string(monitor_language_dfa(m, pol, alpha), alpha);
      } else {
        fail(Errc::input, "unknown emission '" + tr_emit + "'");
      }
      report.result = text;
      if (!json_out) std::cout << text << std::endl;
    } else if (*cmd_normalize) {
      report.command = "normalize";
      Alphabet alpha = need_alphabet(alpha_csv);
      auto f = parse_formula(no_formula, alpha);
      auto [slim, trace] = to_slim(f, alpha);
      report.inputs["formula"] = to_string(f, alpha);
      json steps = json::array();
      for (size_t i = 0; i < trace.steps.size(); ++i) {
        const auto &st = trace.steps[i];
        steps.push_back(json{{"step", i + 1},
                             {"rule", st.rule},
                             {"after", to_string(st.after, alpha)}});
      }
      report.result = json{{"slim", to_string(slim, alpha)}, {"steps", steps}};
      if (!json_out) {
        for (size_t i = 0; i < trace.steps.size(); ++i)
          std::cout << (i + 1) << ". [" << trace.steps[i].rule << "] "
                    << to_string(trace.steps[i].after, alpha) << "\n";
        std::cout << "slim: " << to_string(slim, alpha) << std::endl;
      }
    } else if (*cmd_equiv) {
      report.command = "equiv";
      Alphabet alpha = need_alphabet(alpha_csv);
      auto m = parse_monitor(eq_m, alpha);
      auto n = parse_monitor(eq_n, alpha);
      bool eq = eq_bounded >= 0
                    ? verdict_equivalent(m, n, alpha, EquivMode::bounded, eq_bounded)
                    : verdict_equivalent(m, n, alpha, EquivMode::exact);
      report.inputs["m"] = to_string(m, alpha);
      report.inputs["n"] = to_string(n, alpha);
      report.result = eq;
      report.exit_code = eq ? 0 : 1;
      if (!json_out) std::cout << (eq ? "equivalent" : "not equivalent") << std::endl;
    } else if (*cmd_simulate) {
      report.command = "simulate";
      Alphabet alpha;
      Lts l = load_lts(si_lts, alpha_csv, alpha);
      auto m = parse_monitor(si_monitor, alpha);
      report.inputs["monitor"] = to_string(m, alpha);
      if (si_mode == "exhaustive") {
        auto runs = instrument_exhaustive(m, l, si_depth, alpha);
        json arr = json::array();
        for (const auto &[trace, v] : runs) {
          TraceSpec t{trace, {}};
          arr.push_back(json{{"trace", to_string(t, alpha)}, {"verdict", to_string(v)}});
          if (!json_out)
            std::cout << "\"" << to_string(t, alpha) << "\" -> " << to_string(v) << "\n";
        }
        report.result = arr;
        if (!json_out) std::cout.flush();
      } else if (si_mode == "random") {
        auto steps = instrument_random(m, l, seed, si_fuel, alpha);
        json arr = json::array();
        MonitorPtr cur = m;
        for (const auto &st : steps) {
          std::string label = st.label == kTau ? "tau" : alpha.name(st.label);
          arr.push_back(json{{"label", label},
                             {"rule", st.rule},
                             {"monitor", to_string(st.monitor, alpha)},
                             {"state", l.state_name(st.state)}});
          if (!json_out)
            std::cout << "--" << label << "--> (" << st.rule << ") <"
                      << to_string(st.monitor, alpha) << " | " << l.state_name(st.state)
                      << ">\n";
        }
        report.result = json{{"seed", seed}, {"steps", arr}};
        if (!json_out) std::cout.flush();
      } else {
        fail(Errc::input, "unknown mode '" + si_mode + "'");
      }
    } else if (*cmd_extract) {
      report.command = "extract";
      Alphabet alpha = need_alphabet(alpha_csv);
      auto m = parse_monitor(ex_monitor, alpha);
      auto f = extract_complete_formula(m, alpha);
      report.inputs["monitor"] = to_string(m, alpha);
      report.result = to_string(f, alpha);
      if (!json_out) std::cout << to_string(f, alpha) << std::endl;
    } else if (*cmd_selftest) {
      report.command = "selftest";
      sweep::Config cfg;
      if (!alpha_csv.empty()) cfg.alphabet = Alphabet::from_csv(alpha_csv);
      cfg.formula_depth = st_depth;
      cfg.lasso_bound = st_trace_bound;
      cfg.random_formulas = st_random;
      cfg.randomized_instances = st_instances;
      cfg.seed = seed;
      auto results = sweep::run_acceptance(cfg, json_out ? nullptr : &std::cout);
      long failures = 0;
      json arr = json::array();
      for (const auto &r : results) {
        failures += r.failures;
        arr.push_back(json{{"id", r.id},
                           {"name", r.name},
                           {"checked", r.checked},
                           {"failures", r.failures},
                           {"first_failure", r.first_failure},
                           {"seconds", r.seconds}});
      }
      report.inputs["seed"] = seed;
      report.result = arr;
      report.exit_code = failures == 0 ? 0 : 1;
      if (!json_out)
        std::cout << (failures == 0 ? "selftest passed" : "selftest FAILED") << std::endl;
    }
  } catch (const Error &e) {
    report.diagnostics.push_back(e.what());
    report.exit_code = e.exit_code();
    if (!json_out) std::cerr << "error: " << e.what() << std::endl;
  } catch (const std::exception &e) {
    report.diagnostics.push_back(e.what());
    report.exit_code = 2;
    if (!json_out) std::cerr << "error: " << e.what() << std::endl;
  }

  report.emit();
  return report.exit_code;
}

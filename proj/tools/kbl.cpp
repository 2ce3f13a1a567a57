// Command-line front end. Exit codes: 0 satisfied/success, 1 not satisfied,
// 2 error, 3 common knowledge undecided within the bound.

#include <CLI11.hpp>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "kbl/checker.hpp"
#include "kbl/deduction.hpp"
#include "kbl/errors.hpp"
#include "kbl/generate.hpp"
#include "kbl/io.hpp"
#include "kbl/translate.hpp"

using json = nlohmann::ordered_json;
using namespace kbl;

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;
constexpr int kExitUnknown = 3;

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::True: return kExitTrue;
    case Verdict::False: return kExitFalse;
    case Verdict::Unknown: return kExitUnknown;
  }
  return kExitError;
}

std::string big(const BigInt& v) { return v.str(); }

json cost_json(const CostReport& c) {
  json outer = json::array();
  for (const auto& o : c.outer)
    outer.push_back({{"formula", o.formula.to_string()}, {"agent", o.agent}, {"kb_size", o.kb_size}, {"size", o.size}});
  return {{"formula_size", c.formula_size},
          {"characteristic_size", c.characteristic_size},
          {"m_phi", c.m_phi},
          {"outer", outer},
          {"snm_modal", big(c.snm_modal)},
          {"kripke_modal", big(c.kripke_modal)},
          {"snm_bound", big(c.snm_bound)},
          {"kripke_bound", big(c.kripke_bound)},
          {"snm_cheaper", c.snm_cheaper ? json(*c.snm_cheaper) : json(nullptr)},
          {"check_seconds", c.check_seconds}};
}

void print_lines(const std::vector<std::string>& lines) {
  for (const auto& l : lines) std::cout << l << '\n';
}

Snm load_snm(const std::string& path, bool validate = true) {
  ModelParseOptions opts;
  opts.validate = validate;
  return parse_snm(read_file(path), opts);
}

struct Common {
  bool json = false;
  std::size_t common_bound = 3;
  std::size_t guard = CanonicalOptions{}.guard;
  bool trace = false;
};

int cmd_check(const std::string& model, const std::string& text, const Common& c) {
  const Snm snm = load_snm(model);
  const Formula phi = parse_formula(text);
  CheckConfig cfg;
  cfg.common_bound = c.common_bound;
  const auto start = std::chrono::steady_clock::now();
  const CheckResult r = check(snm, phi, cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CostReport cost = cost_report(snm, phi, cfg, false);
  cost.verdict = r.verdict;
  cost.check_seconds = seconds;
  if (c.json) {
    json outer = json::array();
    for (const auto& o : r.outer) outer.push_back({{"formula", o.formula.to_string()}, {"verdict", to_string(o.verdict)}});
    json out = {{"command", "check"},       {"model", model},          {"formula", phi.to_string()},
                {"verdict", to_string(r.verdict)}, {"outer", outer}, {"cost", cost_json(cost)}};
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "verdict: " << to_string(r.verdict) << '\n';
    for (const auto& o : r.outer) std::cout << "  " << o.formula.to_string() << ": " << to_string(o.verdict) << '\n';
    std::cout << "snm bound: " << cost.snm_bound << "\nkripke bound: " << cost.kripke_bound << '\n';
  }
  return exit_for(r.verdict);
}

int cmd_derive(const std::string& model, const std::string& who, const std::string& text, const Common& c) {
  const Snm snm = load_snm(model);
  const Formula phi = ground(parse_formula(text), snm.vocab());
  std::vector<AgentId> names;
  std::stringstream ss(who);
  for (std::string n; std::getline(ss, n, ',');)
    if (!n.empty()) names.push_back(n);
  if (names.empty()) throw ArgumentError("no agent given");
  std::vector<KnowledgeBase> kbs;
  for (const auto& n : make_group(names)) {
    if (!snm.is_agent(n)) throw VocabularyError("unknown agent '" + n + "'");
    kbs.push_back(snm.kb(n));
  }
  ProverOptions opts;
  opts.trace = c.trace;
  const ProofResult r = kbs.size() == 1 ? explain(kbs.front(), phi, opts) : explain_group(kbs, phi, opts);
  if (c.json) {
    json out = {{"command", "derive"},
                {"agents", make_group(names)},
                {"formula", phi.to_string()},
                {"derivable", r.derivable},
                {"steps", r.steps}};
    if (c.trace) out["trace"] = r.trace;
    if (r.countermodel) out["countermodel"] = print_kripke(*r.countermodel);
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << (r.derivable ? "derivable" : "not derivable") << '\n';
    if (c.trace) {
      print_lines(r.trace);
      if (r.countermodel) std::cout << "countermodel (root w0):\n" << print_kripke(*r.countermodel);
    }
  }
  return r.derivable ? kExitTrue : kExitFalse;
}

int cmd_kripke_sat(const std::string& model, const std::string& state, const std::string& text, const Common& c) {
  const KripkeModel m = parse_kripke(read_file(model));
  const auto s = m.find_state(state);
  if (!s) throw ArgumentError("unknown state '" + state + "'");
  const Formula phi = parse_formula(text);
  const bool v = kripke_sat(m, *s, phi);
  if (c.json) {
    json out = {{"command", "kripke-sat"}, {"model", model}, {"state", state}, {"formula", phi.to_string()}, {"satisfied", v}};
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << (v ? "true" : "false") << '\n';
  }
  return v ? kExitTrue : kExitFalse;
}

int cmd_translate(const std::string& model, bool marked, const std::string& out, const Common& c) {
  const KripkeModel m = kt(load_snm(model), marked, c.guard);
  const std::string text = print_kripke(m);
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
  return kExitTrue;
}

int cmd_invert(const std::string& model, const std::string& out) {
  const std::string text = print_snm(kripke_to_snm(parse_kripke(read_file(model))));
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
  return kExitTrue;
}

int cmd_validate(const std::string& model, const Common& c) {
  const Snm snm = load_snm(model, false);
  const auto problems = snm.validate();
  if (c.json) {
    json out = {{"command", "validate"}, {"model", model}, {"valid", problems.empty()}, {"diagnostics", problems}};
    std::cout << out.dump(2) << '\n';
  } else if (problems.empty()) {
    std::cout << "valid\n";
  } else {
    print_lines(problems);
  }
  return problems.empty() ? kExitTrue : kExitFalse;
}

int cmd_bench(const BenchSuite& suite, const std::vector<std::string>& models,
              const std::vector<std::string>& formulas, const Common& c) {
  if (models.size() != formulas.size()) throw ArgumentError("--model and --formula must be given in pairs");
  std::vector<std::pair<Snm, Formula>> fixed;
  for (std::size_t i = 0; i < models.size(); ++i) fixed.emplace_back(load_snm(models[i]), parse_formula(formulas[i]));
  const auto rows = run_bench(suite, fixed);
  std::size_t checked = 0, passed = 0;
  for (const auto& r : rows)
    if (r.cost.snm_cheaper) {
      ++checked;
      passed += *r.cost.snm_cheaper;
    }
  if (c.json) {
    json arr = json::array();
    for (const auto& r : rows) {
      json row = {{"index", r.index},
                  {"label", r.label},
                  {"formula", r.formula},
                  {"verdict", to_string(r.cost.verdict)},
                  {"cost", cost_json(r.cost)},
                  {"guard_exceeded", r.guard_exceeded},
                  {"kripke_seconds", r.kripke_seconds ? json(*r.kripke_seconds) : json(nullptr)},
                  {"kripke_verdict", r.kripke_verdict ? json(*r.kripke_verdict) : json(nullptr)}};
      arr.push_back(row);
    }
    json out = {{"command", "bench"},
                {"seed", suite.seed},
                {"rows", arr},
                {"cheaper_checked", checked},
                {"cheaper_passed", passed}};
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << std::left << std::setw(5) << "row" << std::setw(14) << "snm bound" << std::setw(24) << "kripke bound"
              << std::setw(9) << "cheaper" << std::setw(12) << "snm s" << std::setw(12) << "kripke s" << "formula\n";
    for (const auto& r : rows) {
      std::ostringstream ks;
      if (r.kripke_seconds)
        ks << std::setprecision(3) << *r.kripke_seconds;
      else
        ks << "guard";
      std::ostringstream ss;
      ss << std::setprecision(3) << r.cost.check_seconds;
      std::cout << std::setw(5) << r.index << std::setw(14) << big(r.cost.snm_bound) << std::setw(24)
                << big(r.cost.kripke_bound) << std::setw(9)
                << (r.cost.snm_cheaper ? (*r.cost.snm_cheaper ? "pass" : "FAIL") : "-") << std::setw(12) << ss.str()
                << std::setw(12) << ks.str() << r.formula << '\n';
    }
    std::cout << "strictly cheaper: " << passed << "/" << checked << " rows with modalities pass\n";
  }
  return passed == checked ? kExitTrue : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checker for knowledge-based logic over social network models"};
  app.require_subcommand(1);
  Common c;
  std::string model, formula, state, who, out;
  bool marked = false;

  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", c.json, "Machine-readable output"); };

  auto* check_cmd = app.add_subcommand("check", "Decide SN |= phi");
  check_cmd->add_option("model", model, "Model file (.snm)")->required();
  check_cmd->add_option("formula", formula, "Formula")->required();
  check_cmd->add_option("--common-bound", c.common_bound, "E_G iterations tried for C_G")->check(CLI::PositiveNumber);
  add_json(check_cmd);

  auto* derive_cmd = app.add_subcommand("derive", "Decide KB_i |- phi, or derivability from a group's union");
  derive_cmd->add_option("model", model, "Model file (.snm)")->required();
  derive_cmd->add_option("agents", who, "Agent, or comma-separated group")->required();
  derive_cmd->add_option("formula", formula, "Formula")->required();
  derive_cmd->add_flag("--trace", c.trace, "Print the tableau and any countermodel");
  add_json(derive_cmd);

  auto* ksat_cmd = app.add_subcommand("kripke-sat", "Decide (M,s) |= phi");
  ksat_cmd->add_option("model", model, "Model file (.kripke)")->required();
  ksat_cmd->add_option("state", state, "State name")->required();
  ksat_cmd->add_option("formula", formula, "Ground formula")->required();
  add_json(ksat_cmd);

  auto* tr_cmd = app.add_subcommand("translate", "Canonical Kripke model of a social network model");
  tr_cmd->add_option("model", model, "Model file (.snm)")->required();
  tr_cmd->add_flag("--marked", marked, "Mark connection and action atoms so the result can be inverted");
  tr_cmd->add_option("--guard", c.guard, "Largest |Sub(phi_SN)| accepted");
  tr_cmd->add_option("-o,--output", out, "Output file (default stdout)");

  auto* inv_cmd = app.add_subcommand("invert", "Rebuild a social network model from a marked translation");
  inv_cmd->add_option("model", model, "Model file (.kripke)")->required();
  inv_cmd->add_option("-o,--output", out, "Output file (default stdout)");

  auto* val_cmd = app.add_subcommand("validate", "Report structural and consistency problems");
  val_cmd->add_option("model", model, "Model file (.snm)")->required();
  add_json(val_cmd);

  BenchSuite suite;
  std::vector<std::string> bench_models, bench_formulas;
  auto* bench_cmd = app.add_subcommand("bench", "Compare the SNM and Kripke cost bounds");
  bench_cmd->add_option("--seed", suite.seed, "Generator seed");
  bench_cmd->add_option("--rows", suite.rows, "Generated rows");
  bench_cmd->add_option("--guard", suite.guard, "Largest |Sub(phi_SN)| for timing the canonical model");
  bench_cmd->add_option("--model", bench_models, "Extra model file (paired with --formula)");
  bench_cmd->add_option("--formula", bench_formulas, "Formula for the matching --model");
  add_json(bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*check_cmd) return cmd_check(model, formula, c);
    if (*derive_cmd) return cmd_derive(model, who, formula, c);
    if (*ksat_cmd) return cmd_kripke_sat(model, state, formula, c);
    if (*tr_cmd) return cmd_translate(model, marked, out, c);
    if (*inv_cmd) return cmd_invert(model, out);
    if (*val_cmd) return cmd_validate(model, c);
    if (*bench_cmd) return cmd_bench(suite, bench_models, bench_formulas, c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

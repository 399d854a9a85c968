// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include "boscribe/cli.hpp"
#include "boscribe/diagram.hpp"
#include "boscribe/parser.hpp"
#include "boscribe/scaffold.hpp"
#include "boscribe/sim.hpp"
#include "boscribe/solidity.hpp"
#include "boscribe/validator.hpp"

#include "checkers.hpp"
#include "corpus.hpp"
#include "generators.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>

namespace fs = std::filesystem;
using namespace boscribe;
using namespace boscribe::testing;

namespace
{

struct Verdict
{
  bool pass = true;
  std::string detail;

  /// Records a failed expectation; the first one becomes the detail.
  void require(bool ok, const std::string &what)
  {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

int quiet_cli(const std::vector<std::string> &args)
{
  std::ostringstream out, err;
  return run_cli(args, out, err);
}

std::vector<std::string> codes(const std::vector<Diagnostic> &ds)
{
  std::vector<std::string> out;
  for (const auto &d : ds) out.push_back(d.code);
  return out;
}

std::string join(const std::vector<std::string> &v)
{
  std::string out;
  for (const auto &s : v) out += (out.empty() ? "" : ",") + s;
  return out.empty() ? "none" : out;
}

Verdict voting_counts()
{
  Verdict v;
  v.require(quiet_cli({"check", repo_path("corpus/voting.bos")}) == 0, "check did not exit 0");
  const CheckResult r = check_file("corpus/voting.bos");
  if (!r.resolved.contract("VotingManagement")) {
    v.require(false, "VotingManagement did not resolve");
    return v;
  }
  const MemberListing m = flattened_members(r.resolved, "VotingManagement");
  const FlatContract &fc = *r.resolved.contract("VotingManagement");
  std::vector<std::string> views;
  for (const auto &f : fc.functions)
    if (f.def.mutability == Mutability::view) views.push_back(f.def.name);
  std::sort(views.begin(), views.end());
  v.require(m.functions.size() == 13, "functions: " + std::to_string(m.functions.size()));
  v.require(views == std::vector<std::string>{"readResults", "verifyValidity"}, "view functions: " + join(views));
  v.require(m.modifiers.size() == 6, "modifiers: " + std::to_string(m.modifiers.size()));
  v.detail = v.pass ? "13 functions, 2 view, 6 modifiers" : v.detail;
  return v;
}

Verdict seeded_mutations()
{
  Verdict v;
  int checked = 0;
  for (std::string code : {"V001", "V002", "V003", "V004", "V005", "V006", "V007", "V008", "V009", "V010", "V011",
                           "V012", "V013", "V014", "W001"}) {
    std::string file = code;
    std::transform(file.begin(), file.end(), file.begin(), [](unsigned char c) { return std::tolower(c); });
    const CheckResult r = check_file("corpus/mutations/" + file + ".bos");
    v.require(codes(r.diagnostics) == std::vector<std::string>{code}, file + ".bos gave " + join(codes(r.diagnostics)));
    ++checked;
  }
  if (v.pass) v.detail = std::to_string(checked) + " mutations, each exactly its own code";
  return v;
}

Verdict participation_oracle()
{
  Verdict v;
  const CheckResult r = check_file("corpus/voting.bos");
  std::size_t cases = 0;
  for (int n = 1; n <= 3; ++n) {
    const SweepResult s = sweep_participation(r.resolved, n, 1, 4);
    cases += s.cases;
    v.require(s.disagreements.empty(), s.disagreements.empty() ? "" : s.disagreements.front());
  }
  if (v.pass) v.detail = std::to_string(cases) + " interleavings, 0 disagreements";
  return v;
}

Verdict constraint_scenarios()
{
  Verdict v;
  const CheckResult r = check_file("corpus/voting.bos");
  for (const char *name : {"delegateAfterStart", "registeredCannotDelegate", "maxProxies"}) {
    const Scenario *sc = r.resolved.model.scenario(name);
    if (!sc) {
      v.require(false, std::string("missing scenario ") + name);
      continue;
    }
    const Report rep = run(r.resolved, *sc);
    v.require(rep.pass, std::string(name) + " did not pass");
    v.require(!rep.steps.empty() && rep.steps.back().actual.kind == Outcome::Kind::revert,
              std::string(name) + " does not end in a revert");
  }
  if (v.pass) v.detail = "delegate after start, registered delegate and cap+1 all revert as expected";
  return v;
}

Verdict random_invariants()
{
  Verdict v;
  Rng rng(4242);
  PropertyTally tally;
  std::size_t scenarios = 0;
  for (int model = 0; model < 25; ++model) {
    const CheckResult r = check_text(random_model_source(rng), "random.bos");
    if (!r.diagnostics.empty()) {
      v.require(false, "random model invalid: " + format_diagnostic(r.diagnostics.front()));
      return v;
    }
    for (int k = 0; k < 48; ++k, ++scenarios)
      check_properties(r.resolved, random_scenario(r.resolved, rng, 5 + rng() % 25), tally);
  }
  v.require(scenarios >= 1000, "only " + std::to_string(scenarios) + " scenarios");
  v.require(tally.violations.empty(), tally.violations.empty() ? "" : tally.violations.front());
  v.require(tally.reverts > 0 && tally.errors > 0, "generator never reverted or failed");
  if (v.pass)
    v.detail = std::to_string(scenarios) + " scenarios, " + std::to_string(tally.messages) + " messages, " +
               std::to_string(tally.reverts) + " reverts, 0 violations";
  return v;
}

/// Every emitter output of one model, concatenated with separators.
std::string all_artifacts(const ResolvedModel &m)
{
  std::string out = emit_class_dot(m) + emit_class_dot(m, DiagramOptions{false, true});
  for (const auto &c : m.model.statecharts) out += emit_statechart_dot(m, c.name);
  for (const auto &s : m.model.scenarios) out += emit_sequence_mermaid(m, s.name) + report_json(run(m, s));
  for (const auto &f : emit_all(m).files) out += "== " + f.path + "\n" + f.text;
  for (const auto &f : emit_all(m, GenConfig{"^0.8.0", true, false}).files) out += "== " + f.path + "\n" + f.text;
  return out;
}

Verdict determinism()
{
  Verdict v;
  std::vector<std::string> files;
  for (const auto &e : fs::recursive_directory_iterator(repo_path("corpus")))
    if (e.path().extension() == ".bos") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  for (const auto &f : files) {
    const ParseResult first = parse(SourceFile{f, read_text(f)});
    if (!first.ok()) {
      v.require(false, f + " does not parse");
      continue;
    }
    const std::string printed = print(first.model);
    const ParseResult second = parse(SourceFile{f, printed});
    v.require(second.ok() && second.model == first.model, f + ": parse(print(m)) != m");
    v.require(print(second.model) == printed, f + ": fmt is not idempotent");
  }
  for (const char *f : {"corpus/voting.bos", "corpus/escrow.bos"}) {
    const CheckResult r = check_file(f);
    v.require(all_artifacts(r.resolved) == all_artifacts(check_file(f).resolved), std::string(f) + ": emitters differ");
  }
  if (v.pass) v.detail = std::to_string(files.size()) + " corpus files round-trip; emitters stable";
  return v;
}

std::vector<std::string> golden(const std::string &ext)
{
  std::vector<std::string> out;
  for (const auto &e : fs::directory_iterator(repo_path("tests/golden")))
    if (e.path().string().ends_with(ext)) out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

Verdict emitter_wellformedness()
{
  Verdict v;
  const auto dots = golden(".dot");
  const auto sols = golden(".sol");
  v.require(!dots.empty() && !sols.empty(), "no golden files");
  for (const auto &f : dots) {
    const auto problems = check_dot(read_text(f));
    v.require(problems.empty(), f + ": " + (problems.empty() ? "" : problems.front()));
  }
  for (const auto &f : sols) {
    const auto problems = check_solidity_balance(read_text(f));
    v.require(problems.empty(), f + ": " + (problems.empty() ? "" : problems.front()));
  }

  std::size_t entries = 0;
  for (const char *file : {"corpus/voting.bos", "corpus/escrow.bos"}) {
    const CheckResult r = check_file(file);
    for (const auto &fc : r.resolved.contracts) {
      std::vector<std::string> sol;
      for (const auto &name : fc.linearization)
        for (const auto &s : solidity_signatures(emit_contract(r.resolved, name).text))
          if (name == fc.name || !s.starts_with("constructor")) sol.push_back(s);
      auto abi = abi_signatures(emit_abi(r.resolved, fc.name));
      std::sort(sol.begin(), sol.end());
      std::sort(abi.begin(), abi.end());
      v.require(sol == abi, fc.name + ": ABI {" + join(abi) + "} vs Solidity {" + join(sol) + "}");
      entries += abi.size();
    }
  }

  const CheckResult voting = check_file("corpus/voting.bos");
  const Scenario &happy = *voting.resolved.model.scenario("happyPath");
  const long creates = std::count_if(happy.messages.begin(), happy.messages.end(),
                                     [](const auto &m) { return m.kind == MessageKind::create; });
  const long calls = std::count_if(happy.messages.begin(), happy.messages.end(),
                                   [](const auto &m) { return m.kind == MessageKind::call; });
  const Int expected = 53000 + Int(calls) * 21000;
  const Int actual = gas_total(run(voting.resolved, happy));
  v.require(creates == 1, "happy path has " + std::to_string(creates) + " creates");
  v.require(actual == expected, "happy-path gas " + actual.str() + " != " + expected.str());
  if (v.pass)
    v.detail = std::to_string(dots.size()) + " DOT and " + std::to_string(sols.size()) + " Solidity goldens, " +
               std::to_string(entries) + " ABI entries matched, gas 53000 + " + std::to_string(calls) +
               "x21000 = " + actual.str();
  return v;
}

Verdict init_starter()
{
  Verdict v;
  const fs::path dir = fs::temp_directory_path() / "boscribe-acceptance-init";
  fs::remove_all(dir);
  v.require(quiet_cli({"init", "acceptanceDapp", "--dir", dir.string()}) == 0, "init failed");
  const std::string model = (dir / "onchain/model.bos").string();
  v.require(quiet_cli({"check", model}) == 0, "starter model fails check");
  if (fs::exists(model)) {
    const CheckResult r = check_source(SourceFile{model, read_text(model)});
    v.require(r.diagnostics.empty(), "starter model has findings: " + join(codes(r.diagnostics)));
  }
  if (fs::exists(dir / "process-checklist.md")) {
    const std::string list = read_text((dir / "process-checklist.md").string());
    static const std::regex item(R"(^- \[ \] (\d+)\. )", std::regex::multiline);
    std::vector<int> steps;
    for (auto it = std::sregex_iterator(list.begin(), list.end(), item); it != std::sregex_iterator(); ++it)
      steps.push_back(std::stoi((*it)[1]));
    v.require(steps == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8}, "checklist steps do not run 1..8");
  } else {
    v.require(false, "no process-checklist.md");
  }
  fs::remove_all(dir);
  if (v.pass) v.detail = "starter model checks clean; checklist has steps 1-8";
  return v;
}

}  // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"1 voting corpus checks clean with the expected member counts", voting_counts},
      {"2 seeded mutations trigger exactly their code", seeded_mutations},
      {"3 participation statechart matches the brute-force table", participation_oracle},
      {"4 constraint scenarios revert as expected", constraint_scenarios},
      {"5 random scenarios conserve wei, revert atomically, keep the clock monotone", random_invariants},
      {"6 round trip, deterministic emitters, idempotent fmt", determinism},
      {"7 emitter well-formedness and gas arithmetic", emitter_wellformedness},
      {"8 init starter model and process checklist", init_starter},
  };
  int failures = 0;
  for (const auto &[name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception &e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  [" << name << "] " << v.detail << '\n';
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed\n" : "all criteria passed\n");
  return failures ? 1 : 0;
}

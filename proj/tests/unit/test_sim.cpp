#include "boscribe/sim.hpp"

#include "corpus.hpp"
#include "generators.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

using namespace boscribe;
using namespace boscribe::testing;

namespace
{

const char *box_contract = R"(
    contract Box {
        public uint8 small;
        public uint16 count;
        public address owner;
        modifier onlyOwner() requires sender == owner;
        constructor() sets owner = sender;
        function add(uint8 x) payable sets small += x;
        function bump() uses onlyOwner sets count += 1;
        function peek() view returns (uint8) uses onlyOwner;
    }
    actor User : person;
    actor Vault : account;
)";

/// Box model plus one scenario `s` with the given body. Scenarios that
/// the validator rejects on purpose pass `clean = false`.
CheckResult box(const std::string &scenario_body, bool clean = true)
{
  CheckResult r = check_text("system T {" + std::string(box_contract) + "    scenario s {\n" +
                             "        participant <<person>> alice : User;\n"
                             "        participant <<person>> bob : User;\n"
                             "        participant <<account>> vault : Vault;\n"
                             "        participant <<contract>> b : Box;\n" +
                             scenario_body + "\n    }\n}\n");
  if (clean)
    EXPECT_TRUE(r.diagnostics.empty()) << (r.diagnostics.empty() ? "" : format_diagnostic(r.diagnostics[0]));
  return r;
}

Report run_s(const CheckResult &r) { return run(r.resolved, *r.resolved.model.scenario("s")); }

std::vector<Outcome> actual_outcomes(const Report &rep)
{
  std::vector<Outcome> out;
  for (const auto &s : rep.steps) out.push_back(s.actual);
  return out;
}

}  // namespace

TEST(InitWorld, GenesisBalances)
{
  const CheckResult r = box("        genesis alice = 1000000000000000000;");
  const World w = init_world(r.resolved, *r.resolved.model.scenario("s"));
  EXPECT_EQ(w.balances.at("alice"), Int("1000000000000000000"));
  EXPECT_EQ(w.balances.at("bob"), 0);
  EXPECT_EQ(w.clock, 0);
  EXPECT_TRUE(w.instances.empty());
  EXPECT_TRUE(w.machines.empty());
}

TEST(InitWorld, RejectsBadGenesis)
{
  Scenario sc;
  sc.participants.push_back({{}, "a", ParticipantKind::person, "User"});
  sc.genesis.push_back({{}, "a", 1});
  sc.genesis.push_back({{}, "a", 2});
  EXPECT_THROW(init_world(ResolvedModel{}, sc), Error);
  sc.genesis = {{{}, "ghost", 1}};
  EXPECT_THROW(init_world(ResolvedModel{}, sc), Error);
}

TEST(Run, EmptyScenarioPasses)
{
  const CheckResult r = box("");
  const Report rep = run_s(r);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(gas_total(rep), 0);
  EXPECT_TRUE(rep.steps.empty());
}

TEST(Exec, TransferBeyondBalanceReverts)
{
  const CheckResult r =
      box("        genesis alice = 3;\n"
          "        transfer alice -> vault value 5 => revert insufficient_balance;");
  const Report rep = run_s(r);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.balances.at("alice"), 3);
  EXPECT_EQ(rep.balances.at("vault"), 0);
  EXPECT_EQ(rep.steps[0].gas, GasModel{}.transfer_cost);
}

TEST(Exec, GasIsSumOfMessageCosts)
{
  const CheckResult r =
      box("        create alice -> b() => ok;\n"
          "        call alice -> b.bump() => ok;\n"
          "        call alice -> b.add(1) => ok;");
  const Report rep = run_s(r);
  ASSERT_TRUE(rep.pass);
  const GasModel g;
  EXPECT_EQ(gas_total(rep), g.create_cost + 2 * g.call_cost);
  EXPECT_EQ(gas_total(rep), 95000);
  EXPECT_EQ(rep.total_gas, gas_total(rep));
}

TEST(Exec, ModifierRevertKeepsWorld)
{
  const CheckResult r =
      box("        genesis bob = 50;\n"
          "        create alice -> b() => ok;\n"
          "        call bob -> b.bump() => revert onlyOwner;\n"
          "        call bob -> b.add(2) value 10 => ok;");
  const Report rep = run_s(r);
  EXPECT_TRUE(rep.pass) << report_text(rep);
  EXPECT_EQ(rep.balances.at("b"), 10);
  EXPECT_EQ(rep.balances.at("bob"), 40);
}

TEST(Exec, WidthOverflowIsAnError)
{
  const CheckResult r =
      box("        create alice -> b() => ok;\n"
          "        call alice -> b.add(200) => ok;\n"
          "        call alice -> b.add(56) => error overflow;\n"
          "        call alice -> b.add(55) => ok;\n"
          "        call alice -> b.add(300) => error overflow;");
  const Report rep = run_s(r);
  EXPECT_TRUE(rep.pass) << report_text(rep);
  EXPECT_EQ(rep.steps[2].gas, 0);
}

TEST(Exec, ClockRules)
{
  const CheckResult r =
      box("        create alice -> b() at 10 => ok;\n"
          "        call bob -> b.bump() at 20 => revert onlyOwner;\n"
          "        call alice -> b.bump() at 5 => error clock_regression;\n"
          "        viewcall alice -> b.peek() at 30 => ok;\n"
          "        call alice -> b.bump() at 12 => ok;");
  const Report rep = run_s(r);
  EXPECT_TRUE(rep.pass) << report_text(rep);
  EXPECT_EQ(rep.clock, 12);
}

TEST(Exec, ViewCallsAreFreeAndPure)
{
  const CheckResult r =
      box("        create alice -> b() => ok;\n"
          "        viewcall alice -> b.peek() => ok;\n"
          "        viewcall bob -> b.peek() => revert onlyOwner;\n"
          "        viewcall alice -> b.bump() => error not_view;",
          false);
  const Report rep = run_s(r);
  EXPECT_TRUE(rep.pass) << report_text(rep);
  EXPECT_EQ(rep.steps[1].gas, 0);
  EXPECT_EQ(rep.steps[2].gas, 0);
}

TEST(Exec, StructuralErrors)
{
  const CheckResult r = box("");
  Scenario sc = *r.resolved.model.scenario("s");
  World w = init_world(r.resolved, sc);
  MessageSpec call;
  call.kind = MessageKind::call;
  call.from = "alice";
  call.to = "b";
  call.function = "bump";
  auto [w1, t1] = exec(w, r.resolved, sc, call);
  EXPECT_EQ(t1.outcome, Outcome::error("unknown_instance"));

  MessageSpec create;
  create.kind = MessageKind::create;
  create.from = "alice";
  create.to = "b";
  auto [w2, t2] = exec(w1, r.resolved, sc, create);
  ASSERT_EQ(t2.outcome, Outcome::ok());
  auto [w3, t3] = exec(w2, r.resolved, sc, create);
  EXPECT_EQ(t3.outcome, Outcome::error("already_created"));

  call.function = "nothing";
  EXPECT_EQ(exec(w2, r.resolved, sc, call).second.outcome, Outcome::error("unknown_function"));
  call.function = "add";
  EXPECT_EQ(exec(w2, r.resolved, sc, call).second.outcome, Outcome::error("bad_argument"));
  call.args = {Literal{std::string("text")}};
  EXPECT_EQ(exec(w2, r.resolved, sc, call).second.outcome, Outcome::error("bad_argument"));
  call.to = "vault";
  EXPECT_EQ(exec(w2, r.resolved, sc, call).second.outcome, Outcome::error("not_a_contract"));
}

TEST(Exec, ValueNeedsPayableTarget)
{
  const CheckResult r =
      box("        genesis alice = 100;\n"
          "        create alice -> b() value 1 => revert not_payable;\n"
          "        create alice -> b() => ok;\n"
          "        call alice -> b.bump() value 1 => revert not_payable;\n"
          "        transfer alice -> b value 1 => revert not_payable;",
          false);
  const Report rep = run_s(r);
  EXPECT_TRUE(rep.pass) << report_text(rep);
  EXPECT_EQ(rep.balances.at("alice"), 100);
}

TEST(Corpus, AllScenariosPass)
{
  for (const char *f : {"corpus/voting.bos", "corpus/escrow.bos"}) {
    const CheckResult r = check_file(f);
    for (const auto &sc : r.resolved.model.scenarios) {
      const Report rep = run(r.resolved, sc);
      EXPECT_TRUE(rep.pass) << report_text(rep);
    }
  }
}

TEST(Corpus, ProxyCapMachines)
{
  const CheckResult r = check_file("corpus/voting.bos");
  const Report rep = run(r.resolved, *r.resolved.model.scenario("maxProxies"));
  const MachineState &alice = rep.machines.at({"ShareholderParticipation", "vm", "alice"});
  EXPECT_EQ(alice.current, "Registered");
  EXPECT_EQ(alice.attrs.at("proxies"), 2);
  EXPECT_EQ(rep.machines.at({"ShareholderParticipation", "vm", "bob"}).current, "Delegated");
  EXPECT_FALSE(rep.machines.count({"ShareholderParticipation", "vm", "dave"}));
}

TEST(Corpus, EscrowBalances)
{
  const CheckResult r = check_file("corpus/escrow.bos");
  const Report rep = run(r.resolved, *r.resolved.model.scenario("escrowHappyPath"));
  ASSERT_TRUE(rep.pass);
  EXPECT_EQ(rep.balances.at("buyer"), 5000 - 1000 - 500 - 100);
  EXPECT_EQ(rep.balances.at("esc"), 1000 + 500 + 100);
  EXPECT_EQ(rep.balances.at("wallet"), 200);
}

TEST(Report, JsonFieldOrder)
{
  const CheckResult r = check_file("corpus/voting.bos");
  const Report rep = run(r.resolved, *r.resolved.model.scenario("happyPath"));
  const auto j = nlohmann::ordered_json::parse(report_json(rep));
  std::vector<std::string> keys;
  for (const auto &item : j.items()) keys.push_back(item.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"scenario", "pass", "total_gas", "clock", "steps", "balances",
                                            "machines"}));
  EXPECT_EQ(j["total_gas"], 158000);
  EXPECT_EQ(j["steps"][6]["message"], "viewcall alice -> vm.readResults(\"budget\") at 250");
  EXPECT_TRUE(nlohmann::json::parse(report_json(std::vector<Report>{rep, rep})).is_array());
}

TEST(Report, TextFlagsMismatches)
{
  const CheckResult r =
      box("        create alice -> b() => ok;\n"
          "        call bob -> b.bump() => ok;");
  const Report rep = run_s(r);
  EXPECT_FALSE(rep.pass);
  EXPECT_NE(report_text(rep).find("FAIL"), std::string::npos);
  EXPECT_NE(report_text(rep).find("\n! "), std::string::npos);
}

TEST(Participation, MatchesTransitionTable)
{
  const CheckResult r = check_file("corpus/voting.bos");
  for (int n = 1; n <= 3; ++n) {
    const SweepResult s = sweep_participation(r.resolved, n, 1, 4);
    EXPECT_GT(s.cases, 0u);
    EXPECT_TRUE(s.disagreements.empty()) << n << " shareholders: " << s.disagreements.front();
  }
}

TEST(Participation, TableOracleBasics)
{
  ProxyTable t(3, 1);
  EXPECT_FALSE(t.delegate(0, 1));  // target not registered
  EXPECT_TRUE(t.participate(1));
  EXPECT_FALSE(t.participate(1));
  EXPECT_TRUE(t.delegate(0, 1));
  EXPECT_FALSE(t.delegate(2, 1));  // cap reached
  EXPECT_FALSE(t.delegate(1, 1));  // registered cannot delegate
}

TEST(Properties, RandomScenariosKeepInvariants)
{
  Rng rng(2024);
  PropertyTally tally;
  std::size_t scenarios = 0;
  for (int model = 0; model < 20; ++model) {
    const CheckResult r = check_text(random_model_source(rng), "random.bos");
    ASSERT_TRUE(r.diagnostics.empty()) << format_diagnostic(r.diagnostics.front());
    for (int k = 0; k < 60; ++k, ++scenarios)
      check_properties(r.resolved, random_scenario(r.resolved, rng, 5 + rng() % 25), tally);
  }
  EXPECT_GE(scenarios, 1000u);
  EXPECT_TRUE(tally.violations.empty()) << tally.violations.front();
  // The generator has to reach every outcome kind for the check to mean anything.
  EXPECT_GT(tally.reverts, 0u);
  EXPECT_GT(tally.errors, 0u);
  EXPECT_GT(tally.messages - tally.reverts - tally.errors, 0u);
}

TEST(Properties, RandomGuardsEvaluateLikeReference)
{
  Rng rng(99);
  int trues = 0;
  for (int i = 0; i < 1000; ++i) {
    GuardInputs in;
    in.a = static_cast<int>(rng() % 60);
    in.b = static_cast<int>(rng() % 60);
    in.f = rng() % 2;
    in.now = static_cast<int>(rng() % 60);
    in.value = static_cast<int>(rng() % 60);
    const GeneratedGuard g = random_guard(rng, in);
    const std::string text =
        "system G {\n"
        "    contract T {\n"
        "        public uint32 a;\n"
        "        public uint32 b;\n"
        "        public bool f;\n"
        "        modifier probe() requires " +
        g.text +
        ";\n"
        "        function load(uint32 x, uint32 y, bool z) sets a = x, b = y, f = z;\n"
        "        function check() payable uses probe;\n"
        "    }\n"
        "    actor User : person;\n"
        "    scenario s {\n"
        "        participant <<person>> u : User;\n"
        "        participant <<contract>> t : T;\n"
        "        genesis u = 1000;\n"
        "        create u -> t() => ok;\n"
        "        call u -> t.load(" +
        in.a.str() + ", " + in.b.str() + ", " + (in.f ? "true" : "false") +
        ") => ok;\n"
        "        call u -> t.check() value " +
        in.value.str() + " at " + in.now.str() + " => " + (g.expected ? "ok" : "revert probe") +
        ";\n"
        "    }\n"
        "}\n";
    const CheckResult r = check_text(text, "guard.bos");
    ASSERT_TRUE(r.diagnostics.empty()) << g.text << ": " << format_diagnostic(r.diagnostics.front());
    const Report rep = run(r.resolved, r.resolved.model.scenarios.front());
    ASSERT_TRUE(rep.pass) << g.text << "\n" << report_text(rep);
    trues += g.expected;
  }
  EXPECT_GT(trues, 100);
  EXPECT_LT(trues, 900);
}

#pragma once

// Single-ledger execution of scenarios: modifier guards, statechart
// transitions, `sets` effects, Ether moves, a logical clock and gas.

#include "boscribe/resolve.hpp"
#include "boscribe/typecheck.hpp"

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace boscribe
{

struct GasModel
{
  Int create_cost = 53000;
  Int call_cost = 21000;
  Int transfer_cost = 21000;
  Int view_cost = 0;
};

/// A runtime scalar. Addresses are participant aliases (or `0x` literals);
/// the zero address is the empty string. Enum values hold the member name.
struct Value
{
  ValueKind kind = ValueKind::integer;
  Int integer;
  bool boolean = false;
  std::string text;  // address, string, bytes, enum member

  static Value of_int(Int v) { return {ValueKind::integer, std::move(v), false, {}}; }
  static Value of_bool(bool b) { return {ValueKind::boolean, 0, b, {}}; }
  static Value of_address(std::string a) { return {ValueKind::address, 0, false, std::move(a)}; }
  static Value of_string(std::string s) { return {ValueKind::string, 0, false, std::move(s)}; }

  friend bool operator==(const Value &, const Value &) = default;
};

std::string to_string(const Value &v);

struct InstanceState
{
  std::string contract;
  /// Scalar and enum state variables only; collections are not simulated.
  std::map<std::string, Value> storage;
  std::map<std::string, std::set<std::string>> role_sets;
  bool destroyed = false;

  friend bool operator==(const InstanceState &, const InstanceState &) = default;
};

struct MachineKey
{
  std::string chart;
  std::string contract_alias;
  std::string actor_alias;

  friend auto operator<=>(const MachineKey &, const MachineKey &) = default;
};

struct MachineState
{
  std::string current;
  std::map<std::string, Int> attrs;

  friend bool operator==(const MachineState &, const MachineState &) = default;
};

struct GasEntry
{
  std::size_t message = 0;
  Int gas;

  friend bool operator==(const GasEntry &, const GasEntry &) = default;
};

struct World
{
  std::map<std::string, InstanceState> instances;
  /// Every participant of the scenario, funded from genesis or zero.
  std::map<std::string, Int> balances;
  Int clock = 0;
  std::map<MachineKey, MachineState> machines;
  std::vector<GasEntry> gas_ledger;

  [[nodiscard]] Int total_wei() const;
  friend bool operator==(const World &, const World &) = default;
};

struct TxResult
{
  Outcome outcome;
  Int gas;
  /// Clock value the message executed at.
  Int now;
};

/// Balances come from genesis (absent means zero). Throws Error when
/// genesis lists an alias twice or names an unknown participant.
World init_world(const ResolvedModel &resolved, const Scenario &scenario);

/// Executes one message. The world is taken by value; a revert or error
/// returns it unchanged apart from a new gas ledger entry.
std::pair<World, TxResult> exec(World world, const ResolvedModel &resolved, const Scenario &scenario,
                                const MessageSpec &msg, const GasModel &gas = {});

struct StepReport
{
  std::size_t index = 0;
  std::string message;  ///< step in DSL syntax
  Outcome expected;
  Outcome actual;
  bool match = false;
  Int gas;
};

struct Report
{
  std::string scenario;
  std::vector<StepReport> steps;
  std::map<std::string, Int> balances;
  std::map<MachineKey, MachineState> machines;
  Int clock;
  Int total_gas;
  bool pass = true;
};

Report run(const ResolvedModel &resolved, const Scenario &scenario, const GasModel &gas = {});

Int gas_total(const Report &report);

/// DSL text of a step without its outcome, e.g. `call alice -> vm.participate() at 20`.
std::string describe(const MessageSpec &msg);

std::string report_text(const Report &report);
/// Stable field order; integers that fit in 64 bits are JSON numbers,
/// larger ones decimal strings.
std::string report_json(const Report &report);
/// A JSON array of reports.
std::string report_json(const std::vector<Report> &reports);

}  // namespace boscribe

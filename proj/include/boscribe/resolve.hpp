#pragma once

#include "boscribe/model.hpp"

#include <string>
#include <vector>

namespace boscribe
{

/// A member merged into a contract, tagged with the contract that declared it.
template <typename T>
struct Flat
{
  T def;
  std::string origin;

  friend bool operator==(const Flat &, const Flat &) = default;
};

/// A contract with its inheritance chain merged in. Base constructors are not
/// members of the derived contract; the contract's own constructor is.
struct FlatContract
{
  std::string name;
  ContractKind kind = ContractKind::contract;
  /// Base-first linearization ending with the contract itself.
  std::vector<std::string> linearization;

  std::vector<Flat<StateVar>> state_vars;
  std::vector<Flat<StructDef>> structs;
  std::vector<Flat<EnumDef>> enums;
  std::vector<Flat<ModifierDef>> modifiers;
  std::vector<Flat<EventDef>> events;
  std::vector<Flat<FunctionDef>> functions;
  std::vector<Flat<RoleDef>> roles;

  [[nodiscard]] const StateVar *state_var(std::string_view n) const;
  [[nodiscard]] const StructDef *struct_def(std::string_view n) const;
  [[nodiscard]] const EnumDef *enum_def(std::string_view n) const;
  [[nodiscard]] const ModifierDef *modifier(std::string_view n) const;
  [[nodiscard]] const EventDef *event(std::string_view n) const;
  [[nodiscard]] const FunctionDef *function(std::string_view n) const;
  [[nodiscard]] const FunctionDef *constructor() const;
  [[nodiscard]] bool has_role(std::string_view n) const;

  friend bool operator==(const FlatContract &, const FlatContract &) = default;
};

struct ResolvedModel
{
  Model model;
  /// Successfully resolved contracts, in declaration order. Contracts whose
  /// resolution failed are absent.
  std::vector<FlatContract> contracts;

  [[nodiscard]] const FlatContract *contract(std::string_view name) const;

  friend bool operator==(const ResolvedModel &, const ResolvedModel &) = default;
};

struct ResolveResult
{
  ResolvedModel resolved;
  /// V001 unknown base, V002 inheritance cycle, V014 member collision.
  std::vector<Diagnostic> diagnostics;

  [[nodiscard]] bool ok() const noexcept { return diagnostics.empty(); }
};

/// Binds inheritance and flattens every contract. A failure aborts only the
/// affected contract (and contracts inheriting from it).
ResolveResult resolve(const Model &model);

/// Members as declared or inherited: base-first linearization, then
/// declaration order. Throws Error for unknown or unresolved contracts.
struct MemberListing
{
  std::vector<std::string> state_vars;
  std::vector<std::string> modifiers;
  std::vector<std::string> events;
  std::vector<std::string> functions;

  friend bool operator==(const MemberListing &, const MemberListing &) = default;
};

MemberListing flattened_members(const ResolvedModel &resolved, std::string_view contract);

/// Throws Error when the contract is unknown or sits on an inheritance cycle.
std::vector<std::string> linearize(const ResolvedModel &resolved, std::string_view contract);

/// Linearization straight from declarations. Returns nullopt on a cycle or
/// unknown base.
std::optional<std::vector<std::string>> linearize(const Model &model, std::string_view contract);

}  // namespace boscribe

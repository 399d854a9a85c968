#pragma once

#include "boscribe/resolve.hpp"
#include "boscribe/typecheck.hpp"

#include <optional>
#include <string>
#include <vector>

namespace boscribe
{

struct GenConfig
{
  std::string pragma_version = "^0.8.0";
  bool emit_natspec = true;
  bool one_file_per_contract = true;
};

/// Solidity rendering of an expression, or nullopt when it uses statechart
/// predicates. With a scope, string equality becomes a keccak256 comparison.
std::optional<std::string> expr_to_solidity(const ExprRef &e, const ExprScope *scope = nullptr);

/// `require(<guard>);`, or nullopt for the untranslatable case.
std::optional<std::string> guard_to_require(const ExprRef &guard, const ExprScope *scope = nullptr);

struct GeneratedSource
{
  std::string text;
  /// W002 for each modifier guard that fell back to `require(false)`.
  std::vector<Diagnostic> warnings;
};

/// Skeleton of one contract: pragma, imports of its direct bases, members in
/// declaration order. Throws Error for an unknown contract.
GeneratedSource emit_contract(const ResolvedModel &resolved, std::string_view contract,
                              const GenConfig &config = {});

/// ABI summary as JSON text (2-space indent, trailing newline). Entries:
/// constructor, then flattened functions, then flattened events. Throws
/// Error for an unknown or unresolved contract.
std::string emit_abi(const ResolvedModel &resolved, std::string_view contract);

struct GeneratedFile
{
  std::string path;  ///< relative to the output directory
  std::string text;
};

struct Generation
{
  std::vector<GeneratedFile> files;
  std::vector<Diagnostic> warnings;
};

/// Every contract of the model: `<Name>.sol` (or one combined file when
/// one_file_per_contract is off) plus `<Name>.abi.json`.
Generation emit_all(const ResolvedModel &resolved, const GenConfig &config = {});

}  // namespace boscribe

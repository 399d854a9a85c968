#pragma once

#include "boscribe/resolve.hpp"
#include "boscribe/source.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace boscribe
{

struct Rule
{
  std::string_view code;
  Severity severity;
  std::string_view summary;
  /// Why the rule exists, in terms of the platform it models.
  std::string_view rationale;
};

/// Every code the tool can emit outside of parsing, in code order.
const std::vector<Rule> &rule_catalog();

/// Throws Error for a code outside the catalog.
const Rule &explain(std::string_view code);

/// `code<TAB>severity<TAB>summary` lines under a header line.
std::string rules_table();

/// All rule violations of the model, including resolution failures, sorted
/// by (file, span, code). Deterministic and duplicate-free.
std::vector<Diagnostic> validate(const ResolvedModel &resolved);

struct CheckResult
{
  ResolvedModel resolved;
  std::vector<Diagnostic> diagnostics;

  [[nodiscard]] bool ok() const { return !has_errors(diagnostics); }
};

/// parse, resolve and validate in one go. Syntax errors stop before resolution.
CheckResult check_source(const SourceFile &src);

}  // namespace boscribe

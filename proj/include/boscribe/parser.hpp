#pragma once

#include "boscribe/model.hpp"
#include "boscribe/source.hpp"

#include <string>
#include <vector>

namespace boscribe
{

struct ParseResult
{
  Model model;
  std::vector<Diagnostic> diagnostics;

  [[nodiscard]] bool ok() const noexcept { return diagnostics.empty(); }
};

/// Parses a `.bos` source file. On syntax errors the parser resynchronizes at
/// the next top-level declaration, so one pass reports every broken
/// declaration; the returned model then holds whatever parsed cleanly.
ParseResult parse(const SourceFile &src);

/// Parses a standalone guard expression, e.g. from a test or `--explain` input.
ExprRef parse_expression(const SourceFile &src, std::vector<Diagnostic> &diagnostics);

/// Canonical source text: 4-space indentation, one declaration per line,
/// LF line endings. `parse(print(m))` is structurally equal to `m`.
std::string print(const Model &model);

}  // namespace boscribe

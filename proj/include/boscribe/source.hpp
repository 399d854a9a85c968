#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace boscribe
{

/// 1-based line/column position. Columns count bytes.
struct Position
{
  std::uint32_t line = 1;
  std::uint32_t col = 1;

  friend auto operator<=>(const Position &, const Position &) = default;
};

struct Span
{
  Position begin;
  Position end;

  friend auto operator<=>(const Span &, const Span &) = default;
};

/// Source location attached to model nodes. Two Locs always compare equal so
/// that defaulted structural equality on the model ignores where nodes came from.
struct Loc
{
  Span span;

  friend bool operator==(const Loc &, const Loc &) noexcept { return true; }
};

struct SourceFile
{
  std::string path;
  std::string text;
};

enum class Severity
{
  error,
  warning,
};

std::string_view to_string(Severity s) noexcept;

struct Diagnostic
{
  std::string code;
  Severity severity = Severity::error;
  std::string message;
  std::string file;
  Span span;

  friend bool operator==(const Diagnostic &, const Diagnostic &) = default;
};

/// Ordering used for every diagnostic list the tool produces: (file, span, code).
bool diagnostic_less(const Diagnostic &a, const Diagnostic &b);
void sort_diagnostics(std::vector<Diagnostic> &diags);

bool has_errors(const std::vector<Diagnostic> &diags);

/// `file:line:col: error[CODE]: message`
std::string format_diagnostic(const Diagnostic &d, bool color = false);

/// Thrown by operations whose preconditions name something that does not exist
/// (unknown contract, chart, scenario, rule code).
class Error : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace boscribe

#include "boscribe/source.hpp"

#include <algorithm>
#include <tuple>

namespace boscribe
{

std::string_view to_string(Severity s) noexcept { return s == Severity::error ? "error" : "warning"; }

bool diagnostic_less(const Diagnostic &a, const Diagnostic &b)
{
  return std::tie(a.file, a.span, a.code, a.message) < std::tie(b.file, b.span, b.code, b.message);
}

void sort_diagnostics(std::vector<Diagnostic> &diags)
{
  std::stable_sort(diags.begin(), diags.end(), diagnostic_less);
  diags.erase(std::unique(diags.begin(), diags.end()), diags.end());
}

bool has_errors(const std::vector<Diagnostic> &diags)
{
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic &d) { return d.severity == Severity::error; });
}

std::string format_diagnostic(const Diagnostic &d, bool color)
{
  std::string out = d.file.empty() ? std::string("<input>") : d.file;
  out += ':' + std::to_string(d.span.begin.line) + ':' + std::to_string(d.span.begin.col) + ": ";
  if (color) out += d.severity == Severity::error ? "\x1b[31m" : "\x1b[33m";
  out += to_string(d.severity);
  out += '[' + d.code + ']';
  if (color) out += "\x1b[0m";
  out += ": " + d.message;
  return out;
}

}  // namespace boscribe

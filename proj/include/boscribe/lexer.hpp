#pragma once

#include "boscribe/source.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace boscribe
{

enum class TokenKind
{
  ident,
  integer,
  string,
  keyword,
  punct,
  stereotype,
};

std::string_view to_string(TokenKind k) noexcept;

struct Token
{
  TokenKind kind = TokenKind::ident;
  /// Source slice. For stereotypes, the bare word between `<<` and `>>`.
  std::string text;
  Span span;

  friend bool operator==(const Token &, const Token &) = default;
};

struct TokenizeResult
{
  std::vector<Token> tokens;
  std::vector<Diagnostic> diagnostics;

  [[nodiscard]] bool ok() const noexcept { return diagnostics.empty(); }
};

bool is_keyword(std::string_view word) noexcept;

/// Splits DSL source into tokens. `//` comments and whitespace are dropped.
/// Lexing continues past errors so all of them are reported.
TokenizeResult tokenize(const SourceFile &src);

/// Decodes the body of a string token (without quotes) and its escapes.
std::string unescape_string(std::string_view token_text);

}  // namespace boscribe

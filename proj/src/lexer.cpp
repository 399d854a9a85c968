#include "boscribe/lexer.hpp"

#include <algorithm>
#include <array>

namespace boscribe
{
namespace
{

constexpr std::array<std::string_view, 72> k_keywords = {
    "system",     "goal",    "contract", "library",  "interface", "abstract",    "inherits",
    "public",     "private", "impl",     "mapping",  "modifier",  "requires",    "constructor",
    "function",   "view",    "pure",     "payable",  "returns",   "uses",        "effects",
    "reads",      "writes",  "emits",    "iterates", "creates",   "transfers",   "destroys",
    "sets",       "note",    "struct",   "enum",     "event",     "role",        "actor",
    "statechart", "for",     "in",       "attr",     "states",    "initial",     "transition",
    "on",         "when",    "do",       "self",     "scenario",  "participant", "genesis",
    "create",     "call",    "viewcall", "transfer", "value",     "at",          "ok",
    "revert",     "error",   "story",    "by",       "onchain",   "offchain",    "both",
    "true",       "false",   "sender",   "now",      "instate",   "person",      "device",
    "account",    "oracle",
};

// Longest first so that `=>` wins over `=`.
constexpr std::array<std::string_view, 26> k_puncts = {
    "->", "=>", "==", "!=", "<=", ">=", "&&", "||", "+=", "-=", "{", "}", "(",
    ")",  "[",  "]",  ";",  ",",  ":",  ".",  "<",  ">",  "!",  "=", "+", "-",
};

bool is_ident_start(char c) noexcept { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

bool is_ident_char(char c) noexcept { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

bool is_hex(char c) noexcept { return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F'); }

/// Length of the UTF-8 sequence starting at s[i], or 0 when malformed.
std::size_t utf8_length(std::string_view s, std::size_t i) noexcept
{
  const auto b0 = static_cast<unsigned char>(s[i]);
  std::size_t n = 0;
  std::uint32_t cp = 0;
  if (b0 < 0x80) return 1;
  if ((b0 & 0xE0) == 0xC0) {
    n = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    n = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    n = 4;
    cp = b0 & 0x07;
  } else {
    return 0;
  }
  if (i + n > s.size()) return 0;
  for (std::size_t k = 1; k < n; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  // overlong encodings, surrogates, out of range
  if ((n == 2 && cp < 0x80) || (n == 3 && cp < 0x800) || (n == 4 && cp < 0x10000)) return 0;
  if (cp >= 0xD800 && cp <= 0xDFFF) return 0;
  if (cp > 0x10FFFF) return 0;
  return n;
}

class Lexer
{
 public:
  explicit Lexer(const SourceFile &src) : src_(src), text_(src.text) {}

  TokenizeResult run()
  {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
      } else if (c == '/' && peek(1) == '/') {
        skip_comment();
      } else if (is_ident_start(c)) {
        lex_word();
      } else if (is_digit(c)) {
        lex_number();
      } else if (c == '"') {
        lex_string();
      } else if (c == '<' && peek(1) == '<') {
        lex_stereotype("<<", ">>");
      } else if (text_.substr(pos_).starts_with("\xC2\xAB")) {
        lex_stereotype("\xC2\xAB", "\xC2\xBB");
      } else if (!lex_punct()) {
        lex_illegal();
      }
    }
    return std::move(result_);
  }

 private:
  [[nodiscard]] char peek(std::size_t ahead) const noexcept
  {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t n)
  {
    for (std::size_t k = 0; k < n && pos_ < text_.size(); ++k) {
      if (text_[pos_] == '\n') {
        ++here_.line;
        here_.col = 1;
      } else {
        ++here_.col;
      }
      ++pos_;
    }
  }

  void push(TokenKind kind, std::size_t start, Position begin, std::string text = {})
  {
    if (text.empty()) text = std::string(text_.substr(start, pos_ - start));
    result_.tokens.push_back(Token{kind, std::move(text), Span{begin, here_}});
  }

  void error(std::string code, std::string message, Span span)
  {
    result_.diagnostics.push_back(
        Diagnostic{std::move(code), Severity::error, std::move(message), src_.path, span});
  }

  void skip_comment()
  {
    while (pos_ < text_.size() && text_[pos_] != '\n') {
      const std::size_t n = utf8_length(text_, pos_);
      if (n == 0) {
        const Position begin = here_;
        advance(1);
        error("P011", "invalid UTF-8 byte", {begin, here_});
      } else {
        advance(n);
      }
    }
  }

  void lex_word()
  {
    const std::size_t start = pos_;
    const Position begin = here_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance(1);
    const std::string_view word = text_.substr(start, pos_ - start);
    push(is_keyword(word) ? TokenKind::keyword : TokenKind::ident, start, begin);
  }

  void lex_number()
  {
    const std::size_t start = pos_;
    const Position begin = here_;
    if (text_[pos_] == '0' && (peek(1) == 'x' || peek(1) == 'X') && is_hex(peek(2))) {
      advance(2);
      while (pos_ < text_.size() && is_hex(text_[pos_])) advance(1);
    } else {
      while (pos_ < text_.size() && is_digit(text_[pos_])) advance(1);
    }
    if (pos_ < text_.size() && is_ident_char(text_[pos_])) {
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance(1);
      error("P002", "malformed number '" + std::string(text_.substr(start, pos_ - start)) + "'",
            {begin, here_});
      return;
    }
    push(TokenKind::integer, start, begin);
  }

  void lex_string()
  {
    const std::size_t start = pos_;
    const Position begin = here_;
    advance(1);
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') break;
      if (c == '"') {
        advance(1);
        push(TokenKind::string, start, begin);
        return;
      }
      if (c == '\\' && pos_ + 1 < text_.size() && text_[pos_ + 1] != '\n') {
        const char e = text_[pos_ + 1];
        if (e != '"' && e != '\\' && e != 'n' && e != 't') {
          const Position esc = here_;
          advance(2);
          error("P001", std::string("unknown escape sequence '\\") + e + "'", {esc, here_});
          continue;
        }
        advance(2);
        continue;
      }
      const std::size_t n = utf8_length(text_, pos_);
      if (n == 0) {
        const Position bad = here_;
        advance(1);
        error("P011", "invalid UTF-8 byte", {bad, here_});
      } else {
        advance(n);
      }
    }
    error("P001", "unterminated string literal", {begin, here_});
  }

  void lex_stereotype(std::string_view open, std::string_view close)
  {
    const Position begin = here_;
    std::size_t p = pos_ + open.size();
    const std::size_t word_start = p;
    while (p < text_.size() && is_ident_char(text_[p])) ++p;
    if (p > word_start && text_.substr(p).starts_with(close)) {
      const std::string word(text_.substr(word_start, p - word_start));
      advance(p + close.size() - pos_);
      result_.tokens.push_back(Token{TokenKind::stereotype, word, Span{begin, here_}});
      return;
    }
    advance(open.size());
    error("P002", "malformed stereotype; expected <<word>>", {begin, here_});
  }

  bool lex_punct()
  {
    for (std::string_view p : k_puncts) {
      if (text_.substr(pos_).starts_with(p)) {
        const std::size_t start = pos_;
        const Position begin = here_;
        advance(p.size());
        push(TokenKind::punct, start, begin);
        return true;
      }
    }
    return false;
  }

  void lex_illegal()
  {
    const Position begin = here_;
    const std::size_t n = utf8_length(text_, pos_);
    if (n == 0) {
      advance(1);
      error("P011", "invalid UTF-8 byte", {begin, here_});
      return;
    }
    const std::string ch(text_.substr(pos_, n));
    advance(n);
    error("P002", "illegal character '" + ch + "'", {begin, here_});
  }

  const SourceFile &src_;
  std::string_view text_;
  std::size_t pos_ = 0;
  Position here_;
  TokenizeResult result_;
};

}  // namespace

std::string_view to_string(TokenKind k) noexcept
{
  switch (k) {
    case TokenKind::ident: return "identifier";
    case TokenKind::integer: return "integer";
    case TokenKind::string: return "string";
    case TokenKind::keyword: return "keyword";
    case TokenKind::punct: return "punctuation";
    case TokenKind::stereotype: return "stereotype";
  }
  return "token";
}

bool is_keyword(std::string_view word) noexcept
{
  return std::find(k_keywords.begin(), k_keywords.end(), word) != k_keywords.end();
}

TokenizeResult tokenize(const SourceFile &src) { return Lexer(src).run(); }

std::string unescape_string(std::string_view body)
{
  std::string out;
  out.reserve(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '\\' && i + 1 < body.size()) {
      switch (body[++i]) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: out += body[i];
      }
    } else {
      out += body[i];
    }
  }
  return out;
}

}  // namespace boscribe

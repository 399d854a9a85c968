#include "boscribe/parser.hpp"

#include "boscribe/lexer.hpp"

#include <algorithm>
#include <regex>

namespace boscribe
{
namespace
{

struct ParseError
{
  Diagnostic diagnostic;
};

bool is_decl_start(const Token &t)
{
  if (t.kind != TokenKind::keyword) return false;
  static constexpr std::string_view k_starts[] = {"contract", "library",    "interface", "abstract",
                                                  "actor",    "statechart", "scenario",  "story"};
  return std::find(std::begin(k_starts), std::end(k_starts), t.text) != std::end(k_starts);
}

class Parser
{
 public:
  Parser(const SourceFile &src, std::vector<Token> tokens) : src_(src), tokens_(std::move(tokens)) {}

  ParseResult parse_file()
  {
    ParseResult result;
    result.model.file = src_.path;
    model_ = &result.model;

    if (at_keyword("system")) {
      try {
        advance();
        model_->name = expect_ident("system name").text;
        expect_punct("{");
        if (at_keyword("goal")) {
          advance();
          model_->goal = unescape_string(strip_quotes(expect(TokenKind::string, "goal text").text));
          match_punct(";");
        }
      } catch (const ParseError &e) {
        diagnostics_.push_back(e.diagnostic);
        synchronize();
      }
      while (!at_end() && !at_punct("}")) {
        parse_decl_recovering();
      }
      if (at_end()) {
        error_here("P009", "expected '}' closing the system block");
      } else {
        advance();
        if (!at_end()) {
          error_at("P005", "unexpected '" + cur().text + "' after the system block", cur().span);
        }
      }
    } else {
      while (!at_end()) {
        parse_decl_recovering();
      }
    }

    result.diagnostics = std::move(diagnostics_);
    return result;
  }

  ExprRef parse_standalone_expression(std::vector<Diagnostic> &diags)
  {
    ExprRef e;
    try {
      e = parse_expr();
      if (!at_end()) error_at("P005", "unexpected '" + cur().text + "' after expression", cur().span);
    } catch (const ParseError &err) {
      diagnostics_.push_back(err.diagnostic);
      e = ExprRef();
    }
    diags.insert(diags.end(), diagnostics_.begin(), diagnostics_.end());
    return e;
  }

 private:
  // -- token access --------------------------------------------------------

  [[nodiscard]] bool at_end() const noexcept { return idx_ >= tokens_.size(); }

  [[nodiscard]] const Token &cur() const
  {
    static const Token eof{TokenKind::punct, "<end of input>", {}};
    return at_end() ? eof : tokens_[idx_];
  }

  [[nodiscard]] const Token *peek(std::size_t ahead) const
  {
    return idx_ + ahead < tokens_.size() ? &tokens_[idx_ + ahead] : nullptr;
  }

  const Token &advance()
  {
    const Token &t = cur();
    if (!at_end()) ++idx_;
    return t;
  }

  [[nodiscard]] bool at_punct(std::string_view p) const
  {
    return !at_end() && cur().kind == TokenKind::punct && cur().text == p;
  }

  [[nodiscard]] bool at_keyword(std::string_view k) const
  {
    return !at_end() && cur().kind == TokenKind::keyword && cur().text == k;
  }

  bool match_punct(std::string_view p)
  {
    if (at_punct(p)) {
      advance();
      return true;
    }
    return false;
  }

  bool match_keyword(std::string_view k)
  {
    if (at_keyword(k)) {
      advance();
      return true;
    }
    return false;
  }

  /// Span for errors at the current position; past the end, the end of the last token.
  [[nodiscard]] Span here() const
  {
    if (!at_end()) return cur().span;
    if (tokens_.empty()) return {};
    const Position p = tokens_.back().span.end;
    return {p, p};
  }

  [[noreturn]] void fail(std::string code, std::string message) const
  {
    if (at_end() && code != "P009") {
      message += " (reached end of input)";
      code = "P009";
    }
    throw ParseError{Diagnostic{std::move(code), Severity::error, std::move(message), src_.path, here()}};
  }

  void error_at(std::string code, std::string message, Span span)
  {
    diagnostics_.push_back(Diagnostic{std::move(code), Severity::error, std::move(message), src_.path, span});
  }

  void error_here(std::string code, std::string message)
  {
    error_at(std::move(code), std::move(message), here());
  }

  const Token &expect(TokenKind kind, std::string_view what)
  {
    if (at_end() || cur().kind != kind) {
      fail(kind == TokenKind::ident ? "P003" : "P004",
           "expected " + std::string(what) + ", found '" + cur().text + "'");
    }
    return advance();
  }

  const Token &expect_ident(std::string_view what = "identifier")
  {
    if (at_end() || cur().kind != TokenKind::ident) {
      std::string msg = "expected identifier";
      if (what != "identifier") msg += " (" + std::string(what) + ")";
      if (!at_end() && cur().kind == TokenKind::keyword) {
        msg += "; '" + cur().text + "' is a reserved word";
      } else {
        msg += ", found '" + cur().text + "'";
      }
      fail("P003", msg);
    }
    return advance();
  }

  void expect_punct(std::string_view p)
  {
    if (!match_punct(p)) fail("P004", "expected '" + std::string(p) + "', found '" + cur().text + "'");
  }

  void expect_keyword(std::string_view k)
  {
    if (!match_keyword(k)) fail("P004", "expected '" + std::string(k) + "', found '" + cur().text + "'");
  }

  static std::string_view strip_quotes(std::string_view s)
  {
    return s.size() >= 2 ? s.substr(1, s.size() - 2) : s;
  }

  std::string expect_string(std::string_view what)
  {
    return unescape_string(strip_quotes(expect(TokenKind::string, what).text));
  }

  Int expect_integer(std::string_view what)
  {
    const bool negative = match_punct("-");
    const Token &t = expect(TokenKind::integer, what);
    if (t.text.starts_with("0x") || t.text.starts_with("0X")) {
      throw ParseError{Diagnostic{"P007", Severity::error,
                                  "expected decimal integer (" + std::string(what) + ")", src_.path, t.span}};
    }
    Int v(t.text);
    return negative ? Int(-v) : v;
  }

  std::vector<std::string> ident_list()
  {
    std::vector<std::string> names;
    names.push_back(expect_ident().text);
    while (match_punct(",")) names.push_back(expect_ident().text);
    return names;
  }

  Span span_from(Position begin) const
  {
    const Position end = idx_ > 0 ? tokens_[idx_ - 1].span.end : begin;
    return {begin, end};
  }

  // -- recovery ------------------------------------------------------------

  void parse_decl_recovering()
  {
    const std::size_t start = idx_;
    try {
      parse_decl();
    } catch (const ParseError &e) {
      diagnostics_.push_back(e.diagnostic);
      if (idx_ == start) advance();
      synchronize();
    }
  }

  /// Skips to the next token that can start a top-level declaration at the
  /// declaration nesting level, or to the `}` closing the system block.
  void synchronize()
  {
    int depth = brace_depth_at_error();
    while (!at_end()) {
      const Token &t = cur();
      if (depth <= 0 && is_decl_start(t)) return;
      if (t.kind == TokenKind::punct && t.text == "{") {
        ++depth;
      } else if (t.kind == TokenKind::punct && t.text == "}") {
        if (depth <= 0) return;  // closes the system block
        --depth;
        if (depth == 0) {
          advance();
          return;
        }
      }
      advance();
    }
  }

  /// Braces opened since the start of the current declaration.
  int brace_depth_at_error() const
  {
    int depth = 0;
    for (std::size_t i = decl_start_; i < idx_ && i < tokens_.size(); ++i) {
      if (tokens_[i].kind != TokenKind::punct) continue;
      if (tokens_[i].text == "{") ++depth;
      if (tokens_[i].text == "}") --depth;
    }
    return depth;
  }

  // -- declarations ----------------------------------------------------------

  void parse_decl()
  {
    decl_start_ = idx_;
    const Token &t = cur();
    if (t.kind == TokenKind::keyword) {
      if (t.text == "contract" || t.text == "library" || t.text == "interface" || t.text == "abstract") {
        model_->contracts.push_back(parse_contract());
        return;
      }
      if (t.text == "actor") {
        model_->actors.push_back(parse_actor());
        return;
      }
      if (t.text == "statechart") {
        model_->statecharts.push_back(parse_statechart());
        return;
      }
      if (t.text == "scenario") {
        model_->scenarios.push_back(parse_scenario());
        return;
      }
      if (t.text == "story") {
        model_->stories.push_back(parse_story());
        return;
      }
      if (t.text == "goal") fail("P005", "'goal' must come first inside the system block");
    }
    fail("P005",
         "expected a declaration (contract, library, interface, abstract, actor, "
         "statechart, scenario, story), found '" +
             t.text + "'");
  }

  ContractDef parse_contract()
  {
    ContractDef c;
    const Position begin = cur().span.begin;
    const std::string kw = advance().text;
    if (kw == "contract") c.kind = ContractKind::contract;
    if (kw == "library") c.kind = ContractKind::library;
    if (kw == "interface") c.kind = ContractKind::interface;
    if (kw == "abstract") {
      c.kind = ContractKind::abstract;
      match_keyword("contract");
    }
    c.name = expect_ident("contract name").text;
    if (match_keyword("inherits")) c.inherits = ident_list();
    expect_punct("{");
    while (!at_punct("}")) {
      if (at_end()) fail("P009", "expected '}' closing contract '" + c.name + "'");
      parse_member(c);
    }
    advance();
    c.loc.span = span_from(begin);
    return c;
  }

  void parse_member(ContractDef &c)
  {
    const Position begin = cur().span.begin;
    if (match_keyword("struct")) {
      StructDef s;
      s.name = expect_ident("struct name").text;
      expect_punct("{");
      while (!match_punct("}")) {
        if (at_end()) fail("P009", "expected '}' closing struct '" + s.name + "'");
        Param f;
        const Position fb = cur().span.begin;
        f.type = parse_type();
        f.name = expect_ident("field name").text;
        expect_punct(";");
        f.loc.span = span_from(fb);
        s.fields.push_back(std::move(f));
      }
      s.loc.span = span_from(begin);
      c.structs.push_back(std::move(s));
      return;
    }
    if (match_keyword("enum")) {
      EnumDef e;
      e.name = expect_ident("enum name").text;
      expect_punct("{");
      e.members = ident_list();
      expect_punct("}");
      e.loc.span = span_from(begin);
      c.enums.push_back(std::move(e));
      return;
    }
    if (match_keyword("modifier")) {
      ModifierDef m;
      m.name = expect_ident("modifier name").text;
      m.params = parse_params();
      expect_keyword("requires");
      m.guard = parse_expr();
      expect_punct(";");
      m.loc.span = span_from(begin);
      c.modifiers.push_back(std::move(m));
      return;
    }
    if (match_keyword("event")) {
      EventDef e;
      e.name = expect_ident("event name").text;
      e.params = parse_params();
      expect_punct(";");
      e.loc.span = span_from(begin);
      c.events.push_back(std::move(e));
      return;
    }
    if (at_keyword("function") || at_keyword("constructor")) {
      c.functions.push_back(parse_function());
      return;
    }
    if (match_keyword("role")) {
      RoleDef r;
      r.name = expect_ident("role name").text;
      expect_punct(";");
      r.loc.span = span_from(begin);
      c.roles.push_back(std::move(r));
      return;
    }

    StateVar v;
    if (match_keyword("public")) {
      v.visibility = Visibility::public_;
    } else if (match_keyword("private")) {
      v.visibility = Visibility::private_;
    }
    if (cur().kind != TokenKind::ident && !at_keyword("mapping")) {
      fail("P004", "expected a member declaration, found '" + cur().text + "'");
    }
    v.type = parse_type();
    v.name = expect_ident("state variable name").text;
    if (match_keyword("impl")) {
      const Token &w = expect_ident("relationship implementation");
      if (w.text == "array") {
        if (v.type.kind != TypeRef::Kind::array) {
          throw ParseError{
              Diagnostic{"P006", Severity::error, "'impl array' requires an array type", src_.path, w.span}};
        }
      } else if (w.text == "map" || w.text == "map_uint") {
        if (v.type.kind != TypeRef::Kind::map) {
          throw ParseError{Diagnostic{"P006", Severity::error,
                                      "'impl " + w.text + "' requires a mapping type", src_.path, w.span}};
        }
        if (w.text == "map_uint") {
          if (v.type.scalar.kind != ScalarKind::uint_) {
            throw ParseError{Diagnostic{"P006", Severity::error,
                                        "'impl map_uint' requires an unsigned integer key", src_.path,
                                        w.span}};
          }
          v.type.impl = RelImpl::map_uint;
        }
      } else {
        throw ParseError{Diagnostic{
            "P006", Severity::error,
            "unknown relationship implementation '" + w.text + "'; expected array, map or map_uint",
            src_.path, w.span}};
      }
    }
    expect_punct(";");
    v.loc.span = span_from(begin);
    c.state_vars.push_back(std::move(v));
  }

  TypeRef parse_type()
  {
    TypeRef t;
    if (match_keyword("mapping")) {
      expect_punct("(");
      const Token &key = expect_ident("mapping key type");
      const auto scalar = parse_scalar_type(key.text);
      if (!scalar) {
        throw ParseError{Diagnostic{"P008", Severity::error,
                                    "mapping key must be a scalar type, found '" + key.text + "'", src_.path,
                                    key.span}};
      }
      expect_punct("=>");
      TypeRef value = parse_type();
      expect_punct(")");
      t = TypeRef::make_map(*scalar, std::move(value));
    } else {
      const Token &name = expect_ident("type name");
      if (auto scalar = parse_scalar_type(name.text)) {
        t = TypeRef::make_scalar(scalar->kind, scalar->bits);
      } else {
        static const std::regex k_sized_int("u?int[0-9]+");
        if (std::regex_match(name.text, k_sized_int)) {
          throw ParseError{
              Diagnostic{"P008", Severity::error,
                         "invalid integer type '" + name.text + "'; widths run from 8 to 256 in steps of 8",
                         src_.path, name.span}};
        }
        t = TypeRef::make_user(name.text);
      }
    }
    while (at_punct("[")) {
      advance();
      expect_punct("]");
      t = TypeRef::make_array(std::move(t));
    }
    return t;
  }

  std::vector<Param> parse_params()
  {
    std::vector<Param> params;
    expect_punct("(");
    if (match_punct(")")) return params;
    do {
      Param p;
      const Position begin = cur().span.begin;
      p.type = parse_type();
      p.name = expect_ident("parameter name").text;
      p.loc.span = span_from(begin);
      params.push_back(std::move(p));
    } while (match_punct(","));
    expect_punct(")");
    return params;
  }

  FunctionDef parse_function()
  {
    FunctionDef f;
    const Position begin = cur().span.begin;
    if (match_keyword("constructor")) {
      f.is_constructor = true;
      f.name = "constructor";
    } else {
      expect_keyword("function");
      f.name = expect_ident("function name").text;
    }
    f.params = parse_params();
    if (match_keyword("view")) {
      f.mutability = Mutability::view;
    } else if (match_keyword("pure")) {
      f.mutability = Mutability::pure;
    }
    f.payable = match_keyword("payable");
    if (match_keyword("returns")) {
      expect_punct("(");
      f.returns.push_back(parse_type());
      while (match_punct(",")) f.returns.push_back(parse_type());
      expect_punct(")");
    }
    if (match_keyword("uses")) f.applied_modifiers = ident_list();
    if (match_keyword("effects")) f.effects = parse_effects();
    if (match_keyword("sets")) {
      do {
        Assignment a;
        const Position ab = cur().span.begin;
        a.target = expect_ident("assignment target").text;
        a.op = parse_assign_op();
        a.value = parse_expr();
        a.loc.span = span_from(ab);
        f.sets.push_back(std::move(a));
      } while (match_punct(","));
    }
    if (match_keyword("note")) f.note = expect_string("note text");
    if (!at_punct(";")) {
      fail("P004", "expected ';' ending function '" + f.name +
                       "' (clauses go in the order: view|pure, payable, returns, uses, effects, "
                       "sets, note), found '" +
                       cur().text + "'");
    }
    advance();
    f.loc.span = span_from(begin);
    return f;
  }

  AssignOp parse_assign_op()
  {
    if (match_punct("=")) return AssignOp::assign;
    if (match_punct("+=")) return AssignOp::add;
    if (match_punct("-=")) return AssignOp::sub;
    fail("P004", "expected '=', '+=' or '-=', found '" + cur().text + "'");
  }

  EffectSet parse_effects()
  {
    EffectSet e;
    expect_punct("(");
    while (!match_punct(")")) {
      if (match_keyword("reads")) {
        auto names = ident_list();
        e.reads.insert(e.reads.end(), names.begin(), names.end());
      } else if (match_keyword("writes")) {
        auto names = ident_list();
        e.writes.insert(e.writes.end(), names.begin(), names.end());
      } else if (match_keyword("emits")) {
        auto names = ident_list();
        e.emits.insert(e.emits.end(), names.begin(), names.end());
      } else if (match_keyword("iterates")) {
        auto names = ident_list();
        e.iterates.insert(e.iterates.end(), names.begin(), names.end());
      } else if (match_keyword("creates")) {
        auto names = ident_list();
        e.creates.insert(e.creates.end(), names.begin(), names.end());
      } else if (match_keyword("transfers")) {
        e.transfers_eth = true;
      } else if (match_keyword("destroys")) {
        e.destroys = true;
      } else {
        fail("P004",
             "expected an effect (reads, writes, emits, iterates, creates, transfers, "
             "destroys) or ')', found '" +
                 cur().text + "'");
      }
    }
    return e;
  }

  ActorDef parse_actor()
  {
    ActorDef a;
    const Position begin = advance().span.begin;
    a.name = expect_ident("actor name").text;
    expect_punct(":");
    const Token &k = cur();
    if (k.text == "person") {
      a.kind = ActorKind::person;
    } else if (k.text == "system") {
      a.kind = ActorKind::system;
    } else if (k.text == "device") {
      a.kind = ActorKind::device;
    } else if (k.text == "account") {
      a.kind = ActorKind::account;
    } else if (k.text == "oracle" || k.text == "contract") {
      fail("P006", "'" + k.text +
                       "' is a contract stereotype; declare a contract and mark "
                       "the scenario participant <<" +
                       k.text + ">> instead");
    } else {
      fail("P006", "unknown actor kind '" + k.text + "'; expected person, system, device or account");
    }
    advance();
    if (match_keyword("writes")) a.trusted_writer_for = expect_ident("oracle contract name").text;
    expect_punct(";");
    a.loc.span = span_from(begin);
    return a;
  }

  Statechart parse_statechart()
  {
    Statechart sc;
    const Position begin = advance().span.begin;
    sc.name = expect_ident("statechart name").text;
    expect_keyword("for");
    if (cur().kind != TokenKind::ident && cur().kind != TokenKind::keyword) {
      fail("P003", "expected identifier (statechart subject), found '" + cur().text + "'");
    }
    sc.subject = advance().text;
    expect_keyword("in");
    sc.scoped_to = expect_ident("contract name").text;
    expect_punct("{");
    bool have_initial = false;
    while (!match_punct("}")) {
      if (at_end()) fail("P009", "expected '}' closing statechart '" + sc.name + "'");
      const Position ib = cur().span.begin;
      if (match_keyword("attr")) {
        ChartAttr a;
        a.name = expect_ident("attribute name").text;
        expect_punct("=");
        a.initial = expect_integer("initial attribute value");
        expect_punct(";");
        a.loc.span = span_from(ib);
        sc.attrs.push_back(std::move(a));
      } else if (match_keyword("states")) {
        auto names = ident_list();
        sc.states.insert(sc.states.end(), names.begin(), names.end());
        expect_punct(";");
      } else if (match_keyword("initial")) {
        if (have_initial) fail("P004", "duplicate 'initial' in statechart '" + sc.name + "'");
        sc.initial = expect_ident("initial state").text;
        have_initial = true;
        expect_punct(";");
      } else if (match_keyword("transition")) {
        sc.transitions.push_back(parse_transition(ib));
      } else {
        fail("P004", "expected attr, states, initial, transition or '}', found '" + cur().text + "'");
      }
    }
    sc.loc.span = span_from(begin);
    return sc;
  }

  TransitionDef parse_transition(Position begin)
  {
    TransitionDef t;
    t.source = expect_ident("source state").text;
    expect_punct("->");
    t.target = expect_ident("target state").text;
    expect_keyword("on");
    t.trigger = expect_ident("trigger function").text;
    if (match_keyword("when")) t.guard = parse_expr();
    if (match_keyword("do")) {
      do {
        ChartAction a;
        const Position ab = cur().span.begin;
        if (match_keyword("self")) {
          a.subject = "self";
        } else {
          a.subject = expect_ident("action subject (self or a parameter)").text;
        }
        expect_punct(".");
        a.attr = expect_ident("attribute name").text;
        a.op = parse_assign_op();
        a.value = parse_expr();
        a.loc.span = span_from(ab);
        t.actions.push_back(std::move(a));
      } while (match_punct(","));
    }
    expect_punct(";");
    t.loc.span = span_from(begin);
    return t;
  }

  Scenario parse_scenario()
  {
    Scenario s;
    const Position begin = advance().span.begin;
    s.name = expect_ident("scenario name").text;
    expect_punct("{");
    while (!match_punct("}")) {
      if (at_end()) fail("P009", "expected '}' closing scenario '" + s.name + "'");
      const Position ib = cur().span.begin;
      if (match_keyword("participant")) {
        Participant p;
        const Token &st = expect(TokenKind::stereotype, "participant stereotype such as <<person>>");
        const auto kind = parse_participant_kind(st.text);
        if (!kind) {
          throw ParseError{Diagnostic{"P010", Severity::error,
                                      "unknown stereotype <<" + st.text +
                                          ">>; expected person, system, device, account, contract "
                                          "or oracle",
                                      src_.path, st.span}};
        }
        p.kind = *kind;
        p.alias = expect_ident("participant alias").text;
        expect_punct(":");
        p.ref = expect_ident("actor or contract name").text;
        expect_punct(";");
        p.loc.span = span_from(ib);
        s.participants.push_back(std::move(p));
      } else if (match_keyword("genesis")) {
        GenesisEntry g;
        g.alias = expect_ident("participant alias").text;
        expect_punct("=");
        g.wei = expect_integer("initial balance in wei");
        expect_punct(";");
        g.loc.span = span_from(ib);
        s.genesis.push_back(std::move(g));
      } else if (at_keyword("create") || at_keyword("call") || at_keyword("viewcall") ||
                 at_keyword("transfer")) {
        auto [msg, outcome] = parse_step();
        s.messages.push_back(std::move(msg));
        s.expected.push_back(std::move(outcome));
      } else {
        fail("P004",
             "expected participant, genesis, create, call, viewcall, transfer or '}', "
             "found '" +
                 cur().text + "'");
      }
    }
    s.loc.span = span_from(begin);
    return s;
  }

  std::pair<MessageSpec, Outcome> parse_step()
  {
    MessageSpec m;
    const Position begin = cur().span.begin;
    const std::string kw = advance().text;
    if (kw == "create") m.kind = MessageKind::create;
    if (kw == "call") m.kind = MessageKind::call;
    if (kw == "viewcall") m.kind = MessageKind::view_call;
    if (kw == "transfer") m.kind = MessageKind::eth_transfer;

    m.from = expect_ident("sender alias").text;
    expect_punct("->");
    m.to = expect_ident("receiver alias").text;
    if (m.kind == MessageKind::call || m.kind == MessageKind::view_call) {
      expect_punct(".");
      m.function = expect_ident("function name").text;
    } else if (m.kind == MessageKind::create) {
      m.function = "constructor";
    }
    if (m.kind != MessageKind::eth_transfer) m.args = parse_args();
    if (match_keyword("value")) m.value = expect_integer("value in wei");
    if (match_keyword("at")) m.at = expect_integer("timestamp");
    expect_punct("=>");

    Outcome o;
    if (match_keyword("ok")) {
      o = Outcome::ok();
    } else if (match_keyword("revert")) {
      o = Outcome::revert(expect_reason("revert reason"));
    } else if (match_keyword("error")) {
      o = Outcome::error(expect_reason("error code"));
    } else {
      fail("P006", "expected outcome ok, revert <reason> or error <code>, found '" + cur().text + "'");
    }
    expect_punct(";");
    m.loc.span = span_from(begin);
    return {std::move(m), std::move(o)};
  }

  std::string expect_reason(std::string_view what)
  {
    if (cur().kind != TokenKind::ident && cur().kind != TokenKind::keyword) {
      fail("P003", "expected identifier (" + std::string(what) + "), found '" + cur().text + "'");
    }
    return advance().text;
  }

  std::vector<Literal> parse_args()
  {
    std::vector<Literal> args;
    expect_punct("(");
    if (match_punct(")")) return args;
    do {
      args.push_back(parse_literal());
    } while (match_punct(","));
    expect_punct(")");
    return args;
  }

  Literal parse_literal()
  {
    const Token &t = cur();
    if (t.kind == TokenKind::integer) {
      advance();
      if (t.text.starts_with("0x") || t.text.starts_with("0X")) return Literal{Literal::Address{t.text}};
      return Literal{Int(t.text)};
    }
    if (at_punct("-")) return Literal{expect_integer("integer")};
    if (t.kind == TokenKind::string) return Literal{expect_string("string")};
    if (match_keyword("true")) return Literal{true};
    if (match_keyword("false")) return Literal{false};
    if (t.kind == TokenKind::ident) {
      advance();
      return Literal{Literal::Address{t.text}};
    }
    if (at_punct("[") || at_punct("(")) {
      const bool tuple = at_punct("(");
      advance();
      Literal::List list{tuple, {}};
      const std::string_view close = tuple ? ")" : "]";
      if (!match_punct(close)) {
        do {
          list.items.push_back(parse_literal());
        } while (match_punct(","));
        expect_punct(close);
      }
      return Literal{std::move(list)};
    }
    fail("P007", "expected a literal argument, found '" + t.text + "'");
  }

  UserStory parse_story()
  {
    UserStory u;
    const Position begin = advance().span.begin;
    u.id = expect_ident("story id").text;
    expect_keyword("by");
    u.actor = expect_ident("actor name").text;
    if (match_keyword("onchain")) {
      u.subsystem = Subsystem::onchain;
    } else if (match_keyword("offchain")) {
      u.subsystem = Subsystem::offchain;
    } else if (match_keyword("both")) {
      u.subsystem = Subsystem::both;
    } else {
      fail("P006", "expected subsystem onchain, offchain or both, found '" + cur().text + "'");
    }
    u.narrative = expect_string("story narrative");
    expect_punct(";");
    u.loc.span = span_from(begin);
    return u;
  }

  // -- expressions -----------------------------------------------------------
  //
  //   or   := and ("||" and)*
  //   and  := cmp ("&&" cmp)*
  //   cmp  := add (("=="|"!="|"<"|"<="|">"|">=") add | "in" ident)?
  //   add  := unary (("+"|"-") unary)*
  //   unary:= "!" unary | "-" INT | primary

  ExprRef parse_expr() { return parse_or(); }

  ExprRef parse_or()
  {
    const Position begin = cur().span.begin;
    ExprRef lhs = parse_and();
    while (match_punct("||")) {
      ExprRef rhs = parse_and();
      lhs = make_expr(expr::Binary{BinaryOp::logical_or, lhs, rhs}, span_from(begin));
    }
    return lhs;
  }

  ExprRef parse_and()
  {
    const Position begin = cur().span.begin;
    ExprRef lhs = parse_cmp();
    while (match_punct("&&")) {
      ExprRef rhs = parse_cmp();
      lhs = make_expr(expr::Binary{BinaryOp::logical_and, lhs, rhs}, span_from(begin));
    }
    return lhs;
  }

  ExprRef parse_cmp()
  {
    const Position begin = cur().span.begin;
    ExprRef lhs = parse_add();
    static constexpr std::pair<std::string_view, BinaryOp> k_ops[] = {
        {"==", BinaryOp::eq}, {"!=", BinaryOp::ne}, {"<=", BinaryOp::le},
        {">=", BinaryOp::ge}, {"<", BinaryOp::lt},  {">", BinaryOp::gt},
    };
    for (const auto &[text, op] : k_ops) {
      if (match_punct(text)) {
        ExprRef rhs = parse_add();
        return make_expr(expr::Binary{op, lhs, rhs}, span_from(begin));
      }
    }
    if (match_keyword("in")) {
      const std::string role = expect_ident("role name").text;
      return make_expr(expr::InRole{lhs, role}, span_from(begin));
    }
    return lhs;
  }

  ExprRef parse_add()
  {
    const Position begin = cur().span.begin;
    ExprRef lhs = parse_unary();
    while (at_punct("+") || at_punct("-")) {
      const BinaryOp op = advance().text == "+" ? BinaryOp::add : BinaryOp::sub;
      ExprRef rhs = parse_unary();
      lhs = make_expr(expr::Binary{op, lhs, rhs}, span_from(begin));
    }
    return lhs;
  }

  ExprRef parse_unary()
  {
    const Position begin = cur().span.begin;
    if (match_punct("!")) {
      ExprRef operand = parse_unary();
      return make_expr(expr::Not{operand}, span_from(begin));
    }
    if (at_punct("-")) {
      const Int v = expect_integer("integer after '-'");
      return make_expr(expr::IntLit{v}, span_from(begin));
    }
    return parse_primary();
  }

  ExprRef parse_primary()
  {
    const Position begin = cur().span.begin;
    const Token &t = cur();
    if (t.kind == TokenKind::integer) {
      advance();
      if (t.text.starts_with("0x") || t.text.starts_with("0X")) {
        return make_expr(expr::AddrLit{t.text}, t.span);
      }
      return make_expr(expr::IntLit{Int(t.text)}, t.span);
    }
    if (t.kind == TokenKind::string) {
      const std::string s = expect_string("string");
      return make_expr(expr::StrLit{s}, span_from(begin));
    }
    if (t.kind == TokenKind::keyword) {
      if (match_keyword("true")) return make_expr(expr::BoolLit{true}, t.span);
      if (match_keyword("false")) return make_expr(expr::BoolLit{false}, t.span);
      if (match_keyword("sender")) return make_expr(expr::BuiltinRef{Builtin::sender}, t.span);
      if (match_keyword("value")) return make_expr(expr::BuiltinRef{Builtin::value}, t.span);
      if (match_keyword("now")) return make_expr(expr::BuiltinRef{Builtin::now}, t.span);
      if (at_keyword("instate") || at_keyword("attr")) {
        const bool instate = advance().text == "instate";
        expect_punct("(");
        ExprRef actor = parse_expr();
        expect_punct(",");
        const std::string name = expect_ident(instate ? "state name" : "attribute name").text;
        expect_punct(")");
        if (instate) return make_expr(expr::InState{actor, name}, span_from(begin));
        return make_expr(expr::Attr{actor, name}, span_from(begin));
      }
    }
    if (t.kind == TokenKind::ident) {
      advance();
      if (match_punct(".")) {
        const std::string member = expect_ident("enum member").text;
        return make_expr(expr::EnumLit{t.text, member}, span_from(begin));
      }
      return make_expr(expr::Name{t.text}, t.span);
    }
    if (match_punct("(")) {
      ExprRef inner = parse_expr();
      expect_punct(")");
      return inner;
    }
    fail("P007", "expected expression, found '" + t.text + "'");
  }

  const SourceFile &src_;
  std::vector<Token> tokens_;
  std::size_t idx_ = 0;
  std::size_t decl_start_ = 0;
  Model *model_ = nullptr;
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace

ParseResult parse(const SourceFile &src)
{
  TokenizeResult lexed = tokenize(src);
  if (!lexed.ok()) {
    ParseResult result;
    result.model.file = src.path;
    result.diagnostics = std::move(lexed.diagnostics);
    sort_diagnostics(result.diagnostics);
    return result;
  }
  ParseResult result = Parser(src, std::move(lexed.tokens)).parse_file();
  sort_diagnostics(result.diagnostics);
  return result;
}

ExprRef parse_expression(const SourceFile &src, std::vector<Diagnostic> &diagnostics)
{
  TokenizeResult lexed = tokenize(src);
  if (!lexed.ok()) {
    diagnostics.insert(diagnostics.end(), lexed.diagnostics.begin(), lexed.diagnostics.end());
    return {};
  }
  return Parser(src, std::move(lexed.tokens)).parse_standalone_expression(diagnostics);
}

}  // namespace boscribe

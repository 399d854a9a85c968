#include "boscribe/model.hpp"

#include <algorithm>
#include <charconv>

namespace boscribe
{

std::string_view to_string(RelImpl r) noexcept
{
  switch (r) {
    case RelImpl::array: return "array";
    case RelImpl::map: return "map";
    case RelImpl::map_uint: return "map_uint";
  }
  return "map";
}

TypeRef TypeRef::make_scalar(ScalarKind k, unsigned bits)
{
  TypeRef t;
  t.kind = Kind::scalar;
  t.scalar = {k, bits};
  return t;
}

TypeRef TypeRef::make_user(std::string name)
{
  TypeRef t;
  t.kind = Kind::user;
  t.name = std::move(name);
  return t;
}

TypeRef TypeRef::make_array(TypeRef element)
{
  TypeRef t;
  t.kind = Kind::array;
  t.element.push_back(std::move(element));
  return t;
}

TypeRef TypeRef::make_map(ScalarType key, TypeRef value, RelImpl impl)
{
  TypeRef t;
  t.kind = Kind::map;
  t.scalar = key;
  t.element.push_back(std::move(value));
  t.impl = impl;
  return t;
}

std::string to_string(const ScalarType &t)
{
  switch (t.kind) {
    case ScalarKind::uint_: return "uint" + std::to_string(t.bits);
    case ScalarKind::int_: return "int" + std::to_string(t.bits);
    case ScalarKind::address: return "address";
    case ScalarKind::bool_: return "bool";
    case ScalarKind::string: return "string";
    case ScalarKind::bytes: return "bytes";
  }
  return "?";
}

std::string to_string(const TypeRef &t)
{
  switch (t.kind) {
    case TypeRef::Kind::scalar: return to_string(t.scalar);
    case TypeRef::Kind::user:
    case TypeRef::Kind::enum_ref:
    case TypeRef::Kind::struct_ref: return t.name;
    case TypeRef::Kind::array: return to_string(t.inner()) + "[]";
    case TypeRef::Kind::map: return "mapping(" + to_string(t.scalar) + " => " + to_string(t.inner()) + ")";
  }
  return "?";
}

std::optional<ScalarType> parse_scalar_type(std::string_view word)
{
  if (word == "address") return ScalarType{ScalarKind::address, 0};
  if (word == "bool") return ScalarType{ScalarKind::bool_, 0};
  if (word == "string") return ScalarType{ScalarKind::string, 0};
  if (word == "bytes") return ScalarType{ScalarKind::bytes, 0};
  if (word == "uint") return ScalarType{ScalarKind::uint_, 256};
  if (word == "int") return ScalarType{ScalarKind::int_, 256};

  ScalarKind kind;
  std::string_view digits;
  if (word.starts_with("uint")) {
    kind = ScalarKind::uint_;
    digits = word.substr(4);
  } else if (word.starts_with("int")) {
    kind = ScalarKind::int_;
    digits = word.substr(3);
  } else {
    return std::nullopt;
  }
  if (digits.empty() || digits.front() == '0') return std::nullopt;
  unsigned bits = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), bits);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  if (bits < 8 || bits > 256 || bits % 8 != 0) return std::nullopt;
  return ScalarType{kind, bits};
}

// ---------------------------------------------------------------------------

bool operator==(const ExprRef &a, const ExprRef &b)
{
  if (a.ptr_ == b.ptr_) return true;
  if (!a.ptr_ || !b.ptr_) return false;
  return *a.ptr_ == *b.ptr_;
}

ExprRef make_expr(Expr::Node node, Span span)
{
  return ExprRef(std::make_shared<const Expr>(Expr{Loc{span}, std::move(node)}));
}

std::string_view to_string(BinaryOp op) noexcept
{
  switch (op) {
    case BinaryOp::logical_and: return "&&";
    case BinaryOp::logical_or: return "||";
    case BinaryOp::eq: return "==";
    case BinaryOp::ne: return "!=";
    case BinaryOp::lt: return "<";
    case BinaryOp::le: return "<=";
    case BinaryOp::gt: return ">";
    case BinaryOp::ge: return ">=";
    case BinaryOp::add: return "+";
    case BinaryOp::sub: return "-";
  }
  return "?";
}

namespace
{

int precedence(BinaryOp op)
{
  switch (op) {
    case BinaryOp::logical_or: return 1;
    case BinaryOp::logical_and: return 2;
    case BinaryOp::add:
    case BinaryOp::sub: return 4;
    default: return 3;
  }
}

int precedence(const Expr &e)
{
  if (const auto *b = std::get_if<expr::Binary>(&e.node)) return precedence(b->op);
  if (std::holds_alternative<expr::InRole>(e.node)) return 3;
  if (std::holds_alternative<expr::Not>(e.node)) return 5;
  if (const auto *i = std::get_if<expr::IntLit>(&e.node); i && i->value < 0) return 5;
  return 6;
}

}  // namespace

std::string quote_string(std::string_view s)
{
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

namespace
{

void render(const ExprRef &e, int min_prec, std::string &out);

void render_child(const ExprRef &e, int min_prec, std::string &out)
{
  if (precedence(*e) < min_prec) {
    out += '(';
    render(e, 0, out);
    out += ')';
  } else {
    render(e, min_prec, out);
  }
}

void render(const ExprRef &e, int /*min_prec*/, std::string &out)
{
  std::visit(
      [&](const auto &n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, expr::IntLit>) {
          out += n.value.str();
        } else if constexpr (std::is_same_v<T, expr::BoolLit>) {
          out += n.value ? "true" : "false";
        } else if constexpr (std::is_same_v<T, expr::StrLit>) {
          out += quote_string(n.value);
        } else if constexpr (std::is_same_v<T, expr::AddrLit>) {
          out += n.hex;
        } else if constexpr (std::is_same_v<T, expr::BuiltinRef>) {
          switch (n.which) {
            case Builtin::sender: out += "sender"; break;
            case Builtin::value: out += "value"; break;
            case Builtin::now: out += "now"; break;
          }
        } else if constexpr (std::is_same_v<T, expr::Name>) {
          out += n.name;
        } else if constexpr (std::is_same_v<T, expr::EnumLit>) {
          out += n.enum_name + "." + n.member;
        } else if constexpr (std::is_same_v<T, expr::Not>) {
          out += '!';
          render_child(n.operand, 5, out);
        } else if constexpr (std::is_same_v<T, expr::Binary>) {
          const int p = precedence(n.op);
          // comparisons are non-associative; the others associate left
          render_child(n.lhs, p == 3 ? 4 : p, out);
          out += ' ';
          out += to_string(n.op);
          out += ' ';
          render_child(n.rhs, p == 3 ? 4 : p + 1, out);
        } else if constexpr (std::is_same_v<T, expr::InRole>) {
          render_child(n.member, 4, out);
          out += " in ";
          out += n.role;
        } else if constexpr (std::is_same_v<T, expr::InState>) {
          out += "instate(";
          render(n.actor, 0, out);
          out += ", " + n.state + ")";
        } else if constexpr (std::is_same_v<T, expr::Attr>) {
          out += "attr(";
          render(n.actor, 0, out);
          out += ", " + n.attr + ")";
        }
      },
      e->node);
}

}  // namespace

std::string to_string(const ExprRef &e)
{
  if (!e) return {};
  std::string out;
  render(e, 0, out);
  return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(ContractKind k) noexcept
{
  switch (k) {
    case ContractKind::contract: return "contract";
    case ContractKind::library: return "library";
    case ContractKind::interface: return "interface";
    case ContractKind::abstract: return "abstract";
  }
  return "contract";
}

std::string_view to_string(AssignOp op) noexcept
{
  switch (op) {
    case AssignOp::assign: return "=";
    case AssignOp::add: return "+=";
    case AssignOp::sub: return "-=";
  }
  return "=";
}

const FunctionDef *ContractDef::constructor() const
{
  auto it =
      std::find_if(functions.begin(), functions.end(), [](const FunctionDef &f) { return f.is_constructor; });
  return it == functions.end() ? nullptr : &*it;
}

std::string_view to_string(ActorKind k) noexcept
{
  switch (k) {
    case ActorKind::person: return "person";
    case ActorKind::system: return "system";
    case ActorKind::device: return "device";
    case ActorKind::account: return "account";
  }
  return "person";
}

std::string_view to_string(Subsystem s) noexcept
{
  switch (s) {
    case Subsystem::onchain: return "onchain";
    case Subsystem::offchain: return "offchain";
    case Subsystem::both: return "both";
  }
  return "onchain";
}

std::string_view to_string(ParticipantKind k) noexcept
{
  switch (k) {
    case ParticipantKind::person: return "person";
    case ParticipantKind::system: return "system";
    case ParticipantKind::device: return "device";
    case ParticipantKind::account: return "account";
    case ParticipantKind::contract: return "contract";
    case ParticipantKind::oracle: return "oracle";
  }
  return "person";
}

std::optional<ParticipantKind> parse_participant_kind(std::string_view word)
{
  if (word == "person") return ParticipantKind::person;
  if (word == "system") return ParticipantKind::system;
  if (word == "device") return ParticipantKind::device;
  if (word == "account") return ParticipantKind::account;
  if (word == "contract") return ParticipantKind::contract;
  if (word == "oracle") return ParticipantKind::oracle;
  return std::nullopt;
}

std::string to_string(const Literal &lit)
{
  return std::visit(
      [](const auto &v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Int>) {
          return v.str();
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return quote_string(v);
        } else if constexpr (std::is_same_v<T, Literal::Address>) {
          return v.id;
        } else {
          std::string out = v.tuple ? "(" : "[";
          for (std::size_t i = 0; i < v.items.size(); ++i) {
            if (i) out += ", ";
            out += to_string(v.items[i]);
          }
          out += v.tuple ? ")" : "]";
          return out;
        }
      },
      lit.value);
}

std::string_view to_string(MessageKind k) noexcept
{
  switch (k) {
    case MessageKind::create: return "create";
    case MessageKind::call: return "call";
    case MessageKind::view_call: return "viewcall";
    case MessageKind::eth_transfer: return "transfer";
  }
  return "call";
}

std::string to_string(const Outcome &o)
{
  switch (o.kind) {
    case Outcome::Kind::ok: return "ok";
    case Outcome::Kind::revert: return "revert " + o.detail;
    case Outcome::Kind::error: return "error " + o.detail;
  }
  return "ok";
}

const Participant *Scenario::participant(std::string_view alias) const
{
  auto it = std::find_if(participants.begin(), participants.end(),
                         [&](const Participant &p) { return p.alias == alias; });
  return it == participants.end() ? nullptr : &*it;
}

namespace
{
template <typename T>
const T *find_named(const std::vector<T> &items, std::string_view name)
{
  auto it = std::find_if(items.begin(), items.end(), [&](const T &t) { return t.name == name; });
  return it == items.end() ? nullptr : &*it;
}
}  // namespace

const ContractDef *Model::contract(std::string_view n) const { return find_named(contracts, n); }
const ActorDef *Model::actor(std::string_view n) const { return find_named(actors, n); }
const Scenario *Model::scenario(std::string_view n) const { return find_named(scenarios, n); }
const Statechart *Model::statechart(std::string_view n) const { return find_named(statecharts, n); }

bool operator==(const Model &a, const Model &b)
{
  return a.name == b.name && a.goal == b.goal && a.contracts == b.contracts && a.actors == b.actors &&
         a.scenarios == b.scenarios && a.statecharts == b.statecharts && a.stories == b.stories;
}

}  // namespace boscribe

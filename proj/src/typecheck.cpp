#include "boscribe/typecheck.hpp"

#include <algorithm>

namespace boscribe
{
namespace
{

template <class... Ts>
struct overloaded : Ts...
{
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

class Checker
{
 public:
  Checker(const ExprScope &scope, const std::string &file, std::vector<Diagnostic> &out)
      : scope_(scope), file_(file), out_(out)
  {}

  std::optional<ValueType> check(const ExprRef &e)
  {
    const Span span = e->loc.span;
    return std::visit(
        overloaded{
            [](const expr::IntLit &) -> std::optional<ValueType> {
              return ValueType{ValueKind::integer, {}};
            },
            [](const expr::BoolLit &) -> std::optional<ValueType> {
              return ValueType{ValueKind::boolean, {}};
            },
            [](const expr::StrLit &) -> std::optional<ValueType> { return ValueType{ValueKind::string, {}}; },
            [](const expr::AddrLit &) -> std::optional<ValueType> {
              return ValueType{ValueKind::address, {}};
            },
            [](const expr::BuiltinRef &b) -> std::optional<ValueType> {
              return ValueType{b.which == Builtin::sender ? ValueKind::address : ValueKind::integer, {}};
            },
            [&](const expr::Name &n) { return name(n.name, span); },
            [&](const expr::EnumLit &l) -> std::optional<ValueType> {
              const EnumDef *def = scope_.contract ? scope_.contract->enum_def(l.enum_name) : nullptr;
              if (!def) return fail(span, "unknown enum '" + l.enum_name + "'");
              if (std::find(def->members.begin(), def->members.end(), l.member) == def->members.end()) {
                return fail(span, "enum '" + l.enum_name + "' has no member '" + l.member + "'");
              }
              return ValueType{ValueKind::enumeration, l.enum_name};
            },
            [&](const expr::Not &n) -> std::optional<ValueType> {
              auto t = check(n.operand);
              if (!t) return std::nullopt;
              if (t->kind != ValueKind::boolean)
                return fail(span, "'!' needs a bool operand, found " + to_string(*t));
              return t;
            },
            [&](const expr::Binary &b) { return binary(b, span); },
            [&](const expr::InRole &r) -> std::optional<ValueType> {
              auto t = check(r.member);
              if (!t) return std::nullopt;
              if (t->kind != ValueKind::address) {
                return fail(span, "role membership needs an address, found " + to_string(*t));
              }
              if (!scope_.contract || !scope_.contract->has_role(r.role)) {
                return fail(span, "unknown role '" + r.role + "'");
              }
              return ValueType{ValueKind::boolean, {}};
            },
            [&](const expr::InState &s) -> std::optional<ValueType> {
              if (!actor_term(s.actor)) return std::nullopt;
              if (!chart_with_state(scope_.charts, s.state)) {
                return fail(span, state_problem(s.state, true));
              }
              return ValueType{ValueKind::boolean, {}};
            },
            [&](const expr::Attr &a) -> std::optional<ValueType> {
              if (!actor_term(a.actor)) return std::nullopt;
              if (!chart_with_attr(scope_.charts, a.attr)) return fail(span, state_problem(a.attr, false));
              return ValueType{ValueKind::integer, {}};
            },
        },
        e->node);
  }

 private:
  std::nullopt_t fail(Span span, std::string message)
  {
    out_.push_back(Diagnostic{"V015", Severity::error, std::move(message), file_, span});
    return std::nullopt;
  }

  std::string state_problem(const std::string &what, bool state) const
  {
    std::size_t count = 0;
    for (const Statechart *c : scope_.charts) {
      const bool has = state ? std::find(c->states.begin(), c->states.end(), what) != c->states.end()
                             : std::any_of(c->attrs.begin(), c->attrs.end(),
                                           [&](const ChartAttr &a) { return a.name == what; });
      count += has ? 1 : 0;
    }
    const std::string noun = state ? "state" : "attribute";
    if (count > 1) return "statechart " + noun + " '" + what + "' is ambiguous";
    return "unknown statechart " + noun + " '" + what + "'";
  }

  bool actor_term(const ExprRef &e)
  {
    auto t = check(e);
    if (!t) return false;
    if (t->kind != ValueKind::address) {
      fail(e->loc.span, "statechart predicates need an address, found " + to_string(*t));
      return false;
    }
    return true;
  }

  std::optional<ValueType> name(const std::string &n, Span span)
  {
    const TypeRef *type = nullptr;
    for (const auto &p : scope_.params) {
      if (p.name == n) type = &p.type;
    }
    if (!type && scope_.contract) {
      if (const StateVar *v = scope_.contract->state_var(n)) type = &v->type;
    }
    if (!type) {
      if (scope_.contract && scope_.contract->has_role(n)) {
        return fail(span, "role '" + n + "' is not a value; test membership with 'x in " + n + "'");
      }
      return fail(span, "unbound name '" + n + "'");
    }
    auto vt = value_type_of(*type);
    if (!vt)
      return fail(span, "'" + n + "' of type " + to_string(*type) + " cannot be used in an expression");
    return vt;
  }

  std::optional<ValueType> binary(const expr::Binary &b, Span span)
  {
    auto l = check(b.lhs);
    auto r = check(b.rhs);
    if (!l || !r) return std::nullopt;
    const std::string op(to_string(b.op));
    switch (b.op) {
      case BinaryOp::logical_and:
      case BinaryOp::logical_or:
        if (l->kind != ValueKind::boolean || r->kind != ValueKind::boolean) {
          return fail(span,
                      "'" + op + "' needs bool operands, found " + to_string(*l) + " and " + to_string(*r));
        }
        return ValueType{ValueKind::boolean, {}};
      case BinaryOp::eq:
      case BinaryOp::ne:
        if (*l != *r) {
          return fail(span, "'" + op + "' compares " + to_string(*l) + " with " + to_string(*r));
        }
        return ValueType{ValueKind::boolean, {}};
      case BinaryOp::lt:
      case BinaryOp::le:
      case BinaryOp::gt:
      case BinaryOp::ge:
        if (l->kind != ValueKind::integer || r->kind != ValueKind::integer) {
          return fail(
              span, "'" + op + "' needs integer operands, found " + to_string(*l) + " and " + to_string(*r));
        }
        return ValueType{ValueKind::boolean, {}};
      case BinaryOp::add:
      case BinaryOp::sub:
        if (l->kind != ValueKind::integer || r->kind != ValueKind::integer) {
          return fail(
              span, "'" + op + "' needs integer operands, found " + to_string(*l) + " and " + to_string(*r));
        }
        return ValueType{ValueKind::integer, {}};
    }
    return std::nullopt;
  }

  const ExprScope &scope_;
  const std::string &file_;
  std::vector<Diagnostic> &out_;
};

}  // namespace

std::string_view to_string(ValueKind k) noexcept
{
  switch (k) {
    case ValueKind::integer: return "integer";
    case ValueKind::boolean: return "bool";
    case ValueKind::address: return "address";
    case ValueKind::string: return "string";
    case ValueKind::bytes: return "bytes";
    case ValueKind::enumeration: return "enum";
  }
  return "?";
}

std::string to_string(const ValueType &t)
{
  if (t.kind == ValueKind::enumeration) return "enum " + t.enum_name;
  return std::string(to_string(t.kind));
}

std::optional<ValueType> value_type_of(const TypeRef &t)
{
  switch (t.kind) {
    case TypeRef::Kind::scalar:
      switch (t.scalar.kind) {
        case ScalarKind::uint_:
        case ScalarKind::int_: return ValueType{ValueKind::integer, {}};
        case ScalarKind::address: return ValueType{ValueKind::address, {}};
        case ScalarKind::bool_: return ValueType{ValueKind::boolean, {}};
        case ScalarKind::string: return ValueType{ValueKind::string, {}};
        case ScalarKind::bytes: return ValueType{ValueKind::bytes, {}};
      }
      break;
    case TypeRef::Kind::enum_ref: return ValueType{ValueKind::enumeration, t.name};
    default: break;
  }
  return std::nullopt;
}

std::vector<const Statechart *> charts_scoped_to(const Model &model, std::string_view contract)
{
  std::vector<const Statechart *> out;
  for (const auto &c : model.statecharts) {
    if (c.scoped_to == contract) out.push_back(&c);
  }
  return out;
}

const Statechart *chart_with_state(const std::vector<const Statechart *> &charts, std::string_view state)
{
  const Statechart *found = nullptr;
  for (const Statechart *c : charts) {
    if (std::find(c->states.begin(), c->states.end(), state) == c->states.end()) continue;
    if (found) return nullptr;
    found = c;
  }
  return found;
}

const Statechart *chart_with_attr(const std::vector<const Statechart *> &charts, std::string_view attr)
{
  const Statechart *found = nullptr;
  for (const Statechart *c : charts) {
    bool has =
        std::any_of(c->attrs.begin(), c->attrs.end(), [&](const ChartAttr &a) { return a.name == attr; });
    if (!has) continue;
    if (found) return nullptr;
    found = c;
  }
  return found;
}

std::optional<ValueType> check_expr(const ExprRef &e, const ExprScope &scope, const std::string &file,
                                    std::vector<Diagnostic> &out)
{
  return Checker(scope, file, out).check(e);
}

bool check_guard(const ExprRef &e, const ExprScope &scope, const std::string &file,
                 std::vector<Diagnostic> &out)
{
  auto t = check_expr(e, scope, file, out);
  if (!t) return false;
  if (t->kind != ValueKind::boolean) {
    out.push_back(
        Diagnostic{"V015", Severity::error, "guard must be bool, found " + to_string(*t), file, e->loc.span});
    return false;
  }
  return true;
}

}  // namespace boscribe

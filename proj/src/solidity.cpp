#include "boscribe/solidity.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace boscribe
{
namespace
{

using ordered_json = nlohmann::ordered_json;

template <class... Ts>
struct overloaded : Ts...
{
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Same binding strengths as the DSL printer; `x in r` becomes the primary
// `r[x]` and string equality a primary-level keccak comparison.
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

struct Translator
{
  const ExprScope *scope;

  struct Out
  {
    std::string text;
    int prec;
  };

  bool is_string(const ExprRef &e) const
  {
    if (!scope) return std::holds_alternative<expr::StrLit>(e->node);
    std::vector<Diagnostic> ignored;
    auto t = check_expr(e, *scope, "", ignored);
    return t && (t->kind == ValueKind::string || t->kind == ValueKind::bytes);
  }

  static std::string wrap(const Out &o, int need) { return o.prec < need ? "(" + o.text + ")" : o.text; }

  std::optional<Out> run(const ExprRef &e) const
  {
    return std::visit(
        overloaded{
            [](const expr::IntLit &l) -> std::optional<Out> {
              return Out{l.value.str(), l.value < 0 ? 5 : 6};
            },
            [](const expr::BoolLit &l) -> std::optional<Out> { return Out{l.value ? "true" : "false", 6}; },
            [](const expr::StrLit &l) -> std::optional<Out> { return Out{quote_string(l.value), 6}; },
            [](const expr::AddrLit &l) -> std::optional<Out> { return Out{"address(" + l.hex + ")", 6}; },
            [](const expr::BuiltinRef &b) -> std::optional<Out> {
              switch (b.which) {
                case Builtin::sender: return Out{"msg.sender", 6};
                case Builtin::value: return Out{"msg.value", 6};
                case Builtin::now: return Out{"block.timestamp", 6};
              }
              return std::nullopt;
            },
            [](const expr::Name &n) -> std::optional<Out> { return Out{n.name, 6}; },
            [](const expr::EnumLit &l) -> std::optional<Out> { return Out{l.enum_name + "." + l.member, 6}; },
            [&](const expr::Not &n) -> std::optional<Out> {
              auto o = run(n.operand);
              if (!o) return std::nullopt;
              return Out{"!" + wrap(*o, 5), 5};
            },
            [&](const expr::Binary &b) -> std::optional<Out> {
              auto l = run(b.lhs);
              auto r = run(b.rhs);
              if (!l || !r) return std::nullopt;
              if ((b.op == BinaryOp::eq || b.op == BinaryOp::ne) && (is_string(b.lhs) || is_string(b.rhs))) {
                return Out{"keccak256(bytes(" + l->text + ")) " + std::string(to_string(b.op)) +
                               " keccak256(bytes(" + r->text + "))",
                           3};
              }
              const int p = precedence(b.op);
              // comparisons do not chain; left-associative operators bind the right side tighter
              const int lneed = p == 3 ? 4 : p;
              const int rneed = p + 1;
              return Out{wrap(*l, lneed) + " " + std::string(to_string(b.op)) + " " + wrap(*r, rneed), p};
            },
            [&](const expr::InRole &r) -> std::optional<Out> {
              auto m = run(r.member);
              if (!m) return std::nullopt;
              return Out{r.role + "[" + m->text + "]", 6};
            },
            [](const expr::InState &) -> std::optional<Out> { return std::nullopt; },
            [](const expr::Attr &) -> std::optional<Out> { return std::nullopt; },
        },
        e->node);
  }
};

std::string sol_type(const TypeRef &t)
{
  switch (t.kind) {
    case TypeRef::Kind::scalar: return to_string(t.scalar);
    case TypeRef::Kind::user:
    case TypeRef::Kind::enum_ref:
    case TypeRef::Kind::struct_ref: return t.name;
    case TypeRef::Kind::array: return sol_type(t.inner()) + "[]";
    case TypeRef::Kind::map: {
      const std::string key = t.impl == RelImpl::map_uint ? "uint256" : to_string(t.scalar);
      return "mapping(" + key + " => " + sol_type(t.inner()) + ")";
    }
  }
  return "";
}

/// Whether a parameter of this type needs a data location.
bool by_reference(const TypeRef &t, const FlatContract *fc)
{
  switch (t.kind) {
    case TypeRef::Kind::scalar:
      return t.scalar.kind == ScalarKind::string || t.scalar.kind == ScalarKind::bytes;
    case TypeRef::Kind::array:
    case TypeRef::Kind::struct_ref:
    case TypeRef::Kind::map: return true;
    case TypeRef::Kind::enum_ref: return false;
    case TypeRef::Kind::user: return !(fc && fc->enum_def(t.name));
  }
  return false;
}

std::string comment_safe(std::string s)
{
  for (std::size_t p; (p = s.find("*/")) != std::string::npos;) s.replace(p, 2, "* /");
  return s;
}

class ContractWriter
{
 public:
  ContractWriter(const ResolvedModel &r, const ContractDef &c, const GenConfig &cfg)
      : r_(r), c_(c), cfg_(cfg), fc_(r.contract(c.name))
  {}

  std::string body(std::vector<Diagnostic> &warnings)
  {
    warnings_ = &warnings;
    std::string head;
    switch (c_.kind) {
      case ContractKind::contract: head = "contract "; break;
      case ContractKind::library: head = "library "; break;
      case ContractKind::interface: head = "interface "; break;
      case ContractKind::abstract: head = "abstract contract "; break;
    }
    head += c_.name;
    if (!c_.inherits.empty()) {
      head += " is ";
      for (std::size_t i = 0; i < c_.inherits.size(); ++i) head += (i ? ", " : "") + c_.inherits[i];
    }

    sections_.clear();
    structs_and_enums();
    state();
    events();
    modifiers();
    functions();
    if (sections_.empty()) return head + " {}\n";

    std::string out = head + " {\n";
    for (std::size_t i = 0; i < sections_.size(); ++i) {
      if (i) out += "\n";
      out += sections_[i];
    }
    return out + "}\n";
  }

 private:
  ExprScope scope(std::vector<Param> params) const
  {
    return ExprScope{fc_, std::move(params), charts_scoped_to(r_.model, c_.name)};
  }

  std::string param_list(const std::vector<Param> &ps) const
  {
    std::string out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (i) out += ", ";
      out += sol_type(ps[i].type) + (by_reference(ps[i].type, fc_) ? " memory " : " ") + ps[i].name;
    }
    return out;
  }

  void push(std::vector<std::string> lines)
  {
    if (lines.empty()) return;
    std::string s;
    for (const auto &l : lines) s += l.empty() ? "\n" : "    " + l + "\n";
    sections_.push_back(std::move(s));
  }

  void structs_and_enums()
  {
    std::vector<std::string> lines;
    for (const auto &s : c_.structs) {
      lines.push_back("struct " + s.name + " {");
      for (const auto &f : s.fields) lines.push_back("    " + sol_type(f.type) + " " + f.name + ";");
      lines.push_back("}");
    }
    for (const auto &e : c_.enums) {
      std::string l = "enum " + e.name + " { ";
      for (std::size_t i = 0; i < e.members.size(); ++i) l += (i ? ", " : "") + e.members[i];
      lines.push_back(l + " }");
    }
    push(std::move(lines));
  }

  void state()
  {
    std::vector<std::string> lines;
    for (const auto &r : c_.roles) lines.push_back("mapping(address => bool) public " + r.name + ";");
    for (const auto &v : c_.state_vars) {
      const std::string vis = v.visibility == Visibility::public_ ? "public" : "internal";
      lines.push_back(sol_type(v.type) + " " + vis + " " + v.name + ";");
      if (v.type.kind == TypeRef::Kind::map && v.type.impl == RelImpl::map_uint) {
        lines.push_back("uint256 " + vis + " " + v.name + "Count;");
      }
    }
    push(std::move(lines));
  }

  void events()
  {
    std::vector<std::string> lines;
    for (const auto &e : c_.events) {
      std::string l = "event " + e.name + "(";
      for (std::size_t i = 0; i < e.params.size(); ++i) {
        l += (i ? ", " : "") + sol_type(e.params[i].type) + " " + e.params[i].name;
      }
      lines.push_back(l + ");");
    }
    push(std::move(lines));
  }

  void modifiers()
  {
    for (const auto &m : c_.modifiers) {
      std::vector<std::string> lines;
      lines.push_back("modifier " + m.name + "(" + param_list(m.params) + ") {");
      const ExprScope sc = scope(m.params);
      if (auto req = guard_to_require(m.guard, fc_ ? &sc : nullptr)) {
        lines.push_back("    " + *req);
      } else {
        lines.push_back("    require(false /* TODO: " + comment_safe(to_string(m.guard)) + " */);");
        warnings_->push_back(Diagnostic{"W002", Severity::warning,
                                        "guard of modifier '" + m.name +
                                            "' uses statechart predicates and "
                                            "has no Solidity translation",
                                        r_.model.file, m.loc.span});
      }
      lines.push_back("    _;");
      lines.push_back("}");
      push(std::move(lines));
    }
  }

  std::string returns_clause(const FunctionDef &f) const
  {
    if (f.returns.empty()) return "";
    std::string out = " returns (";
    for (std::size_t i = 0; i < f.returns.size(); ++i) {
      out += (i ? ", " : "") + sol_type(f.returns[i]) + (by_reference(f.returns[i], fc_) ? " memory" : "");
    }
    return out + ")";
  }

  std::string modifier_calls(const FunctionDef &f) const
  {
    std::string out;
    for (const auto &name : f.applied_modifiers) {
      out += " " + name;
      const ModifierDef *m = fc_ ? fc_->modifier(name) : nullptr;
      if (m && !m->params.empty()) {
        out += "(";
        for (std::size_t i = 0; i < m->params.size(); ++i) out += (i ? ", " : "") + m->params[i].name;
        out += ")";
      }
    }
    return out;
  }

  std::vector<std::string> statements(const FunctionDef &f) const
  {
    std::vector<std::string> lines;
    const ExprScope sc = scope(f.params);
    std::set<std::string> assigned;
    for (const auto &a : f.sets) {
      assigned.insert(a.target);
      auto value = expr_to_solidity(a.value, fc_ ? &sc : nullptr);
      const std::string v = value.value_or("0 /* TODO: " + comment_safe(to_string(a.value)) + " */");
      if (fc_ && fc_->has_role(a.target)) {
        lines.push_back(a.target + "[" + v + "] = " + (a.op == AssignOp::add ? "true" : "false") + ";");
      } else {
        lines.push_back(a.target + " " + std::string(to_string(a.op)) + " " + v + ";");
      }
    }
    const auto &e = f.effects;
    for (const auto &v : e.iterates) {
      const StateVar *sv = fc_ ? fc_->state_var(v) : nullptr;
      if (sv && sv->type.kind == TypeRef::Kind::map && sv->type.impl == RelImpl::map_uint) {
        lines.push_back("// TODO: iterate " + v + " over keys 0 .. " + v + "Count - 1");
      } else {
        lines.push_back("// TODO: iterate " + v);
      }
    }
    for (const auto &v : e.reads) lines.push_back("// TODO: read " + v);
    for (const auto &v : e.writes) {
      if (!assigned.contains(v)) lines.push_back("// TODO: write " + v);
    }
    for (const auto &ev : e.emits) {
      std::string args;
      if (const EventDef *def = fc_ ? fc_->event(ev) : nullptr) {
        for (std::size_t i = 0; i < def->params.size(); ++i) args += (i ? ", " : "") + def->params[i].name;
      }
      lines.push_back("// TODO: emit " + ev + "(" + args + ");");
    }
    for (const auto &c : e.creates) lines.push_back("// TODO: create a " + c + " instance");
    if (e.transfers_eth) lines.push_back("// TODO: transfer Ether");
    if (e.destroys) {
      lines.push_back("// TODO: selfdestruct(payable(msg.sender)); deployed code stays on the chain and");
      lines.push_back("// selfdestruct is deprecated, so consider disabling the contract instead");
    }
    if (!f.returns.empty()) {
      std::string sig;
      for (std::size_t i = 0; i < f.returns.size(); ++i) sig += (i ? ", " : "") + sol_type(f.returns[i]);
      lines.push_back("// TODO: return (" + sig + ")");
    }
    return lines;
  }

  void functions()
  {
    const bool iface = c_.kind == ContractKind::interface;
    for (const auto &f : c_.functions) {
      std::vector<std::string> lines;
      if (cfg_.emit_natspec && !f.note.empty()) lines.push_back("/// @notice " + f.note);

      std::string sig;
      if (f.is_constructor) {
        sig = "constructor(" + param_list(f.params) + ")";
      } else if (f.name == "receive" && f.params.empty() && f.payable) {
        sig = "receive() external";
      } else {
        sig = "function " + f.name + "(" + param_list(f.params) + ") " + (iface ? "external" : "public");
      }
      if (f.mutability == Mutability::view) sig += " view";
      if (f.mutability == Mutability::pure) sig += " pure";
      if (f.payable) sig += " payable";
      if (!iface) sig += modifier_calls(f);
      sig += returns_clause(f);

      const bool abstract_decl = iface;
      if (abstract_decl) {
        lines.push_back(sig + ";");
      } else {
        auto body = statements(f);
        if (body.empty()) {
          lines.push_back(sig + " {}");
        } else {
          lines.push_back(sig + " {");
          for (auto &l : body) lines.push_back("    " + l);
          lines.push_back("}");
        }
      }
      push(std::move(lines));
    }
  }

  const ResolvedModel &r_;
  const ContractDef &c_;
  const GenConfig &cfg_;
  const FlatContract *fc_;
  std::vector<Diagnostic> *warnings_ = nullptr;
  std::vector<std::string> sections_;
};

std::string header(const GenConfig &cfg)
{
  return "// SPDX-License-Identifier: UNLICENSED\n// generated by boscribe\npragma solidity " +
         cfg.pragma_version + ";\n";
}

ordered_json abi_param(const std::string &name, const TypeRef &t, const FlatContract &fc)
{
  ordered_json p;
  p["name"] = name;
  std::function<std::string(const TypeRef &, ordered_json &)> type = [&](const TypeRef &ty,
                                                                         ordered_json &holder) {
    switch (ty.kind) {
      case TypeRef::Kind::scalar: return to_string(ty.scalar);
      case TypeRef::Kind::enum_ref: return std::string("uint8");
      case TypeRef::Kind::array: return type(ty.inner(), holder) + "[]";
      case TypeRef::Kind::struct_ref:
      case TypeRef::Kind::user: {
        if (fc.enum_def(ty.name)) return std::string("uint8");
        const StructDef *s = fc.struct_def(ty.name);
        ordered_json comps = ordered_json::array();
        if (s) {
          for (const auto &f : s->fields) comps.push_back(abi_param(f.name, f.type, fc));
        }
        holder["components"] = comps;
        return std::string("tuple");
      }
      case TypeRef::Kind::map: return std::string("mapping");
    }
    return std::string();
  };
  ordered_json extra = ordered_json::object();
  p["type"] = type(t, extra);
  if (extra.contains("components")) p["components"] = extra["components"];
  return p;
}

std::string mutability(const FunctionDef &f)
{
  if (f.payable) return "payable";
  switch (f.mutability) {
    case Mutability::view: return "view";
    case Mutability::pure: return "pure";
    case Mutability::mutating: return "nonpayable";
  }
  return "nonpayable";
}

}  // namespace

std::optional<std::string> expr_to_solidity(const ExprRef &e, const ExprScope *scope)
{
  auto o = Translator{scope}.run(e);
  if (!o) return std::nullopt;
  return o->text;
}

std::optional<std::string> guard_to_require(const ExprRef &guard, const ExprScope *scope)
{
  auto t = expr_to_solidity(guard, scope);
  if (!t) return std::nullopt;
  return "require(" + *t + ");";
}

GeneratedSource emit_contract(const ResolvedModel &resolved, std::string_view contract,
                              const GenConfig &config)
{
  const ContractDef *c = resolved.model.contract(contract);
  if (!c) throw Error("unknown contract '" + std::string(contract) + "'");
  GeneratedSource out;
  out.text = header(config) + "\n";
  if (!c->inherits.empty()) {
    for (const auto &b : c->inherits) out.text += "import \"./" + b + ".sol\";\n";
    out.text += "\n";
  }
  out.text += ContractWriter(resolved, *c, config).body(out.warnings);
  return out;
}

std::string emit_abi(const ResolvedModel &resolved, std::string_view contract)
{
  if (!resolved.model.contract(contract)) throw Error("unknown contract '" + std::string(contract) + "'");
  const FlatContract *fc = resolved.contract(contract);
  if (!fc) throw Error("contract '" + std::string(contract) + "' did not resolve");

  ordered_json abi = ordered_json::array();
  auto inputs = [&](const std::vector<Param> &ps) {
    ordered_json in = ordered_json::array();
    for (const auto &p : ps) in.push_back(abi_param(p.name, p.type, *fc));
    return in;
  };
  if (const FunctionDef *ctor = fc->constructor()) {
    ordered_json e;
    e["type"] = "constructor";
    e["inputs"] = inputs(ctor->params);
    e["stateMutability"] = mutability(*ctor);
    abi.push_back(e);
  }
  for (const auto &ff : fc->functions) {
    const FunctionDef &f = ff.def;
    if (f.is_constructor) continue;
    ordered_json e;
    if (f.name == "receive" && f.params.empty() && f.payable) {
      e["type"] = "receive";
      e["stateMutability"] = "payable";
      abi.push_back(e);
      continue;
    }
    e["name"] = f.name;
    e["type"] = "function";
    e["inputs"] = inputs(f.params);
    ordered_json outs = ordered_json::array();
    for (const auto &r : f.returns) outs.push_back(abi_param("", r, *fc));
    e["outputs"] = outs;
    e["stateMutability"] = mutability(f);
    abi.push_back(e);
  }
  for (const auto &ev : fc->events) {
    ordered_json e;
    e["name"] = ev.def.name;
    e["type"] = "event";
    ordered_json in = ordered_json::array();
    for (const auto &p : ev.def.params) {
      auto j = abi_param(p.name, p.type, *fc);
      j["indexed"] = false;
      in.push_back(j);
    }
    e["inputs"] = in;
    abi.push_back(e);
  }
  return abi.dump(2) + "\n";
}

Generation emit_all(const ResolvedModel &resolved, const GenConfig &config)
{
  Generation gen;
  const Model &m = resolved.model;
  if (config.one_file_per_contract) {
    for (const auto &c : m.contracts) {
      auto src = emit_contract(resolved, c.name, config);
      gen.files.push_back({c.name + ".sol", std::move(src.text)});
      gen.warnings.insert(gen.warnings.end(), src.warnings.begin(), src.warnings.end());
    }
  } else {
    // bases before the contracts inheriting them, otherwise declaration order
    std::vector<std::string> order;
    std::set<std::string> placed;
    std::function<void(const ContractDef &)> place = [&](const ContractDef &c) {
      if (!placed.insert(c.name).second) return;
      for (const auto &b : c.inherits) {
        if (const ContractDef *d = m.contract(b)) place(*d);
      }
      order.push_back(c.name);
    };
    for (const auto &c : m.contracts) place(c);
    std::string text = header(config);
    for (const auto &name : order) {
      text += "\n";
      text += ContractWriter(resolved, *m.contract(name), config).body(gen.warnings);
    }
    gen.files.push_back({(m.name.empty() ? std::string("model") : m.name) + ".sol", std::move(text)});
  }
  for (const auto &c : m.contracts) {
    if (resolved.contract(c.name)) gen.files.push_back({c.name + ".abi.json", emit_abi(resolved, c.name)});
  }
  sort_diagnostics(gen.warnings);
  return gen;
}

}  // namespace boscribe

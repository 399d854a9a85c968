#include "boscribe/resolve.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace boscribe
{
namespace
{

template <typename T>
const T *find_flat(const std::vector<Flat<T>> &items, std::string_view name)
{
  auto it = std::find_if(items.begin(), items.end(), [&](const Flat<T> &f) { return f.def.name == name; });
  return it == items.end() ? nullptr : &it->def;
}

enum class Mark
{
  none,
  active,
  done,
};

struct Linearizer
{
  const Model &model;
  std::map<std::string, Mark, std::less<>> marks;
  std::map<std::string, std::vector<std::string>, std::less<>> memo;
  std::set<std::string, std::less<>> broken;  // unknown base or cycle reachable
  std::vector<std::string> stack;

  /// Detected cycles, each as the stack slice that closes it.
  std::vector<std::vector<std::string>> cycles;
  /// (contract, missing base)
  std::vector<std::pair<std::string, std::string>> unknown_bases;

  bool visit(const std::string &name)
  {
    if (auto it = marks.find(name); it != marks.end()) {
      if (it->second == Mark::active) {
        auto from = std::find(stack.begin(), stack.end(), name);
        cycles.emplace_back(from, stack.end());
        return false;
      }
      return !broken.contains(name);
    }
    const ContractDef *c = model.contract(name);
    marks[name] = Mark::active;
    stack.push_back(name);
    bool ok = true;
    std::vector<std::string> order;
    for (const auto &base : c->inherits) {
      if (!model.contract(base)) {
        unknown_bases.emplace_back(name, base);
        ok = false;
        continue;
      }
      if (!visit(base)) {
        ok = false;
        continue;
      }
      for (const auto &n : memo[base]) {
        if (std::find(order.begin(), order.end(), n) == order.end()) order.push_back(n);
      }
    }
    stack.pop_back();
    marks[name] = Mark::done;
    if (!ok) {
      broken.insert(name);
      return false;
    }
    order.push_back(name);
    memo[name] = std::move(order);
    return true;
  }
};

Diagnostic make_diag(const Model &m, std::string code, std::string message, Span span)
{
  return Diagnostic{std::move(code), Severity::error, std::move(message), m.file, span};
}

void classify(TypeRef &t, const FlatContract &fc)
{
  if (t.kind == TypeRef::Kind::user) {
    if (fc.struct_def(t.name)) {
      t.kind = TypeRef::Kind::struct_ref;
    } else if (fc.enum_def(t.name)) {
      t.kind = TypeRef::Kind::enum_ref;
    }
  }
  for (auto &e : t.element) classify(e, fc);
}

void classify_params(std::vector<Param> &ps, const FlatContract &fc)
{
  for (auto &p : ps) classify(p.type, fc);
}

}  // namespace

const StateVar *FlatContract::state_var(std::string_view n) const { return find_flat(state_vars, n); }
const StructDef *FlatContract::struct_def(std::string_view n) const { return find_flat(structs, n); }
const EnumDef *FlatContract::enum_def(std::string_view n) const { return find_flat(enums, n); }
const ModifierDef *FlatContract::modifier(std::string_view n) const { return find_flat(modifiers, n); }
const EventDef *FlatContract::event(std::string_view n) const { return find_flat(events, n); }
const FunctionDef *FlatContract::function(std::string_view n) const
{
  auto it = std::find_if(functions.begin(), functions.end(), [&](const Flat<FunctionDef> &f) {
    return !f.def.is_constructor && f.def.name == n;
  });
  return it == functions.end() ? nullptr : &it->def;
}
const FunctionDef *FlatContract::constructor() const
{
  auto it = std::find_if(functions.begin(), functions.end(),
                         [](const Flat<FunctionDef> &f) { return f.def.is_constructor; });
  return it == functions.end() ? nullptr : &it->def;
}
bool FlatContract::has_role(std::string_view n) const { return find_flat(roles, n) != nullptr; }

const FlatContract *ResolvedModel::contract(std::string_view name) const
{
  auto it =
      std::find_if(contracts.begin(), contracts.end(), [&](const FlatContract &c) { return c.name == name; });
  return it == contracts.end() ? nullptr : &*it;
}

ResolveResult resolve(const Model &model)
{
  ResolveResult result;
  result.resolved.model = model;
  auto &diags = result.diagnostics;

  Linearizer lin{model, {}, {}, {}, {}, {}, {}};
  for (const auto &c : model.contracts) {
    if (!lin.marks.contains(c.name)) lin.visit(c.name);
  }

  for (const auto &[contract, base] : lin.unknown_bases) {
    diags.push_back(make_diag(model, "V001",
                              "contract '" + contract + "' inherits unknown contract '" + base + "'",
                              model.contract(contract)->loc.span));
  }
  std::set<std::vector<std::string>> seen_cycles;
  for (auto cycle : lin.cycles) {
    // report each cycle once, at its first-declared member
    auto decl_index = [&](const std::string &n) {
      return std::find_if(model.contracts.begin(), model.contracts.end(),
                          [&](const ContractDef &c) { return c.name == n; }) -
             model.contracts.begin();
    };
    auto key = cycle;
    std::sort(key.begin(), key.end());
    if (!seen_cycles.insert(key).second) continue;
    const auto first = *std::min_element(cycle.begin(), cycle.end(), [&](const auto &a, const auto &b) {
      return decl_index(a) < decl_index(b);
    });
    std::rotate(cycle.begin(), std::find(cycle.begin(), cycle.end(), first), cycle.end());
    std::string path;
    for (const auto &n : cycle) path += n + " -> ";
    path += first;
    diags.push_back(make_diag(model, "V002", "inheritance cycle: " + path, model.contract(first)->loc.span));
  }

  for (const auto &decl : model.contracts) {
    if (lin.broken.contains(decl.name) || !lin.memo.contains(decl.name)) continue;
    FlatContract fc;
    fc.name = decl.name;
    fc.kind = decl.kind;
    fc.linearization = lin.memo[decl.name];

    // one namespace for every member kind
    std::map<std::string, std::string, std::less<>> owner;
    bool collided = false;
    auto claim = [&](const std::string &name, const std::string &origin, Span span) {
      auto [it, inserted] = owner.emplace(name, origin);
      if (inserted) return true;
      std::string msg = "member '" + name + "' of '" + decl.name + "' is declared ";
      if (it->second == origin) {
        msg += "twice in '" + origin + "'";
      } else {
        msg += "in both '" + it->second + "' and '" + origin + "'";
      }
      diags.push_back(make_diag(model, "V014", msg, span));
      collided = true;
      return false;
    };

    for (const auto &base_name : fc.linearization) {
      const ContractDef &src = *model.contract(base_name);
      for (const auto &s : src.structs) {
        if (claim(s.name, base_name, s.loc.span)) fc.structs.push_back({s, base_name});
      }
      for (const auto &e : src.enums) {
        if (claim(e.name, base_name, e.loc.span)) fc.enums.push_back({e, base_name});
      }
      for (const auto &r : src.roles) {
        if (claim(r.name, base_name, r.loc.span)) fc.roles.push_back({r, base_name});
      }
      for (const auto &v : src.state_vars) {
        if (claim(v.name, base_name, v.loc.span)) fc.state_vars.push_back({v, base_name});
      }
      for (const auto &e : src.events) {
        if (claim(e.name, base_name, e.loc.span)) fc.events.push_back({e, base_name});
      }
      for (const auto &m : src.modifiers) {
        if (claim(m.name, base_name, m.loc.span)) fc.modifiers.push_back({m, base_name});
      }
      for (const auto &f : src.functions) {
        if (f.is_constructor) {
          if (base_name == decl.name) fc.functions.push_back({f, base_name});
          continue;
        }
        if (claim(f.name, base_name, f.loc.span)) fc.functions.push_back({f, base_name});
      }
    }
    if (collided) continue;

    for (auto &v : fc.state_vars) classify(v.def.type, fc);
    for (auto &s : fc.structs) classify_params(s.def.fields, fc);
    for (auto &m : fc.modifiers) classify_params(m.def.params, fc);
    for (auto &e : fc.events) classify_params(e.def.params, fc);
    for (auto &f : fc.functions) {
      classify_params(f.def.params, fc);
      for (auto &r : f.def.returns) classify(r, fc);
    }
    result.resolved.contracts.push_back(std::move(fc));
  }

  sort_diagnostics(diags);
  return result;
}

MemberListing flattened_members(const ResolvedModel &resolved, std::string_view contract)
{
  const FlatContract *fc = resolved.contract(contract);
  if (!fc) throw Error("unknown or unresolved contract '" + std::string(contract) + "'");
  MemberListing out;
  for (const auto &v : fc->state_vars) out.state_vars.push_back(v.def.name);
  for (const auto &m : fc->modifiers) out.modifiers.push_back(m.def.name);
  for (const auto &e : fc->events) out.events.push_back(e.def.name);
  for (const auto &f : fc->functions) out.functions.push_back(f.def.name);
  return out;
}

std::vector<std::string> linearize(const ResolvedModel &resolved, std::string_view contract)
{
  if (const FlatContract *fc = resolved.contract(contract)) return fc->linearization;
  if (!resolved.model.contract(contract)) {
    throw Error("unknown contract '" + std::string(contract) + "'");
  }
  auto order = linearize(resolved.model, contract);
  if (!order) {
    throw Error("V002: contract '" + std::string(contract) +
                "' cannot be linearized (inheritance cycle or unknown base)");
  }
  return *order;
}

std::optional<std::vector<std::string>> linearize(const Model &model, std::string_view contract)
{
  if (!model.contract(contract)) return std::nullopt;
  Linearizer lin{model, {}, {}, {}, {}, {}, {}};
  if (!lin.visit(std::string(contract))) return std::nullopt;
  return lin.memo[std::string(contract)];
}

}  // namespace boscribe

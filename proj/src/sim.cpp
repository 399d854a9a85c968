#include "boscribe/sim.hpp"

#include "boscribe/parser.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <limits>
#include <sstream>

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

/// Unwinds a transaction. Reverts are charged, errors are not.
struct Abort
{
  Outcome outcome;
};

[[noreturn]] void revert(std::string reason) { throw Abort{Outcome::revert(std::move(reason))}; }
[[noreturn]] void fail(std::string code) { throw Abort{Outcome::error(std::move(code))}; }

bool fits(const ScalarType &t, const Int &v)
{
  const unsigned bits = t.bits == 0 ? 256 : t.bits;
  if (t.kind == ScalarKind::uint_) return v >= 0 && v < (Int(1) << bits);
  if (t.kind == ScalarKind::int_) return v >= -(Int(1) << (bits - 1)) && v < (Int(1) << (bits - 1));
  return true;
}

Value default_value(const ValueType &t, const FlatContract &fc)
{
  switch (t.kind) {
    case ValueKind::integer: return Value::of_int(0);
    case ValueKind::boolean: return Value::of_bool(false);
    case ValueKind::address: return Value::of_address("");
    case ValueKind::string: return Value::of_string("");
    case ValueKind::bytes: return {ValueKind::bytes, 0, false, {}};
    case ValueKind::enumeration: {
      const EnumDef *e = fc.enum_def(t.enum_name);
      return {ValueKind::enumeration, 0, false, e && !e->members.empty() ? e->members.front() : ""};
    }
  }
  return {};
}

/// Scenario literal bound to a parameter. Collections and structs are
/// accepted by shape but not simulated, so they bind to nothing.
std::optional<Value> bind(const Param &p, const Literal &lit, const Scenario &sc, const FlatContract &fc)
{
  const auto vt = value_type_of(p.type);
  if (!vt) {
    if (!std::holds_alternative<Literal::List>(lit.value)) fail("bad_argument");
    return std::nullopt;
  }
  auto bad = []() -> Value { fail("bad_argument"); };
  return std::visit(
      overloaded{
          [&](const Int &i) -> Value {
            if (vt->kind == ValueKind::integer) {
              if (!fits(p.type.scalar, i)) fail("overflow");
              return Value::of_int(i);
            }
            if (vt->kind == ValueKind::enumeration) {
              const EnumDef *e = fc.enum_def(vt->enum_name);
              if (!e || i < 0 || i >= Int(e->members.size())) return bad();
              return {ValueKind::enumeration, 0, false, e->members[i.convert_to<std::size_t>()]};
            }
            return bad();
          },
          [&](bool b) -> Value { return vt->kind == ValueKind::boolean ? Value::of_bool(b) : bad(); },
          [&](const std::string &s) -> Value {
            if (vt->kind == ValueKind::string) return Value::of_string(s);
            if (vt->kind == ValueKind::bytes) return {ValueKind::bytes, 0, false, s};
            return bad();
          },
          [&](const Literal::Address &a) -> Value {
            if (vt->kind == ValueKind::enumeration) {
              const EnumDef *e = fc.enum_def(vt->enum_name);
              if (e && std::find(e->members.begin(), e->members.end(), a.id) != e->members.end())
                return {ValueKind::enumeration, 0, false, a.id};
              return bad();
            }
            const bool hex = a.id.rfind("0x", 0) == 0;
            if (vt->kind == ValueKind::bytes && hex) return {ValueKind::bytes, 0, false, a.id};
            if (vt->kind != ValueKind::address || (!hex && !sc.participant(a.id))) return bad();
            return Value::of_address(a.id);
          },
          [&](const Literal::List &) -> Value { return bad(); },
      },
      lit.value);
}

struct ChartCtx
{
  const std::vector<const Statechart *> *charts = nullptr;
  std::string contract_alias;
};

MachineState initial_machine(const Statechart &chart)
{
  MachineState m{chart.initial, {}};
  for (const auto &a : chart.attrs) m.attrs[a.name] = a.initial;
  return m;
}

/// Evaluation context of one expression inside one contract instance.
struct Env
{
  const FlatContract &fc;
  const InstanceState &inst;
  const std::map<std::string, Value> &params;
  const World &world;
  ChartCtx charts;
  std::string sender;
  Int value;
  Int now;
};

Value eval(const ExprRef &e, const Env &env);

Int as_int(const Value &v)
{
  if (v.kind != ValueKind::integer) fail("eval");
  return v.integer;
}

bool as_bool(const Value &v)
{
  if (v.kind != ValueKind::boolean) fail("eval");
  return v.boolean;
}

std::string as_address(const Value &v)
{
  if (v.kind != ValueKind::address) fail("eval");
  return v.text;
}

const MachineState machine_of(const Env &env, const Statechart &chart, const std::string &actor)
{
  const auto it = env.world.machines.find({chart.name, env.charts.contract_alias, actor});
  return it == env.world.machines.end() ? initial_machine(chart) : it->second;
}

Value eval(const ExprRef &e, const Env &env)
{
  return std::visit(
      overloaded{
          [](const expr::IntLit &n) { return Value::of_int(n.value); },
          [](const expr::BoolLit &b) { return Value::of_bool(b.value); },
          [](const expr::StrLit &s) { return Value::of_string(s.value); },
          [](const expr::AddrLit &a) { return Value::of_address(a.hex); },
          [&](const expr::BuiltinRef &b) {
            switch (b.which) {
              case Builtin::sender: return Value::of_address(env.sender);
              case Builtin::value: return Value::of_int(env.value);
              case Builtin::now: return Value::of_int(env.now);
            }
            return Value{};
          },
          [&](const expr::Name &n) {
            if (auto it = env.params.find(n.name); it != env.params.end()) return it->second;
            if (auto it = env.inst.storage.find(n.name); it != env.inst.storage.end()) return it->second;
            fail("eval");
          },
          [](const expr::EnumLit &l) { return Value{ValueKind::enumeration, 0, false, l.member}; },
          [&](const expr::Not &n) { return Value::of_bool(!as_bool(eval(n.operand, env))); },
          [&](const expr::Binary &b) {
            if (b.op == BinaryOp::logical_and)
              return Value::of_bool(as_bool(eval(b.lhs, env)) && as_bool(eval(b.rhs, env)));
            if (b.op == BinaryOp::logical_or)
              return Value::of_bool(as_bool(eval(b.lhs, env)) || as_bool(eval(b.rhs, env)));
            const Value l = eval(b.lhs, env);
            const Value r = eval(b.rhs, env);
            switch (b.op) {
              case BinaryOp::eq: return Value::of_bool(l == r);
              case BinaryOp::ne: return Value::of_bool(l != r);
              case BinaryOp::lt: return Value::of_bool(as_int(l) < as_int(r));
              case BinaryOp::le: return Value::of_bool(as_int(l) <= as_int(r));
              case BinaryOp::gt: return Value::of_bool(as_int(l) > as_int(r));
              case BinaryOp::ge: return Value::of_bool(as_int(l) >= as_int(r));
              case BinaryOp::add: return Value::of_int(as_int(l) + as_int(r));
              case BinaryOp::sub: return Value::of_int(as_int(l) - as_int(r));
              default: break;
            }
            fail("eval");
          },
          [&](const expr::InRole &r) {
            const std::string who = as_address(eval(r.member, env));
            const auto it = env.inst.role_sets.find(r.role);
            if (it == env.inst.role_sets.end()) fail("eval");
            return Value::of_bool(it->second.count(who) > 0);
          },
          [&](const expr::InState &s) {
            const std::string who = as_address(eval(s.actor, env));
            const Statechart *chart =
                env.charts.charts ? chart_with_state(*env.charts.charts, s.state) : nullptr;
            if (!chart) fail("eval");
            return Value::of_bool(machine_of(env, *chart, who).current == s.state);
          },
          [&](const expr::Attr &a) {
            const std::string who = as_address(eval(a.actor, env));
            const Statechart *chart =
                env.charts.charts ? chart_with_attr(*env.charts.charts, a.attr) : nullptr;
            if (!chart) fail("eval");
            const MachineState m = machine_of(env, *chart, who);
            const auto it = m.attrs.find(a.attr);
            if (it == m.attrs.end()) fail("eval");
            return Value::of_int(it->second);
          },
      },
      e->node);
}

/// One transaction over a working copy of the world.
class Tx
{
 public:
  Tx(World &w, const ResolvedModel &resolved, const Scenario &sc, const MessageSpec &msg)
      : w_(w), resolved_(resolved), sc_(sc), msg_(msg)
  {}

  void run(Int now)
  {
    now_ = std::move(now);
    from_ = sc_.participant(msg_.from);
    to_ = sc_.participant(msg_.to);
    if (!from_ || !to_) fail("unknown_participant");
    if (msg_.value < 0) fail("bad_argument");
    if (from_->is_contract()) live_instance(from_->alias);

    switch (msg_.kind) {
      case MessageKind::create: create(); break;
      case MessageKind::call: call(false); break;
      case MessageKind::view_call: call(true); break;
      case MessageKind::eth_transfer: transfer(); break;
    }
  }

 private:
  InstanceState &live_instance(const std::string &alias)
  {
    const auto it = w_.instances.find(alias);
    if (it == w_.instances.end()) fail("unknown_instance");
    if (it->second.destroyed) fail("destroyed");
    return it->second;
  }

  const FlatContract &flat(const InstanceState &inst) const
  {
    const FlatContract *fc = resolved_.contract(inst.contract);
    if (!fc) fail("unknown_contract");
    return *fc;
  }

  std::map<std::string, Value> bind_args(const FunctionDef &fn, const FlatContract &fc) const
  {
    if (msg_.args.size() != fn.params.size()) fail("bad_argument");
    std::map<std::string, Value> out;
    for (std::size_t i = 0; i < fn.params.size(); ++i)
      if (auto v = bind(fn.params[i], msg_.args[i], sc_, fc)) out[fn.params[i].name] = *v;
    return out;
  }

  void check_funds() const
  {
    if (w_.balances[from_->alias] < msg_.value) revert("insufficient_balance");
  }

  Env env(const FlatContract &fc, const InstanceState &inst, const std::map<std::string, Value> &params) const
  {
    return Env{fc, inst, params, w_, {&charts_, to_->alias}, from_->alias, msg_.value, now_};
  }

  void check_modifiers(const FunctionDef &fn, const FlatContract &fc, const InstanceState &inst,
                       const std::map<std::string, Value> &params) const
  {
    for (const auto &name : fn.applied_modifiers) {
      const ModifierDef *m = fc.modifier(name);
      if (!m) fail("unknown_modifier");
      if (m->guard && !as_bool(eval(m->guard, env(fc, inst, params)))) revert(name);
    }
  }

  void apply_sets(const FunctionDef &fn, const FlatContract &fc, InstanceState &inst,
                  const std::map<std::string, Value> &params)
  {
    for (const auto &a : fn.sets) {
      const Value v = eval(a.value, env(fc, inst, params));
      if (fc.has_role(a.target)) {
        auto &members = inst.role_sets[a.target];
        if (a.op == AssignOp::add)
          members.insert(as_address(v));
        else if (a.op == AssignOp::sub)
          members.erase(as_address(v));
        else
          fail("eval");
        continue;
      }
      const StateVar *var = fc.state_var(a.target);
      const auto slot = inst.storage.find(a.target);
      if (!var || slot == inst.storage.end()) fail("eval");
      Value next = v;
      if (a.op != AssignOp::assign) {
        const Int cur = as_int(slot->second);
        next = Value::of_int(a.op == AssignOp::add ? cur + as_int(v) : cur - as_int(v));
      }
      if (next.kind != slot->second.kind) fail("eval");
      if (next.kind == ValueKind::integer && !fits(var->type.scalar, next.integer)) fail("overflow");
      slot->second = std::move(next);
    }
  }

  bool is_subject(const Statechart &chart, const InstanceState &inst) const
  {
    if (auto it = inst.role_sets.find(chart.subject); it != inst.role_sets.end())
      return it->second.count(from_->alias) > 0;
    if (resolved_.model.actor(chart.subject)) return from_->ref == chart.subject;
    return to_string(from_->kind) == chart.subject;
  }

  /// Fires the statechart transitions triggered by `fn`, in chart order.
  void step_charts(const FunctionDef &fn, const FlatContract &fc, const std::map<std::string, Value> &params)
  {
    for (const Statechart *chart : charts_) {
      const bool triggered = std::any_of(chart->transitions.begin(), chart->transitions.end(),
                                         [&](const auto &t) { return t.trigger == fn.name; });
      if (!triggered || !is_subject(*chart, w_.instances.at(to_->alias))) continue;
      const MachineKey self{chart->name, to_->alias, from_->alias};
      const MachineState current = w_.machines.count(self) ? w_.machines.at(self) : initial_machine(*chart);
      const TransitionDef *fired = nullptr;
      for (const auto &t : chart->transitions) {
        if (t.trigger != fn.name || t.source != current.current) continue;
        if (!t.guard || as_bool(eval(t.guard, env(fc, w_.instances.at(to_->alias), params)))) {
          fired = &t;
          break;
        }
      }
      if (!fired) revert(chart->name);

      for (const auto &act : fired->actions) {
        std::string who = from_->alias;
        if (act.subject != "self") {
          const auto p = params.find(act.subject);
          if (p == params.end()) fail("eval");
          who = as_address(p->second);
        }
        const Value v = eval(act.value, env(fc, w_.instances.at(to_->alias), params));
        const MachineKey key{chart->name, to_->alias, who};
        if (!w_.machines.count(key)) w_.machines[key] = initial_machine(*chart);
        Int &slot = w_.machines[key].attrs[act.attr];
        switch (act.op) {
          case AssignOp::assign: slot = as_int(v); break;
          case AssignOp::add: slot += as_int(v); break;
          case AssignOp::sub: slot -= as_int(v); break;
        }
      }
      if (!w_.machines.count(self)) w_.machines[self] = current;
      w_.machines[self].current = fired->target;
    }
  }

  void move_value()
  {
    w_.balances[from_->alias] -= msg_.value;
    w_.balances[to_->alias] += msg_.value;
  }

  void create()
  {
    if (!to_->is_contract()) fail("not_a_contract");
    if (w_.instances.count(to_->alias)) fail("already_created");
    const FlatContract *fc = resolved_.contract(to_->ref);
    if (!fc) fail("unknown_contract");
    if (fc->kind != ContractKind::contract) fail("not_deployable");
    static const FunctionDef implicit_ctor{};
    const FunctionDef &ctor = fc->constructor() ? *fc->constructor() : implicit_ctor;
    const auto params = bind_args(ctor, *fc);
    check_funds();
    if (msg_.value > 0 && !ctor.payable) revert("not_payable");

    InstanceState inst{fc->name, {}, {}, false};
    for (const auto &v : fc->state_vars)
      if (auto vt = value_type_of(v.def.type)) inst.storage[v.def.name] = default_value(*vt, *fc);
    for (const auto &r : fc->roles) inst.role_sets[r.def.name];
    InstanceState &live = w_.instances[to_->alias] = std::move(inst);
    charts_ = charts_scoped_to(resolved_.model, fc->name);

    // Parameterless base constructors run implicitly, bases first.
    const std::map<std::string, Value> none;
    for (std::size_t i = 0; i + 1 < fc->linearization.size(); ++i) {
      const ContractDef *base = resolved_.model.contract(fc->linearization[i]);
      const FunctionDef *bc = base ? base->constructor() : nullptr;
      if (bc && bc->params.empty()) apply_sets(*bc, *fc, live, none);
    }
    check_modifiers(ctor, *fc, live, params);
    apply_sets(ctor, *fc, live, params);
    move_value();
  }

  void call(bool view)
  {
    if (!to_->is_contract()) fail("not_a_contract");
    InstanceState &inst = live_instance(to_->alias);
    const FlatContract &fc = flat(inst);
    const FunctionDef *fn = msg_.function ? fc.function(*msg_.function) : nullptr;
    if (!fn) fail("unknown_function");
    if (view && fn->mutability == Mutability::mutating) fail("not_view");
    const auto params = bind_args(*fn, fc);
    check_funds();
    if (msg_.value > 0 && !fn->payable) revert("not_payable");
    charts_ = charts_scoped_to(resolved_.model, fc.name);
    check_modifiers(*fn, fc, inst, params);
    if (view) return;
    step_charts(*fn, fc, params);
    apply_sets(*fn, fc, w_.instances.at(to_->alias), params);
    if (fn->effects.destroys) w_.instances.at(to_->alias).destroyed = true;
    move_value();
  }

  void transfer()
  {
    if (!to_->is_contract()) {
      check_funds();
      move_value();
      return;
    }
    InstanceState &inst = live_instance(to_->alias);
    const FlatContract &fc = flat(inst);
    check_funds();
    const FunctionDef *recv = fc.function("receive");
    if (!recv || !recv->payable || !recv->params.empty()) revert("not_payable");
    const std::map<std::string, Value> none;
    charts_ = charts_scoped_to(resolved_.model, fc.name);
    check_modifiers(*recv, fc, inst, none);
    apply_sets(*recv, fc, inst, none);
    move_value();
  }

  World &w_;
  const ResolvedModel &resolved_;
  const Scenario &sc_;
  const MessageSpec &msg_;
  const Participant *from_ = nullptr;
  const Participant *to_ = nullptr;
  std::vector<const Statechart *> charts_;
  Int now_;
};

Int cost_of(MessageKind k, const GasModel &gas)
{
  switch (k) {
    case MessageKind::create: return gas.create_cost;
    case MessageKind::call: return gas.call_cost;
    case MessageKind::view_call: return gas.view_cost;
    case MessageKind::eth_transfer: return gas.transfer_cost;
  }
  return 0;
}

using nlohmann::ordered_json;

ordered_json int_json(const Int &v)
{
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

ordered_json to_json(const Report &r)
{
  ordered_json steps = ordered_json::array();
  for (const auto &s : r.steps)
    steps.push_back({{"index", s.index},
                     {"message", s.message},
                     {"expected", to_string(s.expected)},
                     {"actual", to_string(s.actual)},
                     {"match", s.match},
                     {"gas", int_json(s.gas)}});
  ordered_json balances = ordered_json::object();
  for (const auto &[alias, wei] : r.balances) balances[alias] = int_json(wei);
  ordered_json machines = ordered_json::array();
  for (const auto &[key, m] : r.machines) {
    ordered_json attrs = ordered_json::object();
    for (const auto &[name, v] : m.attrs) attrs[name] = int_json(v);
    machines.push_back({{"chart", key.chart},
                        {"contract", key.contract_alias},
                        {"actor", key.actor_alias},
                        {"state", m.current},
                        {"attrs", attrs}});
  }
  return {{"scenario", r.scenario},     {"pass", r.pass}, {"total_gas", int_json(r.total_gas)},
          {"clock", int_json(r.clock)}, {"steps", steps}, {"balances", balances},
          {"machines", machines}};
}

}  // namespace

std::string to_string(const Value &v)
{
  switch (v.kind) {
    case ValueKind::integer: return v.integer.str();
    case ValueKind::boolean: return v.boolean ? "true" : "false";
    case ValueKind::address: return v.text.empty() ? "0x0" : v.text;
    case ValueKind::string: return quote_string(v.text);
    case ValueKind::bytes: return v.text.empty() ? "0x" : v.text;
    case ValueKind::enumeration: return v.text;
  }
  return {};
}

Int World::total_wei() const
{
  Int sum = 0;
  for (const auto &[alias, wei] : balances) sum += wei;
  return sum;
}

World init_world(const ResolvedModel &, const Scenario &scenario)
{
  World w;
  for (const auto &p : scenario.participants) w.balances[p.alias] = 0;
  std::set<std::string> seen;
  for (const auto &g : scenario.genesis) {
    if (!scenario.participant(g.alias)) throw Error("genesis names unknown participant '" + g.alias + "'");
    if (!seen.insert(g.alias).second) throw Error("genesis lists '" + g.alias + "' twice");
    if (g.wei < 0) throw Error("genesis balance of '" + g.alias + "' is negative");
    w.balances[g.alias] = g.wei;
  }
  return w;
}

std::pair<World, TxResult> exec(World world, const ResolvedModel &resolved, const Scenario &scenario,
                                const MessageSpec &msg, const GasModel &gas)
{
  const std::size_t index = world.gas_ledger.size();
  Int now = world.clock;
  World work = world;
  Outcome outcome = Outcome::ok();
  try {
    if (msg.at) {
      if (*msg.at < world.clock) fail("clock_regression");
      now = *msg.at;
    }
    Tx(work, resolved, scenario, msg).run(now);
  } catch (const Abort &a) {
    outcome = a.outcome;
  }

  const Int cost = outcome.kind == Outcome::Kind::error ? Int(0) : cost_of(msg.kind, gas);
  const bool commit = outcome.kind == Outcome::Kind::ok && msg.kind != MessageKind::view_call;
  World out = commit ? std::move(work) : std::move(world);
  if (commit) out.clock = now;
  out.gas_ledger.push_back({index, cost});
  return {std::move(out), TxResult{outcome, cost, now}};
}

Report run(const ResolvedModel &resolved, const Scenario &scenario, const GasModel &gas)
{
  Report r;
  r.scenario = scenario.name;
  World w = init_world(resolved, scenario);
  for (std::size_t i = 0; i < scenario.messages.size(); ++i) {
    auto [next, tx] = exec(std::move(w), resolved, scenario, scenario.messages[i], gas);
    w = std::move(next);
    const Outcome expected = i < scenario.expected.size() ? scenario.expected[i] : Outcome::ok();
    StepReport step{i, describe(scenario.messages[i]), expected, tx.outcome, expected == tx.outcome, tx.gas};
    r.pass = r.pass && step.match;
    r.steps.push_back(std::move(step));
  }
  r.balances = w.balances;
  r.machines = w.machines;
  r.clock = w.clock;
  r.total_gas = 0;
  for (const auto &g : w.gas_ledger) r.total_gas += g.gas;
  return r;
}

Int gas_total(const Report &report)
{
  Int sum = 0;
  for (const auto &s : report.steps) sum += s.gas;
  return sum;
}

std::string describe(const MessageSpec &msg)
{
  std::ostringstream os;
  auto args = [&] {
    os << '(';
    for (std::size_t i = 0; i < msg.args.size(); ++i) os << (i ? ", " : "") << to_string(msg.args[i]);
    os << ')';
  };
  switch (msg.kind) {
    case MessageKind::create:
      os << "create " << msg.from << " -> " << msg.to;
      args();
      break;
    case MessageKind::call:
    case MessageKind::view_call:
      os << (msg.kind == MessageKind::call ? "call " : "viewcall ") << msg.from << " -> " << msg.to << '.'
         << msg.function.value_or("");
      args();
      break;
    case MessageKind::eth_transfer: os << "transfer " << msg.from << " -> " << msg.to; break;
  }
  if (msg.value != 0 || msg.kind == MessageKind::eth_transfer) os << " value " << msg.value;
  if (msg.at) os << " at " << *msg.at;
  return os.str();
}

std::string report_text(const Report &report)
{
  int step_w = 4, outcome_w = 8;
  for (const auto &s : report.steps) {
    step_w = std::max(step_w, static_cast<int>(s.message.size()));
    outcome_w = std::max({outcome_w, static_cast<int>(to_string(s.expected).size()),
                          static_cast<int>(to_string(s.actual).size())});
  }
  step_w += 2;
  outcome_w += 2;
  std::ostringstream os;
  os << "scenario " << report.scenario << ": " << (report.pass ? "PASS" : "FAIL") << '\n';
  os << std::left << "  " << std::setw(4) << "#" << std::setw(step_w) << "step" << std::setw(outcome_w)
     << "expected" << std::setw(outcome_w) << "actual" << "gas\n";
  for (const auto &s : report.steps) {
    // Mismatched steps are flagged in the margin.
    os << (s.match ? "  " : "! ") << std::setw(4) << s.index << std::setw(step_w) << s.message
       << std::setw(outcome_w) << to_string(s.expected) << std::setw(outcome_w) << to_string(s.actual)
       << s.gas << '\n';
  }
  os << "total gas: " << report.total_gas << '\n';
  os << "clock: " << report.clock << '\n';
  os << "balances:";
  for (const auto &[alias, wei] : report.balances) os << ' ' << alias << '=' << wei;
  os << '\n';
  for (const auto &[key, m] : report.machines) {
    os << "machine " << key.chart << ' ' << key.contract_alias << ' ' << key.actor_alias << ": " << m.current;
    if (!m.attrs.empty()) {
      os << " {";
      bool first = true;
      for (const auto &[name, v] : m.attrs) {
        os << (first ? "" : ", ") << name << '=' << v;
        first = false;
      }
      os << '}';
    }
    os << '\n';
  }
  return os.str();
}

std::string report_json(const Report &report) { return to_json(report).dump(2) + "\n"; }

std::string report_json(const std::vector<Report> &reports)
{
  ordered_json all = ordered_json::array();
  for (const auto &r : reports) all.push_back(to_json(r));
  return all.dump(2) + "\n";
}

}  // namespace boscribe

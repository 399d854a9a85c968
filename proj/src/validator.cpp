#include "boscribe/validator.hpp"

#include "boscribe/parser.hpp"
#include "boscribe/typecheck.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>

namespace boscribe
{
namespace
{

const std::vector<Rule> catalog = {
    {"V001", Severity::error, "inherited contract must be declared",
     "Inheritance binds to contracts of the same model; a misspelled base leaves the derived "
     "contract without its members."},
    {"V002", Severity::error, "inheritance must be acyclic",
     "Members are merged base-first, which has no order when a contract is its own ancestor."},
    {"V003", Severity::error, "view and pure functions do not modify the blockchain",
     "A view function only reads state, so it costs no gas and may not write, emit, create, "
     "transfer or destroy. A pure function additionally reads nothing."},
    {"V004", Severity::error, "a transaction creates at most one contract",
     "On the target platform one transaction can create at most a single contract: a create "
     "step targets exactly one concrete contract and no function creates more than one."},
    {"V005", Severity::error, "account participants only hold Ether",
     "A plain account can only send or receive Ether; it takes part in transfers and nothing else."},
    {"V006", Severity::error, "contracts never act autonomously",
     "A contract only reacts to the messages it receives, so it never originates a message to a "
     "person, system or device."},
    {"V007", Severity::error, "only arrays and integer-keyed mappings are iterable",
     "A mapping is not able to iterate on its elements. Iteration needs an array or a map_uint "
     "mapping paired with a counter."},
    {"V008", Severity::error, "Ether goes only into payable functions",
     "A call or creation carrying value needs a payable target; a plain transfer into a contract "
     "needs a payable receive function."},
    {"V009", Severity::error, "only the trusted writer updates an oracle",
     "An oracle gives contracts a window on the outside world, so its data may only be written by "
     "the third party declared as its trusted writer."},
    {"V010", Severity::error, "applied modifiers must exist",
     "Every modifier named in a function's uses clause must be declared or inherited, and its "
     "parameters must be parameters of the function."},
    {"V011", Severity::error, "statecharts are well-formed",
     "A statechart belongs to a declared contract and subject, declares its initial state, and "
     "every transition connects declared states on a mutating function of the contract."},
    {"V012", Severity::error, "scenarios are well-shaped",
     "Every message names declared participants, each contract instance is created once before "
     "it is used, calls name existing functions with the right arity, and view calls target "
     "view or pure functions."},
    {"V013", Severity::error, "library contracts are stateless",
     "A library contract provides reusable code; it holds no state variables or roles and "
     "inherits nothing."},
    {"V014", Severity::error, "member names are unique per contract",
     "After inheritance is flattened, no two members of a contract share a name; the tool never "
     "silently overrides one with another."},
    {"V015", Severity::error, "expressions are bound and well-typed",
     "Guards, sets clauses and transition actions only use visible names, compare like with like "
     "and combine booleans with boolean connectives."},
    {"V016", Severity::error, "model declarations are consistent",
     "Top-level names are unique, interfaces only declare, stories and participants refer to "
     "declared actors and contracts with matching stereotypes, and genesis balances are "
     "non-negative and listed once."},
    {"W001", Severity::warning, "names follow camelCase conventions",
     "Functions, modifiers, variables, parameters and roles are lowerCamelCase; contracts, "
     "structs, enums, events, actors and statecharts are UpperCamelCase."},
    {"W002", Severity::warning, "guard has no Solidity translation",
     "Statechart predicates exist only in the simulator, so code generation emits a require(false) "
     "placeholder for guards that use them."},
};

class Validator
{
 public:
  Validator(const ResolvedModel &r) : r_(r), m_(r.model) {}

  std::vector<Diagnostic> run()
  {
    diags_ = resolve(m_).diagnostics;
    top_level_names();
    for (const auto &c : m_.contracts) declared_contract(c);
    for (const auto &fc : r_.contracts) flat_contract(fc);
    for (const auto &a : m_.actors) actor(a);
    for (const auto &s : m_.statecharts) statechart(s);
    std::set<std::string> scenario_names;
    for (const auto &s : m_.scenarios) {
      if (!scenario_names.insert(s.name).second) {
        error("V016", "duplicate scenario '" + s.name + "'", s.loc.span);
      }
      scenario(s);
    }
    for (const auto &u : m_.stories) {
      if (!m_.actor(u.actor))
        error("V016", "story '" + u.id + "' names undeclared actor '" + u.actor + "'", u.loc.span);
    }
    sort_diagnostics(diags_);
    return std::move(diags_);
  }

 private:
  void error(std::string code, std::string message, Span span)
  {
    diags_.push_back(Diagnostic{std::move(code), Severity::error, std::move(message), m_.file, span});
  }
  void warning(std::string code, std::string message, Span span)
  {
    diags_.push_back(Diagnostic{std::move(code), Severity::warning, std::move(message), m_.file, span});
  }

  void top_level_names()
  {
    std::map<std::string, std::string> seen;
    auto claim = [&](const std::string &name, const char *what, Span span) {
      auto [it, inserted] = seen.emplace(name, what);
      if (!inserted) {
        error("V016",
              std::string(what) + " '" + name + "' clashes with an earlier " + it->second + " of that name",
              span);
      }
    };
    for (const auto &c : m_.contracts) claim(c.name, "contract", c.loc.span);
    for (const auto &a : m_.actors) claim(a.name, "actor", a.loc.span);
    for (const auto &s : m_.statecharts) claim(s.name, "statechart", s.loc.span);
  }

  // --- naming -------------------------------------------------------------

  void lower(const std::string &name, const char *what, Span span)
  {
    static const std::regex re("[a-z][A-Za-z0-9]*");
    if (!std::regex_match(name, re))
      warning("W001", std::string(what) + " '" + name + "' should be lowerCamelCase", span);
  }
  void upper(const std::string &name, const char *what, Span span)
  {
    static const std::regex re("[A-Z][A-Za-z0-9]*");
    if (!std::regex_match(name, re))
      warning("W001", std::string(what) + " '" + name + "' should be UpperCamelCase", span);
  }
  void lower_params(const std::vector<Param> &ps)
  {
    for (const auto &p : ps) lower(p.name, "parameter", p.loc.span);
  }

  // --- per declared contract (no resolution needed) ------------------------

  void declared_contract(const ContractDef &c)
  {
    upper(c.name, "contract", c.loc.span);
    for (const auto &s : c.structs) {
      upper(s.name, "struct", s.loc.span);
      for (const auto &f : s.fields) lower(f.name, "field", f.loc.span);
    }
    for (const auto &e : c.enums) upper(e.name, "enum", e.loc.span);
    for (const auto &e : c.events) {
      upper(e.name, "event", e.loc.span);
      lower_params(e.params);
    }
    for (const auto &v : c.state_vars) lower(v.name, "state variable", v.loc.span);
    for (const auto &r : c.roles) lower(r.name, "role", r.loc.span);
    for (const auto &mo : c.modifiers) {
      lower(mo.name, "modifier", mo.loc.span);
      lower_params(mo.params);
    }
    for (const auto &f : c.functions) {
      if (!f.is_constructor) lower(f.name, "function", f.loc.span);
      lower_params(f.params);
    }

    if (c.kind == ContractKind::library) {
      for (const auto &v : c.state_vars) {
        error("V013", "library '" + c.name + "' declares state variable '" + v.name + "'", v.loc.span);
      }
      for (const auto &ro : c.roles) {
        error("V013", "library '" + c.name + "' declares role '" + ro.name + "'", ro.loc.span);
      }
      if (!c.inherits.empty())
        error("V013", "library '" + c.name + "' inherits from other contracts", c.loc.span);
    }

    if (c.kind == ContractKind::interface) {
      for (const auto &f : c.functions) {
        if (!f.effects.empty() || !f.sets.empty()) {
          error("V016", "interface function '" + f.name + "' may only be declared, without effects or sets",
                f.loc.span);
        }
      }
    }

    std::size_t ctors = 0;
    for (const auto &f : c.functions) {
      if (f.is_constructor && ++ctors == 2) {
        error("V004", "contract '" + c.name + "' declares more than one constructor", f.loc.span);
      }
    }
  }

  // --- per flattened contract ---------------------------------------------

  ExprScope scope_for(const FlatContract &fc, std::vector<Param> params) const
  {
    return ExprScope{&fc, std::move(params), charts_scoped_to(m_, fc.name)};
  }

  void flat_contract(const FlatContract &fc)
  {
    for (const auto &mo : fc.modifiers) {
      check_guard(mo.def.guard, scope_for(fc, mo.def.params), m_.file, diags_);
    }
    for (const auto &v : fc.state_vars) {
      if (v.def.type.kind == TypeRef::Kind::user) {
        error("V015", "unknown type '" + v.def.type.name + "'", v.def.loc.span);
      }
    }
    for (const auto &ff : fc.functions) function(fc, ff.def);
  }

  void function(const FlatContract &fc, const FunctionDef &f)
  {
    const auto &e = f.effects;
    const bool view = f.mutability != Mutability::mutating;
    const std::string kind = f.mutability == Mutability::pure ? "pure" : "view";
    if (view) {
      auto bad = [&](const std::string &what) {
        error("V003", kind + " function '" + f.name + "' " + what, f.loc.span);
      };
      if (f.is_constructor) bad("cannot be a constructor");
      if (f.payable) bad("cannot be payable");
      if (!e.writes.empty()) bad("writes " + e.writes.front());
      if (!e.emits.empty()) bad("emits " + e.emits.front());
      if (!e.creates.empty()) bad("creates " + e.creates.front());
      if (e.transfers_eth) bad("transfers Ether");
      if (e.destroys) bad("destroys the contract");
      if (!f.sets.empty()) bad("sets " + f.sets.front().target);
      if (f.mutability == Mutability::pure && (!e.reads.empty() || !e.iterates.empty())) {
        bad("reads " + (e.reads.empty() ? e.iterates.front() : e.reads.front()));
      }
    }

    if (e.creates.size() > 1) {
      error("V004",
            "function '" + f.name + "' creates " + std::to_string(e.creates.size()) +
                " contracts in one transaction",
            f.loc.span);
    }
    for (const auto &c : e.creates) {
      if (!m_.contract(c))
        error("V015", "function '" + f.name + "' creates unknown contract '" + c + "'", f.loc.span);
    }

    auto known_var = [&](const std::string &n) { return fc.state_var(n) != nullptr || fc.has_role(n); };
    for (const auto *list : {&e.reads, &e.writes}) {
      for (const auto &n : *list) {
        if (!known_var(n))
          error("V015", "function '" + f.name + "' names unknown state variable '" + n + "'", f.loc.span);
      }
    }
    for (const auto &n : e.emits) {
      if (!fc.event(n))
        error("V015", "function '" + f.name + "' emits unknown event '" + n + "'", f.loc.span);
    }
    for (const auto &n : e.iterates) {
      const StateVar *v = fc.state_var(n);
      if (!v) {
        error("V015", "function '" + f.name + "' iterates unknown state variable '" + n + "'", f.loc.span);
      } else if (v->type.kind == TypeRef::Kind::map && v->type.impl == RelImpl::map) {
        error("V007",
              "function '" + f.name + "' iterates '" + n +
                  "', a mapping without an integer index; use impl map_uint",
              f.loc.span);
      } else if (v->type.kind != TypeRef::Kind::array && v->type.kind != TypeRef::Kind::map) {
        error("V007", "function '" + f.name + "' iterates '" + n + "', which is not a collection",
              f.loc.span);
      }
    }

    for (const auto &name : f.applied_modifiers) {
      const ModifierDef *mo = fc.modifier(name);
      if (!mo) {
        error("V010", "function '" + f.name + "' uses unknown modifier '" + name + "'", f.loc.span);
        continue;
      }
      for (const auto &p : mo->params) {
        auto it =
            std::find_if(f.params.begin(), f.params.end(), [&](const Param &q) { return q.name == p.name; });
        if (it == f.params.end() || it->type != p.type) {
          error("V010",
                "modifier '" + name + "' needs parameter '" + to_string(p.type) + " " + p.name +
                    "' on function '" + f.name + "'",
                f.loc.span);
        }
      }
    }

    for (const auto &p : f.params) {
      if (p.type.kind == TypeRef::Kind::user) error("V015", "unknown type '" + p.type.name + "'", p.loc.span);
    }

    const ExprScope scope = scope_for(fc, f.params);
    for (const auto &a : f.sets) assignment(fc, scope, a);
  }

  void assignment(const FlatContract &fc, const ExprScope &scope, const Assignment &a)
  {
    auto value = check_expr(a.value, scope, m_.file, diags_);
    if (fc.has_role(a.target)) {
      if (a.op == AssignOp::assign) {
        error("V015", "role '" + a.target + "' changes only with '+=' or '-='", a.loc.span);
      } else if (value && value->kind != ValueKind::address) {
        error("V015", "role '" + a.target + "' holds addresses, not " + to_string(*value), a.loc.span);
      }
      return;
    }
    const StateVar *v = fc.state_var(a.target);
    if (!v) {
      error("V015", "sets unknown state variable '" + a.target + "'", a.loc.span);
      return;
    }
    auto target = value_type_of(v->type);
    if (!target) {
      error("V015", "state variable '" + a.target + "' of type " + to_string(v->type) + " cannot be assigned",
            a.loc.span);
      return;
    }
    if (!value) return;
    if (a.op != AssignOp::assign && target->kind != ValueKind::integer) {
      error("V015",
            "'" + std::string(to_string(a.op)) + "' needs an integer target, '" + a.target + "' is " +
                to_string(*target),
            a.loc.span);
    } else if (*value != *target) {
      error("V015",
            "cannot assign " + to_string(*value) + " to '" + a.target + "' of type " + to_string(*target),
            a.loc.span);
    }
  }

  // --- actors --------------------------------------------------------------

  void actor(const ActorDef &a)
  {
    upper(a.name, "actor", a.loc.span);
    if (a.trusted_writer_for && !m_.contract(*a.trusted_writer_for)) {
      error("V016", "actor '" + a.name + "' writes unknown contract '" + *a.trusted_writer_for + "'",
            a.loc.span);
    }
  }

  // --- statecharts ---------------------------------------------------------

  void statechart(const Statechart &sc)
  {
    upper(sc.name, "statechart", sc.loc.span);
    if (!m_.contract(sc.scoped_to)) {
      error("V011", "statechart '" + sc.name + "' is scoped to unknown contract '" + sc.scoped_to + "'",
            sc.loc.span);
      return;
    }
    const FlatContract *fc = r_.contract(sc.scoped_to);
    if (!fc) return;  // resolution already reported

    const bool kind_word =
        sc.subject == "person" || sc.subject == "system" || sc.subject == "device" || sc.subject == "account";
    if (!fc->has_role(sc.subject) && !m_.actor(sc.subject) && !kind_word) {
      error("V011",
            "statechart subject '" + sc.subject + "' is neither a role of '" + sc.scoped_to +
                "', an actor nor an actor kind",
            sc.loc.span);
    }

    std::set<std::string> states;
    for (const auto &s : sc.states) {
      if (!states.insert(s).second)
        error("V011", "statechart '" + sc.name + "' repeats state '" + s + "'", sc.loc.span);
    }
    std::set<std::string> attrs;
    for (const auto &a : sc.attrs) {
      if (!attrs.insert(a.name).second)
        error("V011", "statechart '" + sc.name + "' repeats attribute '" + a.name + "'", a.loc.span);
    }
    if (sc.initial.empty()) {
      error("V011", "statechart '" + sc.name + "' declares no initial state", sc.loc.span);
    } else if (!states.contains(sc.initial)) {
      error("V011", "initial state '" + sc.initial + "' is not a state of '" + sc.name + "'", sc.loc.span);
    }

    for (const auto &t : sc.transitions) {
      for (const auto *s : {&t.source, &t.target}) {
        if (!states.contains(*s)) error("V011", "transition names unknown state '" + *s + "'", t.loc.span);
      }
      const FunctionDef *f = fc->function(t.trigger);
      if (!f) {
        error("V011", "trigger '" + t.trigger + "' is not a function of '" + sc.scoped_to + "'", t.loc.span);
        continue;
      }
      if (f->mutability != Mutability::mutating) {
        error("V011",
              "trigger '" + t.trigger + "' is a " + (f->mutability == Mutability::view ? "view" : "pure") +
                  " function and cannot change state",
              t.loc.span);
        continue;
      }
      const ExprScope scope = scope_for(*fc, f->params);
      if (t.guard) check_guard(t.guard, scope, m_.file, diags_);
      for (const auto &a : t.actions) {
        if (a.subject != "self") {
          auto p = std::find_if(f->params.begin(), f->params.end(),
                                [&](const Param &q) { return q.name == a.subject; });
          if (p == f->params.end() || !p->type.is_scalar() || p->type.scalar.kind != ScalarKind::address) {
            error("V015",
                  "action subject '" + a.subject + "' is neither self nor an address parameter of '" +
                      t.trigger + "'",
                  a.loc.span);
          }
        }
        if (!attrs.contains(a.attr)) {
          error("V015", "unknown attribute '" + a.attr + "' of statechart '" + sc.name + "'", a.loc.span);
        }
        auto v = check_expr(a.value, scope, m_.file, diags_);
        if (v && v->kind != ValueKind::integer) {
          error("V015", "attribute '" + a.attr + "' is an integer, not " + to_string(*v), a.loc.span);
        }
      }
    }
  }

  // --- scenarios -----------------------------------------------------------

  void scenario(const Scenario &s)
  {
    std::set<std::string> aliases;
    for (const auto &p : s.participants) {
      if (!aliases.insert(p.alias).second)
        error("V016", "duplicate participant '" + p.alias + "'", p.loc.span);
      if (p.is_contract()) {
        if (!m_.contract(p.ref)) {
          error("V016", "participant '" + p.alias + "' refers to unknown contract '" + p.ref + "'",
                p.loc.span);
        }
      } else if (const ActorDef *a = m_.actor(p.ref)) {
        if (to_string(a->kind) != to_string(p.kind)) {
          error("V016",
                "participant '" + p.alias + "' is marked <<" + std::string(to_string(p.kind)) +
                    ">> but actor '" + p.ref + "' is a " + std::string(to_string(a->kind)),
                p.loc.span);
        }
      } else {
        error("V016", "participant '" + p.alias + "' refers to unknown actor '" + p.ref + "'", p.loc.span);
      }
    }
    std::set<std::string> funded;
    for (const auto &g : s.genesis) {
      if (!s.participant(g.alias))
        error("V016", "genesis names unknown participant '" + g.alias + "'", g.loc.span);
      if (!funded.insert(g.alias).second) error("V016", "genesis lists '" + g.alias + "' twice", g.loc.span);
      if (g.wei < 0) error("V016", "genesis balance of '" + g.alias + "' is negative", g.loc.span);
    }

    std::set<std::string> created;
    for (const auto &msg : s.messages) message(s, msg, created);
  }

  void message(const Scenario &s, const MessageSpec &msg, std::set<std::string> &created)
  {
    const Span span = msg.loc.span;
    const Participant *from = s.participant(msg.from);
    const Participant *to = s.participant(msg.to);
    if (!from) error("V012", "unknown participant '" + msg.from + "'", span);
    if (!to) error("V012", "unknown participant '" + msg.to + "'", span);
    if (msg.value < 0) error("V016", "message value is negative", span);
    if (msg.at && *msg.at < 0) error("V016", "message timestamp is negative", span);
    if (!from || !to) return;

    auto is_account = [](const Participant *p) { return p->kind == ParticipantKind::account; };
    if (msg.kind != MessageKind::eth_transfer && (is_account(from) || is_account(to))) {
      const Participant *acct = is_account(from) ? from : to;
      error("V005",
            "account '" + acct->alias + "' takes part in a " + std::string(to_string(msg.kind)) +
                "; accounts only send or receive Ether",
            span);
    }
    if (from->is_contract() && !to->is_contract() && to->kind != ParticipantKind::account) {
      error("V006",
            "contract '" + from->alias + "' sends a message to " + std::string(to_string(to->kind)) + " '" +
                to->alias + "' on its own",
            span);
    }

    if (from->is_contract() && !created.contains(from->alias)) {
      error("V012", "'" + from->alias + "' sends a message before it is created", span);
    }

    const FlatContract *fc = to->is_contract() ? r_.contract(to->ref) : nullptr;
    const bool unresolved = to->is_contract() && m_.contract(to->ref) && !fc;

    switch (msg.kind) {
      case MessageKind::create: {
        if (!to->is_contract()) {
          error("V004", "create targets '" + to->alias + "', which is not a contract participant", span);
          return;
        }
        const ContractDef *decl = m_.contract(to->ref);
        if (decl && decl->kind != ContractKind::contract) {
          error("V004",
                "create targets " + std::string(to_string(decl->kind)) + " '" + to->ref +
                    "'; only concrete contracts have a constructor to run",
                span);
        }
        if (!created.insert(to->alias).second) {
          error("V012", "instance '" + to->alias + "' is created twice", span);
        }
        if (!fc) return;
        const FunctionDef *ctor = fc->constructor();
        arity(msg, ctor ? ctor->params.size() : 0, "constructor of '" + fc->name + "'");
        if (msg.value > 0 && !(ctor && ctor->payable)) {
          error("V008", "creation of '" + to->alias + "' carries value but the constructor is not payable",
                span);
        }
        return;
      }
      case MessageKind::call:
      case MessageKind::view_call: {
        if (!to->is_contract()) {
          error("V012", "'" + to->alias + "' is not a contract and has no functions", span);
          return;
        }
        if (!created.contains(to->alias)) {
          error("V012", "'" + to->alias + "' is used before it is created", span);
        }
        if (!fc) return;
        const FunctionDef *f = fc->function(msg.function.value_or(""));
        if (!f) {
          error("V012", "'" + fc->name + "' has no function '" + msg.function.value_or("") + "'", span);
          return;
        }
        arity(msg, f->params.size(), "'" + f->name + "'");
        if (msg.kind == MessageKind::view_call && f->mutability == Mutability::mutating) {
          error("V012", "viewcall targets '" + f->name + "', which is neither view nor pure", span);
        }
        if (msg.value > 0 && !f->payable) {
          error("V008", "call to '" + f->name + "' carries value but the function is not payable", span);
        }
        if (to->is_oracle() && msg.kind == MessageKind::call && f->mutability == Mutability::mutating) {
          const ActorDef *writer = from->is_contract() ? nullptr : m_.actor(from->ref);
          if (!writer || writer->trusted_writer_for != to->ref) {
            error("V009",
                  "'" + from->alias + "' writes oracle '" + to->alias +
                      "' but is not the trusted writer of '" + to->ref + "'",
                  span);
          }
        }
        return;
      }
      case MessageKind::eth_transfer: {
        if (!to->is_contract()) return;
        if (!created.contains(to->alias))
          error("V012", "'" + to->alias + "' is used before it is created", span);
        if (unresolved || !fc || msg.value == 0) return;
        const FunctionDef *recv = fc->function("receive");
        if (!recv || !recv->payable) {
          error("V008", "Ether sent to '" + to->alias + "', whose contract has no payable receive function",
                span);
        }
        return;
      }
    }
  }

  void arity(const MessageSpec &msg, std::size_t want, const std::string &what)
  {
    if (msg.args.size() != want) {
      error("V012",
            what + " takes " + std::to_string(want) + " argument" + (want == 1 ? "" : "s") + ", got " +
                std::to_string(msg.args.size()),
            msg.loc.span);
    }
  }

  const ResolvedModel &r_;
  const Model &m_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

const std::vector<Rule> &rule_catalog() { return catalog; }

const Rule &explain(std::string_view code)
{
  for (const auto &r : catalog) {
    if (r.code == code) return r;
  }
  throw Error("unknown rule code '" + std::string(code) + "'");
}

std::string rules_table()
{
  std::string out = "code\tseverity\tdescription\n";
  for (const auto &r : catalog) {
    out += std::string(r.code) + '\t' + std::string(to_string(r.severity)) + '\t' + std::string(r.summary) +
           '\n';
  }
  return out;
}

std::vector<Diagnostic> validate(const ResolvedModel &resolved) { return Validator(resolved).run(); }

CheckResult check_source(const SourceFile &src)
{
  CheckResult out;
  auto parsed = parse(src);
  if (!parsed.ok()) {
    out.diagnostics = std::move(parsed.diagnostics);
    out.resolved.model = std::move(parsed.model);
    return out;
  }
  out.resolved = resolve(parsed.model).resolved;
  out.diagnostics = validate(out.resolved);
  return out;
}

}  // namespace boscribe

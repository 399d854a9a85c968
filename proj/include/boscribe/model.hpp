#pragma once

// In-memory model of a blockchain-oriented system design: contracts with
// their stereotyped members, actors, statecharts, scenarios and user stories.
// Everything here is a plain value; equality is structural and ignores
// source locations.

#include "boscribe/source.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace boscribe
{

/// Arbitrary-precision integer used for literals, storage and wei amounts.
using Int = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Types

enum class ScalarKind
{
  uint_,
  int_,
  address,
  bool_,
  string,
  bytes,
};

struct ScalarType
{
  ScalarKind kind = ScalarKind::uint_;
  /// Bit width for uint_/int_ (8..256, step 8); 0 otherwise.
  unsigned bits = 0;

  friend bool operator==(const ScalarType &, const ScalarType &) = default;
};

enum class RelImpl
{
  array,
  map,
  map_uint,
};

std::string_view to_string(RelImpl r) noexcept;

struct TypeRef;

struct TypeRef
{
  enum class Kind
  {
    scalar,
    user,  ///< named type as written; the resolver classifies it
    enum_ref,
    struct_ref,
    array,
    map,
  };

  Kind kind = Kind::scalar;
  ScalarType scalar;             // scalar, and map key
  std::string name;              // user, enum_ref, struct_ref
  std::vector<TypeRef> element;  // array element / map value; exactly one entry
  RelImpl impl = RelImpl::map;   // map only

  static TypeRef make_scalar(ScalarKind k, unsigned bits = 0);
  static TypeRef make_user(std::string name);
  static TypeRef make_array(TypeRef element);
  static TypeRef make_map(ScalarType key, TypeRef value, RelImpl impl = RelImpl::map);

  [[nodiscard]] bool is_scalar() const noexcept { return kind == Kind::scalar; }
  [[nodiscard]] bool is_named() const noexcept
  {
    return kind == Kind::user || kind == Kind::enum_ref || kind == Kind::struct_ref;
  }
  [[nodiscard]] const TypeRef &inner() const { return element.front(); }

  friend bool operator==(const TypeRef &, const TypeRef &) = default;
};

/// Canonical DSL spelling: `uint16`, `Shareholder[]`, `mapping(uint256 => Voting)`.
std::string to_string(const ScalarType &t);
std::string to_string(const TypeRef &t);

/// Parses `uint16`, `int`, `address`, ... Returns nullopt for anything else.
std::optional<ScalarType> parse_scalar_type(std::string_view word);

// ---------------------------------------------------------------------------
// Expressions

enum class Builtin
{
  sender,
  value,
  now,
};

enum class BinaryOp
{
  logical_and,
  logical_or,
  eq,
  ne,
  lt,
  le,
  gt,
  ge,
  add,
  sub,
};

std::string_view to_string(BinaryOp op) noexcept;

struct Expr;

/// Shared immutable expression node with deep equality.
class ExprRef
{
 public:
  ExprRef() = default;
  explicit ExprRef(std::shared_ptr<const Expr> p) : ptr_(std::move(p)) {}

  [[nodiscard]] const Expr &operator*() const { return *ptr_; }
  [[nodiscard]] const Expr *operator->() const { return ptr_.get(); }
  [[nodiscard]] explicit operator bool() const noexcept { return ptr_ != nullptr; }

  friend bool operator==(const ExprRef &a, const ExprRef &b);

 private:
  std::shared_ptr<const Expr> ptr_;
};

namespace expr
{
struct IntLit
{
  Int value;
  friend bool operator==(const IntLit &, const IntLit &) = default;
};
struct BoolLit
{
  bool value = false;
  friend bool operator==(const BoolLit &, const BoolLit &) = default;
};
struct StrLit
{
  std::string value;
  friend bool operator==(const StrLit &, const StrLit &) = default;
};
/// `0x...` literal.
struct AddrLit
{
  std::string hex;
  friend bool operator==(const AddrLit &, const AddrLit &) = default;
};
struct BuiltinRef
{
  Builtin which = Builtin::sender;
  friend bool operator==(const BuiltinRef &, const BuiltinRef &) = default;
};
/// Parameter or state variable.
struct Name
{
  std::string name;
  friend bool operator==(const Name &, const Name &) = default;
};
/// `Choice.None`
struct EnumLit
{
  std::string enum_name;
  std::string member;
  friend bool operator==(const EnumLit &, const EnumLit &) = default;
};
struct Not
{
  ExprRef operand;
  friend bool operator==(const Not &, const Not &) = default;
};
struct Binary
{
  BinaryOp op = BinaryOp::eq;
  ExprRef lhs;
  ExprRef rhs;
  friend bool operator==(const Binary &, const Binary &) = default;
};
/// `term in roleName`
struct InRole
{
  ExprRef member;
  std::string role;
  friend bool operator==(const InRole &, const InRole &) = default;
};
/// `instate(actorTerm, State)`
struct InState
{
  ExprRef actor;
  std::string state;
  friend bool operator==(const InState &, const InState &) = default;
};
/// `attr(actorTerm, attrName)`
struct Attr
{
  ExprRef actor;
  std::string attr;
  friend bool operator==(const Attr &, const Attr &) = default;
};
}  // namespace expr

struct Expr
{
  using Node =
      std::variant<expr::IntLit, expr::BoolLit, expr::StrLit, expr::AddrLit, expr::BuiltinRef, expr::Name,
                   expr::EnumLit, expr::Not, expr::Binary, expr::InRole, expr::InState, expr::Attr>;
  Loc loc;
  Node node;

  friend bool operator==(const Expr &, const Expr &) = default;
};

ExprRef make_expr(Expr::Node node, Span span = {});

/// Double-quoted DSL string literal with `\"`, `\\`, `\n`, `\t` escapes.
std::string quote_string(std::string_view s);

/// Canonical infix rendering; parenthesizes only where precedence requires it.
std::string to_string(const ExprRef &e);

// ---------------------------------------------------------------------------
// Contracts

enum class ContractKind
{
  contract,
  library,
  interface,
  abstract,
};

std::string_view to_string(ContractKind k) noexcept;

enum class Visibility
{
  private_,
  public_,
};

enum class Mutability
{
  mutating,
  view,
  pure,
};

struct Param
{
  Loc loc;
  std::string name;
  TypeRef type;
  friend bool operator==(const Param &, const Param &) = default;
};

struct StateVar
{
  Loc loc;
  std::string name;
  TypeRef type;
  Visibility visibility = Visibility::private_;
  friend bool operator==(const StateVar &, const StateVar &) = default;
};

struct StructDef
{
  Loc loc;
  std::string name;
  std::vector<Param> fields;
  friend bool operator==(const StructDef &, const StructDef &) = default;
};

struct EnumDef
{
  Loc loc;
  std::string name;
  std::vector<std::string> members;
  friend bool operator==(const EnumDef &, const EnumDef &) = default;
};

struct ModifierDef
{
  Loc loc;
  std::string name;
  std::vector<Param> params;
  ExprRef guard;
  friend bool operator==(const ModifierDef &, const ModifierDef &) = default;
};

struct EventDef
{
  Loc loc;
  std::string name;
  std::vector<Param> params;
  friend bool operator==(const EventDef &, const EventDef &) = default;
};

/// Declarative stand-in for a function body.
struct EffectSet
{
  std::vector<std::string> reads;
  std::vector<std::string> writes;
  std::vector<std::string> emits;
  bool transfers_eth = false;
  std::vector<std::string> creates;
  std::vector<std::string> iterates;
  /// The function permanently removes the contract (selfdestruct-shaped).
  bool destroys = false;

  [[nodiscard]] bool empty() const noexcept
  {
    return reads.empty() && writes.empty() && emits.empty() && !transfers_eth && creates.empty() &&
           iterates.empty() && !destroys;
  }
  friend bool operator==(const EffectSet &, const EffectSet &) = default;
};

enum class AssignOp
{
  assign,
  add,  ///< `+=`; on a role target, inserts the address
  sub,  ///< `-=`; on a role target, removes the address
};

std::string_view to_string(AssignOp op) noexcept;

/// `target op value` inside a function `sets` clause.
struct Assignment
{
  Loc loc;
  std::string target;
  AssignOp op = AssignOp::assign;
  ExprRef value;
  friend bool operator==(const Assignment &, const Assignment &) = default;
};

struct FunctionDef
{
  Loc loc;
  std::string name;  ///< "constructor" for the constructor
  bool is_constructor = false;
  std::vector<Param> params;
  std::vector<TypeRef> returns;
  Mutability mutability = Mutability::mutating;
  bool payable = false;
  std::vector<std::string> applied_modifiers;
  EffectSet effects;
  std::vector<Assignment> sets;
  /// Free-text description, carried into NatSpec.
  std::string note;
  friend bool operator==(const FunctionDef &, const FunctionDef &) = default;
};

struct RoleDef
{
  Loc loc;
  std::string name;
  friend bool operator==(const RoleDef &, const RoleDef &) = default;
};

struct ContractDef
{
  Loc loc;
  std::string name;
  ContractKind kind = ContractKind::contract;
  std::vector<std::string> inherits;
  std::vector<StateVar> state_vars;
  std::vector<StructDef> structs;
  std::vector<EnumDef> enums;
  std::vector<ModifierDef> modifiers;
  std::vector<EventDef> events;
  std::vector<FunctionDef> functions;
  std::vector<RoleDef> roles;
  friend bool operator==(const ContractDef &, const ContractDef &) = default;

  [[nodiscard]] const FunctionDef *constructor() const;
};

// ---------------------------------------------------------------------------
// Actors, statecharts, stories

enum class ActorKind
{
  person,
  system,
  device,
  account,
};

std::string_view to_string(ActorKind k) noexcept;

struct ActorDef
{
  Loc loc;
  std::string name;
  ActorKind kind = ActorKind::person;
  std::optional<std::string> trusted_writer_for;
  friend bool operator==(const ActorDef &, const ActorDef &) = default;
};

struct ChartAttr
{
  Loc loc;
  std::string name;
  Int initial;
  friend bool operator==(const ChartAttr &, const ChartAttr &) = default;
};

/// `subject.attr op value`; subject is `self` or an address-typed trigger parameter.
struct ChartAction
{
  Loc loc;
  std::string subject;
  std::string attr;
  AssignOp op = AssignOp::assign;
  ExprRef value;
  friend bool operator==(const ChartAction &, const ChartAction &) = default;
};

struct TransitionDef
{
  Loc loc;
  std::string source;
  std::string target;
  std::string trigger;
  ExprRef guard;  ///< empty when unguarded
  std::vector<ChartAction> actions;
  friend bool operator==(const TransitionDef &, const TransitionDef &) = default;
};

struct Statechart
{
  Loc loc;
  std::string name;
  /// Role of the scoped contract, an actor name, or an actor kind keyword.
  std::string subject;
  std::string scoped_to;
  std::vector<ChartAttr> attrs;
  std::vector<std::string> states;
  std::string initial;
  std::vector<TransitionDef> transitions;
  friend bool operator==(const Statechart &, const Statechart &) = default;
};

enum class Subsystem
{
  onchain,
  offchain,
  both,
};

std::string_view to_string(Subsystem s) noexcept;

struct UserStory
{
  Loc loc;
  std::string id;
  std::string actor;
  Subsystem subsystem = Subsystem::onchain;
  std::string narrative;
  friend bool operator==(const UserStory &, const UserStory &) = default;
};

// ---------------------------------------------------------------------------
// Scenarios

/// Participant stereotype of a sequence diagram.
enum class ParticipantKind
{
  person,
  system,
  device,
  account,
  contract,
  oracle,
};

std::string_view to_string(ParticipantKind k) noexcept;
std::optional<ParticipantKind> parse_participant_kind(std::string_view word);

struct Participant
{
  Loc loc;
  std::string alias;
  ParticipantKind kind = ParticipantKind::person;
  /// ActorDef name for actor kinds, ContractDef name for contract/oracle.
  std::string ref;

  [[nodiscard]] bool is_contract() const noexcept
  {
    return kind == ParticipantKind::contract || kind == ParticipantKind::oracle;
  }
  [[nodiscard]] bool is_oracle() const noexcept { return kind == ParticipantKind::oracle; }
  friend bool operator==(const Participant &, const Participant &) = default;
};

struct GenesisEntry
{
  Loc loc;
  std::string alias;
  Int wei;
  friend bool operator==(const GenesisEntry &, const GenesisEntry &) = default;
};

/// Literal argument of a scenario message.
struct Literal
{
  struct Address
  {
    std::string id;  ///< participant alias or `0x...`
    friend bool operator==(const Address &, const Address &) = default;
  };
  struct List
  {
    bool tuple = false;  ///< `(a, b)` when true, `[a, b]` otherwise
    std::vector<Literal> items;
    friend bool operator==(const List &, const List &) = default;
  };

  std::variant<Int, bool, std::string, Address, List> value;
  friend bool operator==(const Literal &, const Literal &) = default;
};

std::string to_string(const Literal &lit);

enum class MessageKind
{
  create,
  call,
  view_call,
  eth_transfer,
};

std::string_view to_string(MessageKind k) noexcept;

struct MessageSpec
{
  Loc loc;
  MessageKind kind = MessageKind::call;
  std::string from;
  std::string to;
  std::optional<std::string> function;
  std::vector<Literal> args;
  Int value;
  std::optional<Int> at;
  friend bool operator==(const MessageSpec &, const MessageSpec &) = default;
};

struct Outcome
{
  enum class Kind
  {
    ok,
    revert,
    error,
  };
  Kind kind = Kind::ok;
  /// Revert reason (modifier, chart, or builtin reason) or error code.
  std::string detail;

  static Outcome ok() { return {}; }
  static Outcome revert(std::string reason) { return {Kind::revert, std::move(reason)}; }
  static Outcome error(std::string code) { return {Kind::error, std::move(code)}; }

  friend bool operator==(const Outcome &, const Outcome &) = default;
};

/// `ok`, `revert onlyOwner`, `error overflow`
std::string to_string(const Outcome &o);

struct Scenario
{
  Loc loc;
  std::string name;
  std::vector<Participant> participants;
  std::vector<GenesisEntry> genesis;
  std::vector<MessageSpec> messages;
  std::vector<Outcome> expected;  ///< parallel to messages

  [[nodiscard]] const Participant *participant(std::string_view alias) const;
  friend bool operator==(const Scenario &, const Scenario &) = default;
};

// ---------------------------------------------------------------------------

struct Model
{
  /// Source path the model was parsed from; used in diagnostics only.
  std::string file;
  std::string name;
  std::string goal;
  std::vector<ContractDef> contracts;
  std::vector<ActorDef> actors;
  std::vector<Scenario> scenarios;
  std::vector<Statechart> statecharts;
  std::vector<UserStory> stories;

  [[nodiscard]] const ContractDef *contract(std::string_view name) const;
  [[nodiscard]] const ActorDef *actor(std::string_view name) const;
  [[nodiscard]] const Scenario *scenario(std::string_view name) const;
  [[nodiscard]] const Statechart *statechart(std::string_view name) const;

  /// Structural equality: everything except `file` and source locations.
  friend bool operator==(const Model &a, const Model &b);
};

}  // namespace boscribe

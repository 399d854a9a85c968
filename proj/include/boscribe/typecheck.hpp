#pragma once

#include "boscribe/resolve.hpp"

#include <optional>
#include <string>
#include <vector>

namespace boscribe
{

/// What a guard or `sets` expression evaluates to.
enum class ValueKind
{
  integer,
  boolean,
  address,
  string,
  bytes,
  enumeration,
};

std::string_view to_string(ValueKind k) noexcept;

struct ValueType
{
  ValueKind kind = ValueKind::integer;
  std::string enum_name;  // enumeration only

  friend bool operator==(const ValueType &, const ValueType &) = default;
};

std::string to_string(const ValueType &t);

/// Expression view of a declared type. Structs, arrays and mappings have no
/// expression form and yield nullopt.
std::optional<ValueType> value_type_of(const TypeRef &t);

/// Names visible to an expression inside one contract.
struct ExprScope
{
  const FlatContract *contract = nullptr;
  std::vector<Param> params;
  /// Statecharts scoped to the contract; `instate`/`attr` resolve against them.
  std::vector<const Statechart *> charts;
};

/// Charts of `model` scoped to `contract`, in declaration order.
std::vector<const Statechart *> charts_scoped_to(const Model &model, std::string_view contract);

/// The unique chart among `charts` declaring state `state` (or attribute
/// `attr`); nullptr when absent or ambiguous.
const Statechart *chart_with_state(const std::vector<const Statechart *> &charts, std::string_view state);
const Statechart *chart_with_attr(const std::vector<const Statechart *> &charts, std::string_view attr);

/// Type-checks `e`, appending V015 diagnostics for unbound names and operand
/// mismatches. Returns the expression's type when it is well-typed.
std::optional<ValueType> check_expr(const ExprRef &e, const ExprScope &scope, const std::string &file,
                                    std::vector<Diagnostic> &out);

/// check_expr plus the requirement that the result is boolean.
bool check_guard(const ExprRef &e, const ExprScope &scope, const std::string &file,
                 std::vector<Diagnostic> &out);

}  // namespace boscribe

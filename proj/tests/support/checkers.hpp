#pragma once

// Structural checkers for emitted artifacts. Each returns the problems it
// found; an empty list means the text is well formed.

#include <string>
#include <string_view>
#include <vector>

namespace boscribe::testing
{

/// A `digraph` with balanced braces, well-formed statements and attribute
/// lists, edges between declared nodes, and balanced record labels.
std::vector<std::string> check_dot(std::string_view text);

/// Balanced and properly nested (), [] and {} outside strings and comments.
std::vector<std::string> check_solidity_balance(std::string_view text);

/// Function and event signatures declared in Solidity text, as
/// `name(type,type)`; the constructor and `receive` keep their keyword names.
std::vector<std::string> solidity_signatures(std::string_view text);

/// The same `kind name(param,...)` form for each entry of an ABI summary.
std::vector<std::string> abi_signatures(std::string_view abi_json);

}  // namespace boscribe::testing

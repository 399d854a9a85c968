#pragma once

#include "boscribe/resolve.hpp"

#include <string>
#include <string_view>

namespace boscribe
{

struct DiagramOptions
{
  bool show_events = true;
  bool show_effects = false;
};

/// Class diagram of every contract, struct and enum as DOT record nodes.
std::string emit_class_dot(const ResolvedModel &resolved, const DiagramOptions &options = {});

/// One statechart as DOT. Throws Error for an unknown chart.
std::string emit_statechart_dot(const ResolvedModel &resolved, std::string_view chart);

/// One scenario as a Mermaid sequenceDiagram. Throws Error for an unknown scenario.
std::string emit_sequence_mermaid(const ResolvedModel &resolved, std::string_view scenario);

}  // namespace boscribe

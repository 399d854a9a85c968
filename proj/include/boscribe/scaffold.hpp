#pragma once

// Project skeleton written by `boscribe init`.

#include <string>
#include <string_view>
#include <vector>

namespace boscribe
{

struct ScaffoldFile
{
  std::string path;  ///< relative, `/`-separated
  std::string text;
};

/// `myDapp` -> `MyDapp`; never empty, never starts with a digit.
std::string system_name(std::string_view project);

/// A minimal model that passes `check` with no findings.
std::string starter_model(std::string_view project);

/// Markdown checklist of the eight process steps.
std::string process_checklist();

/// goal.md, actors.md, stories/, onchain/model.bos, offchain/README.md and
/// process-checklist.md, in that order.
std::vector<ScaffoldFile> scaffold(std::string_view project);

}  // namespace boscribe

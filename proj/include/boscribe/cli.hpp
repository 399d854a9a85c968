#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace boscribe
{

/// Runs one `boscribe` invocation. `args` excludes the program name.
/// Returns 0 on success, 1 for model findings or scenario mismatches and 2
/// for usage or I/O problems.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, bool color = false);

}  // namespace boscribe

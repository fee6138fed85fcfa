#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace frost {

// Runs the command-line surface. Returns the process exit code:
//   0  success
//   2  invariant violation in inputs or a failed check
//   3  refuted verdict where the verb demanded a measure
//   4  malformed input (JSON, rationals, words, missing files)
//   64 usage errors (unknown verb, bad flags)
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace frost

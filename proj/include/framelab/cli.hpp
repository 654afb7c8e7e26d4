#pragma once

#include <string>
#include <vector>

namespace framelab::cli {

// Entry point behind the framelab binary. Subcommands:
//   gen, ft, profile, gram, erdos, pinned, coarea, report.
// Returns 0 on success, 2 on usage errors, 1 on runtime failures. Identical
// arguments (and seeds) produce byte-identical file outputs.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace framelab::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace deepwave::cli {

/// Entry point for the `deepwave` tool; `args` excludes the program name.
/// Returns the process exit code (0 on success, 1 on any error, after a
/// single-line diagnostic on `err`).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace deepwave::cli

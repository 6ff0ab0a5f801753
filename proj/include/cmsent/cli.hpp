#pragma once

#include <string>
#include <vector>

namespace cmsent {

// Full command-line surface, callable in-process (tests drive it directly).
// args excludes the program name. Returns the process exit code:
//   0 success, 1 usage error, 2 data/validation error.
// Identical invocations produce byte-identical output files; all randomness
// flows from --seed (default 42). Concurrent invocations writing into the
// same output directory are unsupported.
int run_cli(const std::vector<std::string>& args);

}  // namespace cmsent

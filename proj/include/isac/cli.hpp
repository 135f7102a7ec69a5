#pragma once

#include <string>
#include <vector>

namespace isac::cli {

// Full command-line entry point (arguments without argv[0]). Returns the
// process exit status; failures print a one-line JSON error record to
// stderr with the error code and detail.
int run(const std::vector<std::string>& args);

} // namespace isac::cli

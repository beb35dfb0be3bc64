#pragma once

#include <string>
#include <vector>

namespace evclust::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitNotConverged = 2;

// Full command-line driver; returns the process exit code.
int run(int argc, const char* const* argv);

// Same driver fed programmatically; args exclude the program name.
int run(const std::vector<std::string>& args);

}  // namespace evclust::cli

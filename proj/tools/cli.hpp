#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qmw::cli {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;  // not a quandle, invalid mesh, bad input file, cap hit
constexpr int kExitUsage = 2;

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmw::cli

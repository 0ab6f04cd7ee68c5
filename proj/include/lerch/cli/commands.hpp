#pragma once

#include <ostream>
#include <span>
#include <string>

namespace lerch::cli {

/// Runs one invocation (args exclude the program name). Returns the exit
/// code: 0 success, 1 computation error, 2 usage or configuration error.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace lerch::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace egp::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

/// Runs one command line (without the program name). Returns 0 on success, 1 when a
/// verification fails, 2 on a usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace egp::cli

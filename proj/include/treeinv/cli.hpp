#pragma once

// Command-line front end. Exit codes: 0 success or verified, 1 a check
// failed, 2 bad input or usage.

#include <iosfwd>
#include <string>
#include <vector>

namespace treeinv::cli {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;

/// args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Worker count from --threads, else TREEINVERSE_THREADS, else 1. Throws
/// InputError on a malformed value.
unsigned resolve_threads(unsigned flag_value, const char *env_value);

} // namespace treeinv::cli

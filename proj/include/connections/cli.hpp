#pragma once

#include <iosfwd>

namespace connections {

// Entry point of the `connections` tool. Returns the process exit code;
// errors are reported as one line on `err`.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace connections

#pragma once

#include <ostream>

namespace symspace {

/// Entry point of the `symspace` command; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace symspace

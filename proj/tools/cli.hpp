#pragma once

#include <iostream>

namespace bredon {

inline constexpr const char* kToolkitVersion = "0.1.0";

/// Entry point of the `bredon` command. Exit status: 0 success, 1 a
/// verification did not pass, 2 bad input or usage.
int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
             std::ostream& err = std::cerr);

}  // namespace bredon

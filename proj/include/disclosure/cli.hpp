#pragma once

#include <ostream>

namespace disclosure::cli {

// exit codes: 0 ok, 1 config or usage error, 2 solver error
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace disclosure::cli

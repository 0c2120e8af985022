#pragma once

#include <ostream>

namespace gtorus::cli {

/// Runs the command line. Exit codes: 0 success, 1 domain error, 2 usage error.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gtorus::cli

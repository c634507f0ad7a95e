#pragma once

#include <ostream>

namespace sharpkit::cli {

/// Exit codes: 0 success, 1 runtime error, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sharpkit::cli

#pragma once

#include <stdexcept>
#include <string>

namespace sharpkit {

enum class Errc {
    invalid_argument,
    infeasible,
    rank_deficient,
    empty_foreground,
    degenerate_moment,
    no_convergence,
    io,
    parse,
};

const char* to_string(Errc code) noexcept;

// Every failure raised by the library carries a machine-readable code so that
// callers such as the benchmark harness can tell exclusions from hard errors.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what);

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace sharpkit

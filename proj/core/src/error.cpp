#include "sharpkit/error.hpp"

namespace sharpkit {

const char* to_string(Errc code) noexcept
{
    switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::infeasible: return "infeasible";
    case Errc::rank_deficient: return "rank deficient";
    case Errc::empty_foreground: return "empty foreground";
    case Errc::degenerate_moment: return "degenerate moment";
    case Errc::no_convergence: return "no convergence";
    case Errc::io: return "io";
    case Errc::parse: return "parse";
    }
    return "unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(what), code_(code)
{
}

} // namespace sharpkit

#pragma once

// Private JSON mapping shared by kernel_io.cpp and report.cpp.

#include "sharpkit/kernel_io.hpp"

#include <json.hpp>

namespace sharpkit::detail {

nlohmann::json kernel_json(const KernelFile& k);
KernelFile kernel_from(const nlohmann::json& j);
nlohmann::json logistic_json(const LogisticParams& p);
LogisticParams logistic_from(const nlohmann::json& j);

} // namespace sharpkit::detail

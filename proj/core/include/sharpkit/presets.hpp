#pragma once

#include "sharpkit/kernel_synthesis.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace sharpkit {

struct PresetKernel {
    HvsKernelSpec spec;
    int table_cutoff = 0; ///< tuning-table cutoff integer, recorded verbatim and not interpreted
};

struct Preset {
    std::string name;
    std::vector<PresetKernel> kernels; ///< one (single kernel) or two (combination)
    /// Empirical direction of the score: C = -ln(mu_m) grows as images blur.
    bool higher_is_sharper = false;

    std::string note(std::size_t kernel_index) const;
};

const std::vector<Preset>& presets();
/// nullptr if no preset has this name.
const Preset* find_preset(std::string_view name);
std::string preset_list();

} // namespace sharpkit

#include "sharpkit/presets.hpp"

#include <numbers>
#include <sstream>

namespace sharpkit {

namespace {

PresetKernel make(double alpha, double beta, int moment, int table_cutoff)
{
    PresetKernel k;
    k.spec.gg = {alpha, beta};
    k.spec.cutoff = 0.6 * std::numbers::pi;
    k.spec.terms = 3;
    k.spec.tap_length = 25;
    k.spec.moment = moment;
    k.table_cutoff = table_cutoff;
    return k;
}

} // namespace

const std::vector<Preset>& presets()
{
    static const std::vector<Preset> all{
        {"natural-1", {make(1.7, 1.4, 12, 13)}, false},
        {"natural-2", {make(1.7, 1.4, 12, 13), make(0.7, 0.8, 4, 26)}, false},
        {"synthetic-1", {make(0.7, 0.8, 20, 19)}, false},
        {"synthetic-2", {make(0.7, 0.8, 20, 19), make(0.7, 0.9, 12, 20)}, false},
    };
    return all;
}

const Preset* find_preset(std::string_view name)
{
    for (const auto& p : presets())
        if (p.name == name)
            return &p;
    return nullptr;
}

std::string preset_list()
{
    std::string out;
    for (const auto& p : presets()) {
        if (!out.empty())
            out += ", ";
        out += p.name;
    }
    return out;
}

std::string Preset::note(std::size_t kernel_index) const
{
    const auto& k = kernels.at(kernel_index);
    std::ostringstream os;
    os << name << " kernel " << kernel_index + 1 << ": alpha=" << k.spec.gg.alpha << " beta=" << k.spec.gg.beta
       << " moment=" << k.spec.moment << " table_cutoff=" << k.table_cutoff
       << " (tuning-table units, not interpreted; built with cutoff 0.6*pi)"
       << "; higher_is_sharper=" << (higher_is_sharper ? "true" : "false");
    return os.str();
}

} // namespace sharpkit

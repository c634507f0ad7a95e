#pragma once

#include "sharpkit/kernel_synthesis.hpp"
#include "sharpkit/statistics.hpp"

#include <array>
#include <filesystem>
#include <string>

namespace sharpkit {

/// Contents of a kernel JSON file:
/// { "alpha", "beta", "cutoff_over_pi", "terms", "tap_length", "moment",
///   "taps": [...full length...], "norm_gain", "preset_note" }
/// An optional "higher_is_sharper" flag records the score orientation.
struct KernelFile {
    HvsKernelSpec spec;
    FirKernel kernel;
    std::string preset_note;
    bool higher_is_sharper = false;

    bool operator==(const KernelFile&) const = default;
};

std::string kernel_to_json(const KernelFile& k, int indent = 2);
KernelFile kernel_from_json(const std::string& text);
void save_kernel(const KernelFile& k, const std::filesystem::path& path);
KernelFile load_kernel(const std::filesystem::path& path);

/// Output of `calibrate`: two kernels, their weights and the logistic map.
struct ComboFile {
    std::array<KernelFile, 2> kernels;
    std::array<double, 2> weights{1.0, 0.0};
    LogisticParams logistic;
    double rmse = 0.0;
};

std::string combo_to_json(const ComboFile& c, int indent = 2);
ComboFile combo_from_json(const std::string& text);
void save_combo(const ComboFile& c, const std::filesystem::path& path);
ComboFile load_combo(const std::filesystem::path& path);

/// True if the JSON document is a combination file (has a "kernels" array).
bool is_combo_json(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace sharpkit

#include "kernel_json.hpp"

#include "sharpkit/error.hpp"

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace sharpkit {

namespace detail {

nlohmann::json kernel_json(const KernelFile& k)
{
    return {
        {"alpha", k.spec.gg.alpha},
        {"beta", k.spec.gg.beta},
        {"cutoff_over_pi", k.spec.cutoff / std::numbers::pi},
        {"terms", k.spec.terms},
        {"tap_length", k.spec.tap_length},
        {"moment", k.spec.moment},
        {"taps", k.kernel.taps},
        {"norm_gain", k.kernel.norm_gain},
        {"preset_note", k.preset_note},
        {"higher_is_sharper", k.higher_is_sharper},
    };
}

KernelFile kernel_from(const nlohmann::json& j)
{
    KernelFile k;
    try {
        k.spec.gg.alpha = j.at("alpha").get<double>();
        k.spec.gg.beta = j.at("beta").get<double>();
        k.spec.cutoff = j.at("cutoff_over_pi").get<double>() * std::numbers::pi;
        k.spec.terms = j.at("terms").get<int>();
        k.spec.tap_length = j.at("tap_length").get<int>();
        k.spec.moment = j.at("moment").get<int>();
        k.kernel.taps = j.at("taps").get<std::vector<double>>();
        k.kernel.norm_gain = j.at("norm_gain").get<double>();
        k.preset_note = j.value("preset_note", std::string{});
        k.higher_is_sharper = j.value("higher_is_sharper", false);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse, std::string("kernel JSON: ") + e.what());
    }

    auto& taps = k.kernel.taps;
    if (taps.empty() || taps.size() % 2 == 0)
        throw Error(Errc::parse, "kernel JSON: taps must have odd length");
    if (static_cast<int>(taps.size()) != k.spec.tap_length)
        throw Error(Errc::parse, "kernel JSON: tap_length does not match the taps array");
    double peak = 0.0;
    for (double t : taps) {
        if (!std::isfinite(t))
            throw Error(Errc::parse, "kernel JSON: non-finite tap");
        peak = std::max(peak, std::abs(t));
    }
    for (std::size_t i = 0, j2 = taps.size() - 1; i < j2; ++i, --j2) {
        if (std::abs(taps[i] - taps[j2]) > 1e-12 * peak)
            throw Error(Errc::parse, "kernel JSON: taps are not symmetric");
        taps[j2] = taps[i];
    }
    if (k.spec.moment < 2 || k.spec.moment % 2 != 0)
        throw Error(Errc::parse, "kernel JSON: moment must be even and >= 2");
    return k;
}

nlohmann::json logistic_json(const LogisticParams& p) { return p.k; }

LogisticParams logistic_from(const nlohmann::json& j)
{
    LogisticParams p;
    const auto v = j.get<std::vector<double>>();
    if (v.size() != 5)
        throw Error(Errc::parse, "logistic parameters must have 5 entries");
    std::copy(v.begin(), v.end(), p.k.begin());
    return p;
}

} // namespace detail

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::io, "cannot open " + path.string() + ": " + std::strerror(errno));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(Errc::io, "cannot write " + path.string() + ": " + std::strerror(errno));
    out << text;
    if (!out)
        throw Error(Errc::io, "write failed for " + path.string() + ": " + std::strerror(errno));
}

std::string kernel_to_json(const KernelFile& k, int indent) { return detail::kernel_json(k).dump(indent) + "\n"; }

KernelFile kernel_from_json(const std::string& text)
{
    try {
        return detail::kernel_from(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse, std::string("kernel JSON: ") + e.what());
    }
}

void save_kernel(const KernelFile& k, const std::filesystem::path& path) { write_text_file(path, kernel_to_json(k)); }

KernelFile load_kernel(const std::filesystem::path& path) { return kernel_from_json(read_text_file(path)); }

std::string combo_to_json(const ComboFile& c, int indent)
{
    nlohmann::json j{
        {"kernels", {detail::kernel_json(c.kernels[0]), detail::kernel_json(c.kernels[1])}},
        {"weights", c.weights},
        {"logistic", detail::logistic_json(c.logistic)},
        {"rmse", c.rmse},
    };
    return j.dump(indent) + "\n";
}

ComboFile combo_from_json(const std::string& text)
{
    try {
        const auto j = nlohmann::json::parse(text);
        const auto& ks = j.at("kernels");
        if (!ks.is_array() || ks.size() != 2)
            throw Error(Errc::parse, "combo JSON: exactly two kernels required");
        ComboFile c;
        c.kernels = {detail::kernel_from(ks[0]), detail::kernel_from(ks[1])};
        const auto w = j.at("weights").get<std::vector<double>>();
        if (w.size() != 2)
            throw Error(Errc::parse, "combo JSON: weights must have two entries");
        c.weights = {w[0], w[1]};
        c.logistic = detail::logistic_from(j.at("logistic"));
        c.rmse = j.value("rmse", 0.0);
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse, std::string("combo JSON: ") + e.what());
    }
}

void save_combo(const ComboFile& c, const std::filesystem::path& path) { write_text_file(path, combo_to_json(c)); }

ComboFile load_combo(const std::filesystem::path& path) { return combo_from_json(read_text_file(path)); }

bool is_combo_json(const std::string& text)
{
    try {
        const auto j = nlohmann::json::parse(text);
        return j.is_object() && j.contains("kernels");
    } catch (const nlohmann::json::exception&) {
        return false;
    }
}

} // namespace sharpkit

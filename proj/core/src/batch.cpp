#include "sharpkit/harness.hpp"
#include "sharpkit/image_io.hpp"
#include "sharpkit/scoring.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

namespace sharpkit {

void KernelConfig::validate() const
{
    if (kernels.empty() || kernels.size() > 2)
        throw Error(Errc::invalid_argument, "a kernel configuration holds one or two kernels");
    if (weights && kernels.size() != 2)
        throw Error(Errc::invalid_argument, "weights require exactly two kernels");
    if (weights)
        for (double w : *weights)
            if (!std::isfinite(w))
                throw Error(Errc::invalid_argument, "combination weights must be finite");
    for (const auto& k : kernels) {
        if (k.kernel.taps.empty() || k.kernel.taps.size() % 2 == 0)
            throw Error(Errc::invalid_argument, "kernel taps must have odd length");
        if (k.spec.moment < 2 || k.spec.moment % 2 != 0)
            throw Error(Errc::invalid_argument, "moment order must be even and >= 2");
    }
}

KernelConfig preset_config(const Preset& preset)
{
    KernelConfig cfg;
    cfg.label = preset.name;
    cfg.higher_is_sharper = preset.higher_is_sharper;
    for (std::size_t i = 0; i < preset.kernels.size(); ++i) {
        KernelFile f;
        f.spec = preset.kernels[i].spec;
        f.kernel = synthesize(f.spec);
        f.preset_note = preset.note(i);
        f.higher_is_sharper = preset.higher_is_sharper;
        cfg.kernels.push_back(std::move(f));
    }
    return cfg;
}

KernelConfig kernel_config(const KernelFile& file)
{
    KernelConfig cfg;
    cfg.kernels = {file};
    cfg.higher_is_sharper = file.higher_is_sharper;
    cfg.label = file.preset_note.empty() ? "custom kernel" : file.preset_note;
    return cfg;
}

KernelConfig combo_config(const ComboFile& combo)
{
    KernelConfig cfg;
    cfg.kernels = {combo.kernels[0], combo.kernels[1]};
    cfg.weights = combo.weights;
    cfg.higher_is_sharper = combo.kernels[0].higher_is_sharper;
    cfg.label = "calibrated combination";
    return cfg;
}

std::vector<double> component_scores(const GrayImage& img, const KernelConfig& cfg)
{
    std::vector<double> out;
    out.reserve(cfg.kernels.size());
    for (const auto& k : cfg.kernels)
        out.push_back(score_single(img, k.kernel, k.spec.moment).value);
    return out;
}

double combined_score(std::span<const double> components, const KernelConfig& cfg)
{
    if (components.size() != cfg.kernels.size())
        throw Error(Errc::invalid_argument, "one component score per kernel expected");
    if (components.size() == 1)
        return components[0];
    if (!cfg.weights)
        throw Error(Errc::invalid_argument, "two kernels need combination weights");
    return combine_scores({components[0], components[1]}, *cfg.weights);
}

int resolve_workers(int requested)
{
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    n = std::max(n, 1);
    if (const char* cap = std::getenv("SHARPKIT_MAX_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(cap, &end, 10);
        if (end != cap && *end == '\0' && v >= 1)
            n = std::min<long>(n, v);
    }
    return n;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body)
{
    const auto threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(workers, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back(run);
    pool.clear();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

namespace {

BatchScore score_one(const GrayImage& img, const KernelConfig& cfg, int repeats)
{
    using clock = std::chrono::steady_clock;
    BatchScore out;
    std::vector<double> times;
    for (int r = 0; r < std::max(repeats, 1); ++r) {
        const auto t0 = clock::now();
        try {
            out.components = component_scores(img, cfg);
        } catch (const Error& e) {
            if (e.code() != Errc::empty_foreground && e.code() != Errc::degenerate_moment)
                throw;
            out.failure = e.code();
            out.message = e.what();
            out.components.clear();
            return out;
        }
        times.push_back(std::chrono::duration<double>(clock::now() - t0).count());
    }
    std::sort(times.begin(), times.end());
    out.seconds = std::max(times[times.size() / 2], 1e-9);
    if (cfg.scalar())
        out.value = combined_score(out.components, cfg);
    return out;
}

} // namespace

std::vector<BatchScore> score_images(std::span<const GrayImage> images, const KernelConfig& cfg, int workers,
                                     int repeats)
{
    cfg.validate();
    std::vector<BatchScore> out(images.size());
    parallel_for(images.size(), workers, [&](std::size_t i) { out[i] = score_one(images[i], cfg, repeats); });
    return out;
}

std::vector<BatchScore> score_files(std::span<const std::filesystem::path> paths, const KernelConfig& cfg,
                                    int workers, int repeats)
{
    cfg.validate();
    std::vector<BatchScore> out(paths.size());
    parallel_for(paths.size(), workers, [&](std::size_t i) {
        const auto img = load_gray(paths[i]);
        try {
            out[i] = score_one(img, cfg, repeats);
        } catch (const Error& e) {
            throw Error(e.code(), paths[i].string() + ": " + e.what());
        }
    });
    return out;
}

} // namespace sharpkit

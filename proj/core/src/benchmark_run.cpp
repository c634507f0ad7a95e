#include "sharpkit/harness.hpp"

#include <algorithm>

namespace sharpkit {

namespace {

template <class F>
std::optional<double> optional_stat(F&& f, const char* name, std::vector<std::string>& notes)
{
    try {
        return f();
    } catch (const Error& e) {
        notes.push_back(std::string(name) + " not reported: " + e.what());
        return std::nullopt;
    }
}

} // namespace

BenchReport evaluate_scores(std::vector<ScoredImage> images, const std::vector<ManifestEntry>& entries,
                            const KernelConfig& kernel, const EvalConfig& eval)
{
    if (images.size() != entries.size())
        throw Error(Errc::invalid_argument, "scored images and manifest entries differ in count");
    if (images.size() < 3)
        throw Error(Errc::invalid_argument,
                    "need at least 3 scorable images, have " + std::to_string(images.size()));

    BenchReport r;
    r.kernel = kernel;
    r.config = eval;

    std::vector<double> x, y;
    for (const auto& im : images) {
        x.push_back(im.objective);
        y.push_back(im.subjective);
    }

    if (x.size() >= 6) {
        r.fit_model = "logistic";
        try {
            r.logistic = fit_logistic(x, y).params;
        } catch (const FitError& e) {
            r.logistic = e.best();
            r.notes.push_back(std::string(e.what()) + "; using the best iterate");
        }
    } else {
        r.fit_model = "affine";
        r.logistic = fit_affine(x, y).params;
        r.notes.push_back("fewer than 6 images: affine calibration instead of the logistic map");
    }
    const auto fitted = logistic_map(x, r.logistic);
    for (std::size_t i = 0; i < images.size(); ++i)
        images[i].fitted = fitted[i];

    r.plcc = plcc(fitted, y);
    r.rmse = rmse(fitted, y);
    r.srcc = srcc(x, y);
    r.krcc = krcc(x, y);

    ScorePairs pairs{x, y, std::nullopt, std::nullopt};
    const bool all_std = std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.std.has_value(); });
    const bool all_group =
        std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.group.has_value(); });
    if (all_std) {
        pairs.subjective_std.emplace();
        for (const auto& e : entries)
            pairs.subjective_std->push_back(*e.std);
    }
    if (all_group) {
        pairs.groups.emplace();
        for (const auto& e : entries)
            pairs.groups->push_back(*e.group);
    }
    const auto labels = pair_significance(pairs, eval.significance);
    r.pairs = labels.size();
    r.significant_pairs = static_cast<std::size_t>(
        std::count_if(labels.begin(), labels.end(), [](const PairLabel& l) { return l.significant; }));
    const auto orient = kernel.higher_is_sharper ? ScoreOrientation::higher_is_better : ScoreOrientation::higher_is_worse;
    r.auc_ds = optional_stat([&] { return auc_ds(x, labels); }, "auc_ds", r.notes);
    r.auc_bw = optional_stat([&] { return auc_bw(x, labels, orient); }, "auc_bw", r.notes);
    r.c0 = optional_stat([&] { return c0(x, labels, orient); }, "c0", r.notes);

    double total = 0.0;
    for (const auto& im : images)
        total += im.seconds;
    r.mean_seconds = total / static_cast<double>(images.size());
    r.images = std::move(images);
    return r;
}

BenchReport run_benchmark(const std::vector<ManifestEntry>& manifest, const KernelConfig& kernel,
                          const EvalConfig& eval)
{
    kernel.validate();
    if (!kernel.scalar())
        throw Error(Errc::invalid_argument, "benchmarking two kernels needs combination weights");

    std::vector<std::filesystem::path> paths;
    for (const auto& e : manifest)
        paths.push_back(e.path);
    const auto scores = score_files(paths, kernel, resolve_workers(eval.workers), eval.time_repeats);

    std::vector<ScoredImage> images;
    std::vector<ManifestEntry> kept;
    std::vector<Exclusion> exclusions;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        const auto& s = scores[i];
        if (s.failure) {
            exclusions.push_back({manifest[i].path.string(), s.message});
            continue;
        }
        images.push_back({manifest[i].path.string(), *s.value, manifest[i].subjective, 0.0, s.seconds, s.components});
        kept.push_back(manifest[i]);
    }
    if (images.size() < 3)
        throw Error(Errc::invalid_argument, "need at least 3 scorable images, have " + std::to_string(images.size()) +
                                                " (" + std::to_string(exclusions.size()) + " excluded)");
    auto r = evaluate_scores(std::move(images), kept, kernel, eval);
    r.exclusions = std::move(exclusions);
    return r;
}

} // namespace sharpkit

#include "sharpkit/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sharpkit {

namespace {

// Unbiased draw from [0, bound) by rejection; independent of the standard
// library's distribution implementation so tables are portable.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound)
{
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const std::uint64_t v = rng();
        if (v < limit)
            return v % bound;
    }
}

std::optional<double> subset_plcc(std::span<const double> x, std::span<const double> y, std::string& note)
{
    try {
        LogisticParams p;
        if (x.size() >= 6) {
            try {
                p = fit_logistic(x, y).params;
            } catch (const FitError& e) {
                p = e.best();
                note = "logistic fit did not converge; best iterate used";
            }
        } else {
            p = fit_affine(x, y).params;
            note = "affine calibration (fewer than 6 samples)";
        }
        return plcc(logistic_map(x, p), y);
    } catch (const Error& e) {
        note = std::string("skipped: ") + e.what();
        return std::nullopt;
    }
}

} // namespace

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::mt19937_64& rng)
{
    if (k > n)
        throw Error(Errc::invalid_argument, "cannot sample more indices than available");
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i)
        idx[i] = i;
    // Partial Fisher-Yates: the first k slots become a uniform k-subset.
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(bounded(rng, n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::vector<ScalabilityRow> run_scalability(std::span<const double> objective, std::span<const double> subjective,
                                            std::span<const double> fractions, int trials, std::uint64_t seed)
{
    if (objective.size() != subjective.size())
        throw Error(Errc::invalid_argument, "objective and subjective scores differ in length");
    if (trials < 1)
        throw Error(Errc::invalid_argument, "trials must be >= 1");
    for (double f : fractions)
        if (!(f > 0.0 && f <= 1.0))
            throw Error(Errc::invalid_argument, "fractions must lie in (0, 1]");

    const std::size_t n = objective.size();
    std::mt19937_64 rng(seed);
    std::vector<ScalabilityRow> rows;
    for (double f : fractions) {
        const auto k = static_cast<std::size_t>(std::llround(f * static_cast<double>(n)));
        for (int t = 0; t < trials; ++t) {
            ScalabilityRow row{f, t + 1, k, std::nullopt, {}};
            if (k < 3) {
                row.note = "skipped: subset of " + std::to_string(k) + " images is smaller than 3";
                rows.push_back(std::move(row));
                continue;
            }
            const auto idx = sample_indices(n, k, rng);
            std::vector<double> x, y;
            x.reserve(k);
            y.reserve(k);
            for (auto i : idx) {
                x.push_back(objective[i]);
                y.push_back(subjective[i]);
            }
            row.plcc = subset_plcc(x, y, row.note);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<ScalabilityRow> run_scalability(const std::vector<ManifestEntry>& manifest, const KernelConfig& kernel,
                                            std::span<const double> fractions, int trials, std::uint64_t seed,
                                            int workers)
{
    kernel.validate();
    if (!kernel.scalar())
        throw Error(Errc::invalid_argument, "two kernels need combination weights");
    std::vector<std::filesystem::path> paths;
    for (const auto& e : manifest)
        paths.push_back(e.path);
    const auto scores = score_files(paths, kernel, resolve_workers(workers));
    std::vector<double> x, y;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        if (scores[i].failure)
            continue;
        x.push_back(*scores[i].value);
        y.push_back(manifest[i].subjective);
    }
    return run_scalability(x, y, fractions, trials, seed);
}

std::string scalability_csv(const std::vector<ScalabilityRow>& rows)
{
    std::string out = "fraction,trial,subset,plcc,note\n";
    for (const auto& r : rows) {
        out += format_number(r.fraction) + ',' + std::to_string(r.trial) + ',' + std::to_string(r.subset) + ',';
        if (r.plcc)
            out += format_number(*r.plcc);
        out += ',';
        if (!r.note.empty()) {
            auto note = r.note;
            std::replace(note.begin(), note.end(), '"', '\'');
            out += '"' + note + '"';
        }
        out += '\n';
    }
    return out;
}

} // namespace sharpkit

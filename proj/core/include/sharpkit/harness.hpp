#pragma once

#include "sharpkit/error.hpp"
#include "sharpkit/image.hpp"
#include "sharpkit/kernel_io.hpp"
#include "sharpkit/presets.hpp"
#include "sharpkit/statistics.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace sharpkit {

// ---------------------------------------------------------------------------
// Manifests

struct ManifestEntry {
    std::filesystem::path path;
    double subjective = 0.0;
    std::optional<double> std;
    std::optional<std::string> group;

    bool operator==(const ManifestEntry&) const = default;
};

/// CSV with header `path,subjective[,std][,group]`. Relative paths resolve
/// against the manifest's directory. Errors name the offending line.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

std::vector<ManifestEntry> parse_manifest(const std::string& text, const std::filesystem::path& base_dir,
                                          bool require_existing = true);

/// Paths are written relative to the manifest's directory where possible.
void write_manifest(const std::filesystem::path& path, const std::vector<ManifestEntry>& entries);

// ---------------------------------------------------------------------------
// Synthetic blur

/// Separable Gaussian blur, radius ceil(4 sigma), unit-sum taps, mirror padding.
GrayImage gaussian_blur(const GrayImage& img, double sigma);

FirKernel gaussian_taps(double sigma);

// ---------------------------------------------------------------------------
// Kernel configuration

/// One kernel, or two kernels combined with weights.
struct KernelConfig {
    std::vector<KernelFile> kernels;
    std::optional<std::array<double, 2>> weights;
    std::string label;
    bool higher_is_sharper = false;

    /// One or two kernels; weights only with two.
    void validate() const;
    /// True if combined_score yields one number per image.
    bool scalar() const noexcept { return kernels.size() == 1 || weights.has_value(); }

    bool operator==(const KernelConfig&) const = default;
};

KernelConfig preset_config(const Preset& preset);
KernelConfig kernel_config(const KernelFile& file);
KernelConfig combo_config(const ComboFile& combo);

/// Per-kernel scores C_1[, C_2].
std::vector<double> component_scores(const GrayImage& img, const KernelConfig& cfg);
/// The scalar score; throws Errc::invalid_argument for two kernels without weights.
double combined_score(std::span<const double> components, const KernelConfig& cfg);

// ---------------------------------------------------------------------------
// Batch scoring

/// Worker count for `requested` (0 = hardware concurrency), capped by the
/// optional SHARPKIT_MAX_WORKERS environment variable.
int resolve_workers(int requested);

/// Runs body(0..n-1) on up to `workers` threads. The exception of the lowest
/// failing index is rethrown after all threads join.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

struct BatchScore {
    std::vector<double> components;
    std::optional<double> value; ///< set when the configuration is scalar
    double seconds = 0.0;        ///< median scoring wall time (decode excluded)
    std::optional<Errc> failure; ///< empty_foreground or degenerate_moment
    std::string message;
};

/// Other errors (decode failures, images smaller than the kernel) propagate.
std::vector<BatchScore> score_images(std::span<const GrayImage> images, const KernelConfig& cfg, int workers = 1,
                                     int repeats = 1);
std::vector<BatchScore> score_files(std::span<const std::filesystem::path> paths, const KernelConfig& cfg,
                                    int workers = 1, int repeats = 1);

// ---------------------------------------------------------------------------
// Benchmark

struct EvalConfig {
    SignificanceConfig significance;
    int workers = 0;
    int time_repeats = 1; ///< 3 in timing mode

    bool operator==(const EvalConfig&) const = default;
};

struct ScoredImage {
    std::string path;
    double objective = 0.0;
    double subjective = 0.0;
    double fitted = 0.0;
    double seconds = 0.0;
    std::vector<double> components;

    bool operator==(const ScoredImage&) const = default;
};

struct Exclusion {
    std::string path;
    std::string reason;

    bool operator==(const Exclusion&) const = default;
};

struct BenchReport {
    std::string manifest;
    KernelConfig kernel;
    EvalConfig config;
    std::vector<ScoredImage> images;
    std::vector<Exclusion> exclusions;

    std::string fit_model; ///< "logistic" or "affine"
    LogisticParams logistic;
    double plcc = 0.0; ///< on logistic-fitted scores
    double srcc = 0.0; ///< on raw scores
    double krcc = 0.0; ///< on raw scores
    double rmse = 0.0; ///< on logistic-fitted scores
    std::optional<double> auc_ds;
    std::optional<double> auc_bw;
    std::optional<double> c0;
    std::size_t pairs = 0;
    std::size_t significant_pairs = 0;
    double mean_seconds = 0.0;
    std::vector<std::string> notes;

    bool operator==(const BenchReport&) const = default;
};

/// Throws Errc::invalid_argument when fewer than 3 images are scorable.
BenchReport run_benchmark(const std::vector<ManifestEntry>& manifest, const KernelConfig& kernel,
                          const EvalConfig& eval);

/// Statistics stage of run_benchmark on already scored data.
BenchReport evaluate_scores(std::vector<ScoredImage> images, const std::vector<ManifestEntry>& entries,
                            const KernelConfig& kernel, const EvalConfig& eval);

// ---------------------------------------------------------------------------
// Scalability

struct ScalabilityRow {
    double fraction = 0.0;
    int trial = 0;
    std::size_t subset = 0;
    std::optional<double> plcc;
    std::string note;

    bool operator==(const ScalabilityRow&) const = default;
};

/// Pure function of its arguments: subsets of round(fraction n) indices are
/// drawn without replacement from a mt19937_64 seeded with `seed`.
std::vector<ScalabilityRow> run_scalability(std::span<const double> objective, std::span<const double> subjective,
                                            std::span<const double> fractions, int trials, std::uint64_t seed);

/// Scores the manifest first; excluded images are left out of the pool.
std::vector<ScalabilityRow> run_scalability(const std::vector<ManifestEntry>& manifest, const KernelConfig& kernel,
                                            std::span<const double> fractions, int trials, std::uint64_t seed,
                                            int workers = 0);

/// Indices i < n sampled without replacement, sorted ascending.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::mt19937_64& rng);

std::string scalability_csv(const std::vector<ScalabilityRow>& rows);

// ---------------------------------------------------------------------------
// Reports

enum class ReportFormat { json, csv };

std::string report_to_json(const BenchReport& r, int indent = 2);
BenchReport report_from_json(const std::string& text);
/// Per-image `path,objective,subjective,fitted` rows.
std::string report_to_csv(const BenchReport& r);
void emit_report(const BenchReport& r, const std::filesystem::path& path, ReportFormat format);

/// Shortest round-trip decimal form of a double (at least 12 significant digits
/// are preserved).
std::string format_number(double v);

} // namespace sharpkit

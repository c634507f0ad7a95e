#pragma once

#include "sharpkit/error.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sharpkit {

/// Objective scores paired with subjective data (MOS or focus level).
struct ScorePairs {
    std::vector<double> objective;
    std::vector<double> subjective;
    std::optional<std::vector<double>> subjective_std;
    std::optional<std::vector<std::string>> groups;

    void validate() const;
};

// ---------------------------------------------------------------------------
// Correlation and error measures

double plcc(std::span<const double> x, std::span<const double> y);
double srcc(std::span<const double> x, std::span<const double> y);
/// Kendall tau-b (tie corrected), O(n log n).
double krcc(std::span<const double> x, std::span<const double> y);
double rmse(std::span<const double> yhat, std::span<const double> y);

/// 1-based ranks with ties sharing their average rank.
std::vector<double> average_ranks(std::span<const double> x);

// ---------------------------------------------------------------------------
// Logistic calibration

/// Y = k1 (1/2 + 1/(1 + exp(k2 (X - k3)))) + k4 X + k5
struct LogisticParams {
    std::array<double, 5> k{0.0, 0.0, 0.0, 1.0, 0.0};

    bool operator==(const LogisticParams&) const = default;
};

double logistic_map(double x, const LogisticParams& p);
std::vector<double> logistic_map(std::span<const double> x, const LogisticParams& p);

struct LogisticFit {
    LogisticParams params;
    double rmse = 0.0;
};

/// Closed-form least squares with k1 = 0 (the affine special case).
LogisticFit fit_affine(std::span<const double> x, std::span<const double> y);

/// Multi-start Nelder-Mead minimization of the RMSE. Never worse than fit_affine.
LogisticFit fit_logistic(std::span<const double> x, std::span<const double> y);

struct ComboFit {
    LogisticParams params;
    std::array<double, 2> weights{1.0, 0.0};
    double final_rmse = 0.0;
};

/// Joint 7-parameter fit of Q(M w) to y, rows of M being the two kernel scores.
ComboFit fit_combo(std::span<const std::array<double, 2>> scores, std::span<const double> y);

/// Raised when no optimizer start converges; carries the best iterate.
class FitError : public Error {
public:
    FitError(const std::string& what, LogisticParams best, double best_rmse)
        : Error(Errc::no_convergence, what), best_(best), best_rmse_(best_rmse)
    {
    }
    const LogisticParams& best() const noexcept { return best_; }
    double best_rmse() const noexcept { return best_rmse_; }

private:
    LogisticParams best_;
    double best_rmse_;
};

// ---------------------------------------------------------------------------
// Pair significance and ROC measures

struct SignificanceConfig {
    double threshold = 0.0;         ///< |dY| must exceed this when no std is available
    double z = 1.96;                ///< critical value when per-image std is available
    bool within_group_only = false; ///< only pair images sharing a group label

    bool operator==(const SignificanceConfig&) const = default;
};

/// One unordered pair i < j.
struct PairLabel {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    bool significant = false;
    std::int8_t better = 0; ///< +1: i better, -1: j better, 0: not significant

    /// Same pair seen as (j, i).
    PairLabel reversed() const noexcept { return {j, i, significant, static_cast<std::int8_t>(-better)}; }
};

using PairLabels = std::vector<PairLabel>;

PairLabels pair_significance(const ScorePairs& pairs, const SignificanceConfig& cfg = {});

/// Orientation of the objective score: +1 if a larger score means better
/// quality, -1 if it means worse.
enum class ScoreOrientation : int { higher_is_better = 1, higher_is_worse = -1 };

/// Mann-Whitney AUC for arbitrary positive/negative statistics; ties get half credit.
double mann_whitney_auc(std::span<const double> positives, std::span<const double> negatives);

/// Different-vs-similar AUC with |dC| as the statistic.
double auc_ds(std::span<const double> objective, const PairLabels& labels);

/// Better-vs-worse AUC over significant pairs using the oriented signed dC.
double auc_bw(std::span<const double> objective, const PairLabels& labels,
              ScoreOrientation orientation = ScoreOrientation::higher_is_better);

/// Fraction of significant pairs whose oriented dC has the right sign (ties are wrong).
double c0(std::span<const double> objective, const PairLabels& labels,
          ScoreOrientation orientation = ScoreOrientation::higher_is_better);

} // namespace sharpkit

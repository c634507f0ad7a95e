#include "sharpkit/statistics.hpp"

#include <cmath>
#include <limits>

namespace sharpkit {

namespace {

void check_objective(std::span<const double> objective, const PairLabels& labels)
{
    for (const auto& p : labels)
        if (p.i >= objective.size() || p.j >= objective.size())
            throw Error(Errc::invalid_argument, "pair label refers to a missing image");
}

// Signed score difference, oriented so that positive means "objective agrees
// that the subjectively better image is better".
double oriented_margin(std::span<const double> objective, const PairLabel& p, ScoreOrientation orientation)
{
    const double diff = objective[p.i] - objective[p.j];
    return static_cast<double>(p.better) * static_cast<double>(static_cast<int>(orientation)) * diff;
}

} // namespace

PairLabels pair_significance(const ScorePairs& pairs, const SignificanceConfig& cfg)
{
    const auto& y = pairs.subjective;
    const std::size_t n = y.size();
    if (n < 2)
        throw Error(Errc::invalid_argument, "pair significance needs at least two images");
    if (n > std::numeric_limits<std::uint32_t>::max())
        throw Error(Errc::invalid_argument, "too many images for pair labelling");
    if (pairs.subjective_std && pairs.subjective_std->size() != n)
        throw Error(Errc::invalid_argument, "subjective_std length differs");
    if (pairs.groups && pairs.groups->size() != n)
        throw Error(Errc::invalid_argument, "group label count differs");
    if (cfg.within_group_only && !pairs.groups)
        throw Error(Errc::invalid_argument, "within-group pairing requested without group labels");

    PairLabels labels;
    labels.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (cfg.within_group_only && (*pairs.groups)[i] != (*pairs.groups)[j])
                continue;
            const double delta = y[i] - y[j];
            bool significant = false;
            if (pairs.subjective_std) {
                const double si = (*pairs.subjective_std)[i];
                const double sj = (*pairs.subjective_std)[j];
                significant = std::abs(delta) > cfg.z * std::sqrt(si * si + sj * sj);
            } else {
                significant = std::abs(delta) > cfg.threshold;
            }
            PairLabel label{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), significant, 0};
            if (significant)
                label.better = delta > 0.0 ? 1 : -1;
            labels.push_back(label);
        }
    }
    return labels;
}

double mann_whitney_auc(std::span<const double> positives, std::span<const double> negatives)
{
    if (positives.empty() || negatives.empty())
        throw Error(Errc::invalid_argument, "AUC needs both positive and negative samples");
    std::vector<double> all(positives.begin(), positives.end());
    all.insert(all.end(), negatives.begin(), negatives.end());
    const auto ranks = average_ranks(all);
    double rank_sum = 0.0;
    for (std::size_t i = 0; i < positives.size(); ++i)
        rank_sum += ranks[i];
    const auto np = static_cast<double>(positives.size());
    const auto nn = static_cast<double>(negatives.size());
    const double u = rank_sum - np * (np + 1.0) / 2.0;
    return u / (np * nn);
}

double auc_ds(std::span<const double> objective, const PairLabels& labels)
{
    check_objective(objective, labels);
    std::vector<double> different, similar;
    for (const auto& p : labels) {
        const double stat = std::abs(objective[p.i] - objective[p.j]);
        (p.significant ? different : similar).push_back(stat);
    }
    if (different.empty() || similar.empty())
        throw Error(Errc::invalid_argument, "AUC_DS needs both significant and similar pairs");
    return mann_whitney_auc(different, similar);
}

double auc_bw(std::span<const double> objective, const PairLabels& labels, ScoreOrientation orientation)
{
    check_objective(objective, labels);
    std::vector<double> correct_order, reversed_order;
    for (const auto& p : labels) {
        if (!p.significant)
            continue;
        const double m = oriented_margin(objective, p, orientation);
        correct_order.push_back(m);
        reversed_order.push_back(-m);
    }
    if (correct_order.empty())
        throw Error(Errc::invalid_argument, "AUC_BW needs at least one significant pair");
    return mann_whitney_auc(correct_order, reversed_order);
}

double c0(std::span<const double> objective, const PairLabels& labels, ScoreOrientation orientation)
{
    check_objective(objective, labels);
    std::size_t total = 0, correct = 0;
    for (const auto& p : labels) {
        if (!p.significant)
            continue;
        ++total;
        if (oriented_margin(objective, p, orientation) > 0.0)
            ++correct;
    }
    if (total == 0)
        throw Error(Errc::invalid_argument, "C0 needs at least one significant pair");
    return static_cast<double>(correct) / static_cast<double>(total);
}

} // namespace sharpkit

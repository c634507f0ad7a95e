#include "sharpkit/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sharpkit {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y, std::size_t min_len)
{
    if (x.size() != y.size())
        throw Error(Errc::invalid_argument, "score vectors differ in length");
    if (x.size() < min_len)
        throw Error(Errc::invalid_argument, "need at least " + std::to_string(min_len) + " samples");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
            throw Error(Errc::invalid_argument, "non-finite score");
}

bool is_constant(std::span<const double> v)
{
    return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>{}) == v.end();
}

// Number of tied pairs: sum over runs of equal values of t (t - 1) / 2.
// `sorted` must be grouped by key.
template <class Eq>
double tied_pairs(std::size_t n, Eq&& equal)
{
    double ties = 0.0;
    std::size_t run = 1;
    for (std::size_t i = 1; i < n; ++i) {
        if (equal(i - 1, i)) {
            ++run;
        } else {
            ties += 0.5 * static_cast<double>(run) * static_cast<double>(run - 1);
            run = 1;
        }
    }
    ties += 0.5 * static_cast<double>(run) * static_cast<double>(run - 1);
    return ties;
}

// Stable merge sort of v by value, returning the number of inversions (strict).
double count_inversions(std::vector<double>& v)
{
    std::vector<double> buf(v.size());
    double swaps = 0.0;
    for (std::size_t width = 1; width < v.size(); width *= 2) {
        for (std::size_t lo = 0; lo < v.size(); lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, v.size());
            const std::size_t hi = std::min(lo + 2 * width, v.size());
            std::size_t a = lo, b = mid, out = lo;
            while (a < mid && b < hi) {
                if (v[b] < v[a]) {
                    swaps += static_cast<double>(mid - a);
                    buf[out++] = v[b++];
                } else {
                    buf[out++] = v[a++];
                }
            }
            while (a < mid)
                buf[out++] = v[a++];
            while (b < hi)
                buf[out++] = v[b++];
        }
        v.swap(buf);
    }
    return swaps;
}

} // namespace

void ScorePairs::validate() const
{
    check_pair(objective, subjective, 3);
    if (subjective_std && subjective_std->size() != subjective.size())
        throw Error(Errc::invalid_argument, "subjective_std length differs");
    if (groups && groups->size() != subjective.size())
        throw Error(Errc::invalid_argument, "group label count differs");
}

double plcc(std::span<const double> x, std::span<const double> y)
{
    check_pair(x, y, 3);
    if (is_constant(x) || is_constant(y))
        throw Error(Errc::invalid_argument, "correlation undefined for a constant vector");
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> x)
{
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(x.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i + 1;
        while (j < order.size() && x[order[j]] == x[order[i]])
            ++j;
        const double avg = 0.5 * static_cast<double>(i + 1 + j); // mean of ranks i+1..j
        for (std::size_t t = i; t < j; ++t)
            ranks[order[t]] = avg;
        i = j;
    }
    return ranks;
}

double srcc(std::span<const double> x, std::span<const double> y)
{
    check_pair(x, y, 3);
    if (is_constant(x) || is_constant(y))
        throw Error(Errc::invalid_argument, "correlation undefined for a constant vector");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    return plcc(rx, ry);
}

double krcc(std::span<const double> x, std::span<const double> y)
{
    check_pair(x, y, 3);
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
    });

    const double total = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    const double x_ties = tied_pairs(n, [&](std::size_t a, std::size_t b) { return x[order[a]] == x[order[b]]; });
    const double joint_ties = tied_pairs(n, [&](std::size_t a, std::size_t b) {
        return x[order[a]] == x[order[b]] && y[order[a]] == y[order[b]];
    });

    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i)
        ys[i] = y[order[i]];
    const double discordant = count_inversions(ys);
    const double y_ties = tied_pairs(n, [&](std::size_t a, std::size_t b) { return ys[a] == ys[b]; });

    const double denom = std::sqrt((total - x_ties) * (total - y_ties));
    if (!(denom > 0.0))
        throw Error(Errc::invalid_argument, "Kendall tau undefined: all pairs tied");
    const double numer = total - x_ties - y_ties + joint_ties - 2.0 * discordant;
    return std::clamp(numer / denom, -1.0, 1.0);
}

double rmse(std::span<const double> yhat, std::span<const double> y)
{
    if (yhat.size() != y.size())
        throw Error(Errc::invalid_argument, "rmse: length mismatch");
    if (y.empty())
        throw Error(Errc::invalid_argument, "rmse: empty input");
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double d = yhat[i] - y[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(y.size()));
}

} // namespace sharpkit

#include "sharpkit/error.hpp"
#include "sharpkit/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sharpkit {

namespace {

double safe_eval(const Objective& f, std::span<const double> x)
{
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

double distance(const std::vector<double>& a, const std::vector<double>& b)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(acc);
}

} // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start, std::span<const double> step,
                             const NelderMeadOptions& opts)
{
    const std::size_t dim = start.size();
    if (dim == 0 || step.size() != dim)
        throw Error(Errc::invalid_argument, "nelder_mead: start and step must be non-empty and equally sized");

    std::vector<std::vector<double>> simplex(dim + 1, start);
    for (std::size_t i = 0; i < dim; ++i)
        simplex[i + 1][i] += step[i];
    std::vector<double> values(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i)
        values[i] = safe_eval(f, simplex[i]);

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);
    NelderMeadResult result;

    auto point = [&](double t, const std::vector<double>& worst, std::vector<double>& out) {
        for (std::size_t d = 0; d < dim; ++d)
            out[d] = centroid[d] + t * (worst[d] - centroid[d]);
    };

    int it = 0;
    for (; it < opts.max_iterations; ++it) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[dim - 1];

        double diameter = 0.0;
        for (std::size_t i = 0; i <= dim; ++i)
            diameter = std::max(diameter, distance(simplex[i], simplex[best]));
        if (diameter < opts.diameter_tolerance) {
            result.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i)
            if (i != worst)
                for (std::size_t d = 0; d < dim; ++d)
                    centroid[d] += simplex[i][d] / static_cast<double>(dim);

        point(-1.0, simplex[worst], trial);
        const double reflected = safe_eval(f, trial);
        if (reflected < values[best]) {
            point(-2.0, simplex[worst], trial2);
            const double expanded = safe_eval(f, trial2);
            if (expanded < reflected) {
                simplex[worst] = trial2;
                values[worst] = expanded;
            } else {
                simplex[worst] = trial;
                values[worst] = reflected;
            }
            continue;
        }
        if (reflected < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = reflected;
            continue;
        }
        // Outside contraction if the reflection beat the worst vertex, inside otherwise.
        const bool outside = reflected < values[worst];
        point(outside ? -0.5 : 0.5, simplex[worst], trial2);
        const double contracted = safe_eval(f, trial2);
        if (contracted < (outside ? reflected : values[worst])) {
            simplex[worst] = trial2;
            values[worst] = contracted;
            continue;
        }
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best)
                continue;
            for (std::size_t d = 0; d < dim; ++d)
                simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
            values[i] = safe_eval(f, simplex[i]);
        }
    }

    const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    result.x = simplex[best];
    result.value = values[best];
    result.iterations = it;
    return result;
}

} // namespace sharpkit

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace sharpkit {

struct NelderMeadOptions {
    double diameter_tolerance = 1e-10; ///< stop once max vertex distance to best is below this
    int max_iterations = 2000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free simplex minimization (standard reflection/expansion/
/// contraction/shrink coefficients 1, 2, 1/2, 1/2). `step` sets the initial
/// simplex edge along each coordinate. Non-finite objective values are treated
/// as +infinity.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start, std::span<const double> step,
                             const NelderMeadOptions& opts = {});

} // namespace sharpkit

#include "sharpkit/error.hpp"
#include "sharpkit/kernel_synthesis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

namespace sharpkit {

namespace {

constexpr int kDesignGrid = 1024;
constexpr double kPassTolerance = 0.02;
constexpr double kPassFloor = 1e-3;
constexpr double kStopTolerance = 0.05;
constexpr double kPassCheckEdge = 0.8;
constexpr double kStopEdge = 1.3;

struct Candidate {
    double passband_edge; ///< fraction of cutoff fitted to the derivative target
    double stop_weight;   ///< lambda
};

// Tried in order; the first candidate with the smallest worst-case ratio wins.
constexpr std::array<Candidate, 12> kCandidates{{
    {0.85, 10.0}, {0.85, 1.0}, {0.85, 100.0}, {0.85, 0.1},
    {0.90, 10.0}, {0.90, 1.0}, {0.90, 100.0}, {0.90, 0.1},
    {0.80, 10.0}, {0.80, 1.0}, {0.80, 100.0}, {0.80, 0.1},
}};

bool has_stopband(double cutoff) { return kStopEdge * cutoff < std::numbers::pi; }

double factorial(int n)
{
    double f = 1.0;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

Eigen::VectorXd solve_half_kernel(int order, double cutoff, int radius, const Candidate& cand)
{
    const int n = order / 2;
    const int unknowns = radius + 1;
    const int constraints = n + 1;
    const double target_sign = (n % 2 == 0) ? 1.0 : -1.0;

    // Even-moment constraints: sum_k k^{2j} h_k = (2n)! [j == n] for j = 0..n.
    Eigen::MatrixXd cmat(constraints, unknowns);
    Eigen::VectorXd cvec = Eigen::VectorXd::Zero(constraints);
    for (int j = 0; j < constraints; ++j) {
        cmat(j, 0) = (j == 0) ? 1.0 : 0.0;
        for (int k = 1; k <= radius; ++k)
            cmat(j, k) = 2.0 * std::pow(static_cast<double>(k), 2 * j);
        if (j == n)
            cvec(j) = factorial(order);
        const double s = cmat.row(j).cwiseAbs().maxCoeff();
        cmat.row(j) /= s;
        cvec(j) /= s;
    }

    // Null-space parameterization h = Q1 z + Q2 y with C^T = Q [R; 0].
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(cmat.transpose());
    const Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().topRows(constraints).triangularView<Eigen::Upper>();
    const Eigen::VectorXd z = r.transpose().triangularView<Eigen::Lower>().solve(cvec);
    const Eigen::MatrixXd q1 = q.leftCols(constraints);
    const Eigen::VectorXd particular = q1 * z;

    const int free_dims = unknowns - constraints;
    if (free_dims == 0)
        return particular;
    const Eigen::MatrixXd q2 = q.rightCols(free_dims);

    const bool stop = has_stopband(cutoff);
    const double pass_edge = stop ? cand.passband_edge * cutoff : cutoff;
    const double stop_edge = std::min(kStopEdge * cutoff, std::numbers::pi);
    const double norm = std::pow(cutoff, order);

    Eigen::MatrixXd basis(kDesignGrid, unknowns);
    Eigen::VectorXd target(kDesignGrid);
    Eigen::VectorXd weight(kDesignGrid);
    for (int g = 0; g < kDesignGrid; ++g) {
        const double w = (g + 0.5) * std::numbers::pi / kDesignGrid;
        basis(g, 0) = 1.0;
        for (int k = 1; k <= radius; ++k)
            basis(g, k) = 2.0 * std::cos(k * w);
        if (w <= pass_edge) {
            const double wp = std::pow(w, order);
            target(g) = target_sign * wp;
            weight(g) = norm / std::max(wp, kPassFloor);
        } else if (stop && w >= stop_edge) {
            target(g) = 0.0;
            weight(g) = std::sqrt(cand.stop_weight);
        } else {
            target(g) = 0.0;
            weight(g) = 0.0;
        }
    }

    const Eigen::MatrixXd a = weight.asDiagonal() * (basis * q2);
    const Eigen::VectorXd b = weight.asDiagonal() * (target - basis * particular);
    const Eigen::VectorXd y = a.colPivHouseholderQr().solve(b);
    return particular + q2 * y;
}

FirKernel to_full_kernel(const Eigen::VectorXd& half)
{
    const int radius = static_cast<int>(half.size()) - 1;
    FirKernel k;
    k.taps.assign(static_cast<std::size_t>(2 * radius + 1), 0.0);
    double side = 0.0;
    for (int i = 1; i <= radius; ++i) {
        k.taps[static_cast<std::size_t>(radius + i)] = half(i);
        k.taps[static_cast<std::size_t>(radius - i)] = half(i);
        side += half(i);
    }
    // Exact DC null; the centre tap does not enter any higher even moment.
    k.taps[static_cast<std::size_t>(radius)] = -2.0 * side;
    return k;
}

std::string ratio_str(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

} // namespace

DerivativeTolerance derivative_tolerance(const FirKernel& k, int order, double cutoff)
{
    const int n = order / 2;
    const double target_sign = (n % 2 == 0) ? 1.0 : -1.0;
    constexpr int kPassSamples = 2001;
    constexpr int kStopSamples = 1001;

    std::vector<double> pass_grid(kPassSamples);
    for (int i = 0; i < kPassSamples; ++i)
        pass_grid[static_cast<std::size_t>(i)] = kPassCheckEdge * cutoff * i / (kPassSamples - 1);

    DerivativeTolerance tol;
    // Signed real response; kernel_response only gives the magnitude.
    for (int i = 0; i < kPassSamples; ++i) {
        const double w = pass_grid[static_cast<std::size_t>(i)];
        double real = k.at(0);
        for (int j = 1; j <= k.radius(); ++j)
            real += 2.0 * k.at(j) * std::cos(j * w);
        const double wp = std::pow(w, order);
        const double err = std::abs(real - target_sign * wp);
        tol.passband = std::max(tol.passband, err / (kPassTolerance * std::max(wp, kPassFloor)));
    }

    if (has_stopband(cutoff)) {
        const double lo = kStopEdge * cutoff;
        std::vector<double> stop_grid(kStopSamples);
        for (int i = 0; i < kStopSamples; ++i)
            stop_grid[static_cast<std::size_t>(i)] = lo + (std::numbers::pi - lo) * i / (kStopSamples - 1);
        const double allowed = kStopTolerance * std::pow(cutoff, order);
        for (double m : kernel_response(k, stop_grid))
            tol.stopband = std::max(tol.stopband, m / allowed);
    }
    return tol;
}

FirKernel design_derivative_kernel(int order, double cutoff, int tap_length)
{
    if (order < 2 || order % 2 != 0)
        throw Error(Errc::invalid_argument, "derivative order must be even and >= 2");
    if (!(cutoff > 0.0 && cutoff <= std::numbers::pi))
        throw Error(Errc::invalid_argument, "cutoff must lie in (0, pi]");
    if (tap_length % 2 == 0 || tap_length < 1)
        throw Error(Errc::invalid_argument, "tap length must be odd");
    if (tap_length < order + 1)
        throw Error(Errc::infeasible, "tap length " + std::to_string(tap_length) +
                                          " is too short for derivative order " + std::to_string(order) +
                                          " (needs at least " + std::to_string(order + 1) + ")");
    const int radius = (tap_length - 1) / 2;

    if (!has_stopband(cutoff))
        return to_full_kernel(solve_half_kernel(order, cutoff, radius, kCandidates.front()));

    FirKernel best;
    DerivativeTolerance best_tol{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    for (const auto& cand : kCandidates) {
        FirKernel k = to_full_kernel(solve_half_kernel(order, cutoff, radius, cand));
        const auto tol = derivative_tolerance(k, order, cutoff);
        if (std::max(tol.passband, tol.stopband) < std::max(best_tol.passband, best_tol.stopband)) {
            best = std::move(k);
            best_tol = tol;
        }
    }

    if (best_tol.passband > 1.0)
        throw Error(Errc::infeasible,
                    "order " + std::to_string(order) + " with " + std::to_string(tap_length) +
                        " taps misses the 2% passband tolerance (worst error " + ratio_str(best_tol.passband) +
                        "x the allowed bound); increase tap length or cutoff");
    if (best_tol.stopband > 1.0)
        throw Error(Errc::infeasible,
                    "order " + std::to_string(order) + " with " + std::to_string(tap_length) +
                        " taps misses the 5% stopband tolerance (worst magnitude " + ratio_str(best_tol.stopband) +
                        "x the allowed bound); increase tap length or cutoff");
    return best;
}

} // namespace sharpkit

#include "sharpkit/error.hpp"
#include "sharpkit/kernel_synthesis.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace sharpkit {

void GGParams::validate() const
{
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw Error(Errc::invalid_argument, "alpha must be positive and finite");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw Error(Errc::invalid_argument, "beta must be positive and finite");
}

void HvsKernelSpec::validate() const
{
    gg.validate();
    if (!(cutoff > 0.0 && cutoff < std::numbers::pi))
        throw Error(Errc::invalid_argument, "cutoff must lie in (0, pi)");
    if (terms < 1)
        throw Error(Errc::invalid_argument, "terms must be >= 1");
    if (tap_length % 2 == 0 || tap_length < 2 * terms + 1)
        throw Error(Errc::invalid_argument, "tap length must be odd and >= 2*terms+1 (got " +
                                                std::to_string(tap_length) + ")");
    if (moment < 2 || moment % 2 != 0)
        throw Error(Errc::invalid_argument, "moment must be even and >= 2");
}

std::vector<double> kernel_response(const FirKernel& k, std::span<const double> omega)
{
    for (double w : omega)
        if (!std::isfinite(w) || w < 0.0 || w > std::numbers::pi)
            throw Error(Errc::invalid_argument, "frequency outside [0, pi]");
    const int r = k.radius();
    std::vector<double> out;
    out.reserve(omega.size());
    for (double w : omega) {
        std::complex<double> acc{0.0, 0.0};
        for (int j = -r; j <= r; ++j)
            acc += k.at(j) * std::polar(1.0, -w * j);
        out.push_back(std::abs(acc));
    }
    return out;
}

ResponsePeak kernel_peak(const FirKernel& k)
{
    constexpr int kSamples = 4097;
    auto magnitude = [&](double w) {
        const double one[] = {w};
        return kernel_response(k, one).front();
    };
    std::vector<double> grid(kSamples);
    for (int i = 0; i < kSamples; ++i)
        grid[static_cast<std::size_t>(i)] = std::numbers::pi * i / (kSamples - 1);
    const auto resp = kernel_response(k, grid);
    const auto it = std::max_element(resp.begin(), resp.end());
    const auto idx = static_cast<int>(it - resp.begin());

    ResponsePeak peak{grid[static_cast<std::size_t>(idx)], *it};
    const double lo = grid[static_cast<std::size_t>(std::max(idx - 1, 0))];
    const double hi = grid[static_cast<std::size_t>(std::min(idx + 1, kSamples - 1))];
    if (hi > lo) {
        const auto [w, neg] = boost::math::tools::brent_find_minima(
            [&](double x) { return -magnitude(x); }, lo, hi, std::numeric_limits<double>::digits);
        if (-neg > peak.magnitude)
            peak = {w, -neg};
    }
    return peak;
}

FirKernel superpose_kernels(const PolyCoeffs& coeffs, std::span<const FirKernel> derivative_kernels)
{
    if (coeffs.c.size() != derivative_kernels.size())
        throw Error(Errc::invalid_argument, "need exactly one derivative kernel per coefficient");
    if (derivative_kernels.empty())
        throw Error(Errc::invalid_argument, "no derivative kernels to superpose");

    int radius = 0;
    for (const auto& d : derivative_kernels) {
        if (d.taps.size() % 2 == 0)
            throw Error(Errc::invalid_argument, "derivative kernels must have odd length");
        radius = std::max(radius, d.radius());
    }

    FirKernel out;
    out.taps.assign(static_cast<std::size_t>(2 * radius + 1), 0.0);
    for (std::size_t n = 0; n < derivative_kernels.size(); ++n) {
        const auto& d = derivative_kernels[n];
        for (int j = -d.radius(); j <= d.radius(); ++j)
            out.taps[static_cast<std::size_t>(radius + j)] += coeffs.c[n] * d.at(j);
    }
    return out;
}

FirKernel normalize_kernel(FirKernel k)
{
    const double gain = kernel_peak(k).magnitude;
    if (!(gain > 0.0))
        throw Error(Errc::invalid_argument, "all-zero kernel cannot be normalized");
    for (double& t : k.taps)
        t /= gain;
    k.norm_gain = gain;
    return k;
}

FirKernel assemble_hvs_kernel(const PolyCoeffs& coeffs, std::span<const FirKernel> derivative_kernels)
{
    FirKernel raw = superpose_kernels(coeffs, derivative_kernels);
    if (std::all_of(raw.taps.begin(), raw.taps.end(), [](double t) { return t == 0.0; }))
        throw Error(Errc::invalid_argument, "all-zero kernel cannot be normalized");
    return normalize_kernel(std::move(raw));
}

std::vector<double> passband_grid(double cutoff, int count)
{
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        grid[static_cast<std::size_t>(i)] = cutoff * (i + 1) / count;
    return grid;
}

SynthesisResult synthesize_detailed(const HvsKernelSpec& spec)
{
    spec.validate();

    SynthesisResult result;
    const auto grid = passband_grid(spec.cutoff);
    const auto target = target_response(spec.gg, spec.cutoff, grid);
    result.fit = fit_polynomial_coeffs(grid, target, spec.terms);

    for (int n = 1; n <= spec.terms; ++n)
        result.derivatives.push_back(design_derivative_kernel(2 * n, spec.cutoff, spec.tap_length));
    result.kernel = assemble_hvs_kernel(result.fit.coeffs, result.derivatives);

    // Band-pass shape check: DC null, peak inside the passband, quiet stopband.
    const double dc[] = {0.0};
    if (kernel_response(result.kernel, dc).front() > 1e-10)
        throw Error(Errc::infeasible, "synthesized kernel has a non-zero DC response");
    const auto peak = kernel_peak(result.kernel);
    if (!(peak.omega > 0.0 && peak.omega <= spec.cutoff))
        throw Error(Errc::infeasible, "synthesized kernel peaks outside the passband (w=" +
                                          std::to_string(peak.omega) + ")");
    if (1.3 * spec.cutoff < std::numbers::pi) {
        std::vector<double> stop(1001);
        const double lo = 1.3 * spec.cutoff;
        for (std::size_t i = 0; i < stop.size(); ++i)
            stop[i] = lo + (std::numbers::pi - lo) * static_cast<double>(i) / 1000.0;
        const auto resp = kernel_response(result.kernel, stop);
        const double worst = *std::max_element(resp.begin(), resp.end());
        if (worst > 0.1)
            throw Error(Errc::infeasible, "synthesized kernel stopband magnitude " + std::to_string(worst) +
                                              " exceeds 0.1");
    }
    return result;
}

FirKernel synthesize(const HvsKernelSpec& spec) { return synthesize_detailed(spec).kernel; }

} // namespace sharpkit

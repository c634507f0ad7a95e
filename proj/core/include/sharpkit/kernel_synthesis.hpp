#pragma once

#include <span>
#include <vector>

namespace sharpkit {

/// Generalized Gaussian model of the natural-image spectral falloff.
/// `alpha` is the standard deviation, `beta` the shape (2 = Gaussian, 1 = Laplace).
struct GGParams {
    double alpha = 1.0;
    double beta = 2.0;

    void validate() const;
    bool operator==(const GGParams&) const = default;
};

/// Full recipe for one sharpness kernel.
struct HvsKernelSpec {
    GGParams gg;
    double cutoff = 0.6 * 3.14159265358979323846; ///< passband edge, radians/sample
    int terms = 3;       ///< number of even-order polynomial terms (orders 2, 4, ..., 2*terms)
    int tap_length = 25; ///< odd FIR support
    int moment = 12;     ///< central-moment order used by the scorer

    void validate() const;
    bool operator==(const HvsKernelSpec&) const = default;
};

/// Symmetric odd-length FIR kernel; taps[radius()] is the centre tap.
struct FirKernel {
    std::vector<double> taps;
    double norm_gain = 1.0; ///< divisor applied during normalization (1 if unnormalized)

    int radius() const noexcept { return static_cast<int>(taps.size() / 2); }
    /// Tap at signed offset k in [-radius, radius].
    double at(int k) const { return taps[static_cast<std::size_t>(radius() + k)]; }

    bool operator==(const FirKernel&) const = default;
};

/// Coefficients c_1..c_N of the (-1)^n c_n w^{2n} frequency model.
struct PolyCoeffs {
    std::vector<double> c;
};

struct PolyFit {
    PolyCoeffs coeffs;
    double residual_rms = 0.0; ///< RMS of model - target over the samples
    double relative_rms = 0.0; ///< residual_rms / RMS(target)
};

/// Scale parameter A(beta, alpha) = sqrt(alpha^2 Gamma(1/beta) / Gamma(3/beta)).
double gg_scale(const GGParams& p);

double gg_pdf(double x, const GGParams& p);

/// Amplitude spectrum of the generalized Gaussian density at each frequency.
std::vector<double> gg_spectrum(const GGParams& p, std::span<const double> omega);

/// Inverse spectrum inside the passband, zero above `cutoff`.
std::vector<double> target_response(const GGParams& p, double cutoff, std::span<const double> omega);

/// Ordinary least squares fit of sum_n (-1)^n c_n w^{2n} to the sampled target.
PolyFit fit_polynomial_coeffs(std::span<const double> omega, std::span<const double> target, int terms);

/// Lowpass FIR approximation of the derivative of even `order` (returned unnormalized).
///
/// Even moments are constrained so the kernel annihilates constants and has the
/// exact derivative order; remaining freedom is spent on a weighted least-squares
/// fit of (-1)^n w^{2n} on the passband and of zero on the stopband. When
/// 1.3 * cutoff < pi the result is checked against
///   |D(w) - (-1)^n w^{2n}| <= 0.02 max(w^{2n}, 1e-3)  on [0, 0.8 cutoff]
///   |D(w)| <= 0.05 cutoff^{2n}                          on [1.3 cutoff, pi]
/// and an Errc::infeasible error names the violated bound.
FirKernel design_derivative_kernel(int order, double cutoff, int tap_length);

/// Ratios of the worst observed error to the allowed error for a derivative
/// kernel (values <= 1 pass). stopband is 0 for full-band designs.
struct DerivativeTolerance {
    double passband = 0.0;
    double stopband = 0.0;
};
DerivativeTolerance derivative_tolerance(const FirKernel& k, int order, double cutoff);

/// sum_n c_n d_n, zero-padding shorter kernels about their centre. Unnormalized.
FirKernel superpose_kernels(const PolyCoeffs& coeffs, std::span<const FirKernel> derivative_kernels);

/// Divide by max_w |DTFT| so the peak magnitude is 1; records the divisor in norm_gain.
FirKernel normalize_kernel(FirKernel k);

FirKernel assemble_hvs_kernel(const PolyCoeffs& coeffs, std::span<const FirKernel> derivative_kernels);

/// Magnitude |sum_j taps[j] e^{-i w j}| at each frequency.
std::vector<double> kernel_response(const FirKernel& k, std::span<const double> omega);

/// Location and value of max_w |DTFT| on [0, pi].
struct ResponsePeak {
    double omega = 0.0;
    double magnitude = 0.0;
};
ResponsePeak kernel_peak(const FirKernel& k);

struct SynthesisResult {
    FirKernel kernel;
    PolyFit fit;
    std::vector<FirKernel> derivatives; ///< d_2, d_4, ... before superposition
};

SynthesisResult synthesize_detailed(const HvsKernelSpec& spec);
FirKernel synthesize(const HvsKernelSpec& spec);

/// Uniform grid of `count` points on (0, cutoff] used to sample the fit target.
std::vector<double> passband_grid(double cutoff, int count = 512);

} // namespace sharpkit

#pragma once

#include "sharpkit/image.hpp"
#include "sharpkit/kernel_synthesis.hpp"

#include <array>
#include <span>
#include <vector>

namespace sharpkit {

inline constexpr double kBackgroundThreshold = 0.05;

/// Foreground is every pixel >= threshold. Throws Errc::empty_foreground if none.
ForegroundMask background_mask(const GrayImage& img, double threshold = kBackgroundThreshold);

/// 1-D convolution of every row (resp. column) with a symmetric kernel, using
/// half-sample symmetric boundary extension (repeated for kernels wider than
/// the image).
FeatureField convolve_rows(const Raster<double>& src, const FirKernel& k);
FeatureField convolve_columns(const Raster<double>& src, const FirKernel& k);

struct Decomposition {
    FeatureField gx; ///< row-wise (horizontal) response
    FeatureField gy; ///< column-wise (vertical) response
};

/// Separable 1-D convolution along rows and along columns with half-sample
/// symmetric (mirror) boundary extension. Output has the input's dimensions.
Decomposition decompose(const GrayImage& img, const FirKernel& k);

FeatureField relu(FeatureField f);

/// (sqrt(gx) + sqrt(gy))^2; both inputs must be rectified.
FeatureField feature_map(const FeatureField& gx, const FeatureField& gy);

/// 95th percentile (nearest rank, ceil) of the pooled gx and gy values on the foreground.
double sigma_stat(const FeatureField& gx, const FeatureField& gy, const ForegroundMask& mask);

/// Retained fraction p = (1 - tanh(60 (sigma - 0.095))) / 4 + 0.09.
double retention_ratio(double sigma);

/// The max(1, floor(p * valid_count)) largest foreground values of m, descending.
std::vector<double> select_top(const FeatureField& m, const ForegroundMask& mask, double p);

/// m-th central moment (population form) for even m >= 2.
double central_moment(std::span<const double> values, int m);

struct SharpnessScore {
    double value = 0.0;        ///< C = -ln(moment_value)
    double moment_value = 0.0; ///< mu_m of the retained features
    std::size_t retained = 0;
    double sigma = 0.0;
};

/// Throws Errc::empty_foreground or Errc::degenerate_moment (mu_m == 0).
SharpnessScore score_single(const GrayImage& img, const FirKernel& k, int moment);

struct ScoringKernel {
    FirKernel kernel;
    int moment = 12;
};

struct ComboConfig {
    std::array<ScoringKernel, 2> kernels;
    std::array<double, 2> weights{1.0, 0.0};
};

double combine_scores(std::array<double, 2> scores, std::array<double, 2> weights);

double score_combo(const GrayImage& img, const ComboConfig& cfg);

} // namespace sharpkit

#include "sharpkit/error.hpp"
#include "sharpkit/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace sharpkit {

namespace {

// Half-sample symmetric extension: ... c b a | a b c ... | c b a ...
int mirror(int i, int n)
{
    const int period = 2 * n;
    i %= period;
    if (i < 0)
        i += period;
    return i < n ? i : period - 1 - i;
}

void require_same_shape(const FeatureField& a, const FeatureField& b)
{
    if (a.width != b.width || a.height != b.height)
        throw Error(Errc::invalid_argument, "feature fields differ in shape");
}

double pow_even(double d, int m)
{
    double base = d * d;
    double result = 1.0;
    for (int e = m / 2; e > 0; e >>= 1) {
        if (e & 1)
            result *= base;
        base *= base;
    }
    return result;
}

} // namespace

ForegroundMask background_mask(const GrayImage& img, double threshold)
{
    if (!(threshold >= 0.0 && threshold < 1.0))
        throw Error(Errc::invalid_argument, "background threshold must lie in [0, 1)");
    ForegroundMask mask;
    mask.cells = Raster<std::uint8_t>(img.width(), img.height());
    const auto& px = img.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
        const bool keep = px[i] >= threshold;
        mask.cells.values[i] = keep ? 1 : 0;
        mask.valid_count += keep ? 1 : 0;
    }
    if (mask.valid_count == 0)
        throw Error(Errc::empty_foreground, "empty foreground: every pixel is below the background threshold");
    return mask;
}

FeatureField convolve_rows(const Raster<double>& src, const FirKernel& k)
{
    const int w = src.width;
    const int h = src.height;
    const int r = k.radius();
    const double centre = k.at(0);
    FeatureField out(w, h);
    // Mirrored partners are summed before scaling so that the row and column
    // passes round identically (transpose and rotation invariance).
    std::vector<double> padded(static_cast<std::size_t>(w + 2 * r));
    for (int y = 0; y < h; ++y) {
        for (int i = -r; i < w + r; ++i)
            padded[static_cast<std::size_t>(i + r)] = src(mirror(i, w), y);
        const double* p = padded.data() + r;
        double* dst = &out(0, y);
        for (int x = 0; x < w; ++x) {
            double acc = centre * p[x];
            for (int j = 1; j <= r; ++j)
                acc += k.at(j) * (p[x - j] + p[x + j]);
            dst[x] = acc;
        }
    }
    return out;
}

FeatureField convolve_columns(const Raster<double>& src, const FirKernel& k)
{
    const int w = src.width;
    const int h = src.height;
    const int r = k.radius();
    const double centre = k.at(0);
    FeatureField out(w, h);
    // Accumulated one source row at a time, same operation order as convolve_rows.
    for (int y = 0; y < h; ++y) {
        double* dst = &out(0, y);
        const double* row = &src(0, y);
        for (int x = 0; x < w; ++x)
            dst[x] = centre * row[x];
        for (int j = 1; j <= r; ++j) {
            const double t = k.at(j);
            const double* up = &src(0, mirror(y - j, h));
            const double* down = &src(0, mirror(y + j, h));
            for (int x = 0; x < w; ++x)
                dst[x] += t * (up[x] + down[x]);
        }
    }
    return out;
}

Decomposition decompose(const GrayImage& img, const FirKernel& k)
{
    const int taps = static_cast<int>(k.taps.size());
    if (taps % 2 == 0)
        throw Error(Errc::invalid_argument, "kernel length must be odd");
    if (img.width() < taps || img.height() < taps)
        throw Error(Errc::invalid_argument, "image (" + std::to_string(img.width()) + "x" +
                                                std::to_string(img.height()) + ") is smaller than the kernel support " +
                                                std::to_string(taps));
    return {convolve_rows(img.raster(), k), convolve_columns(img.raster(), k)};
}

FeatureField relu(FeatureField f)
{
    for (double& v : f.values)
        v = std::max(v, 0.0);
    return f;
}

FeatureField feature_map(const FeatureField& gx, const FeatureField& gy)
{
    require_same_shape(gx, gy);
    FeatureField m(gx.width, gx.height);
    for (std::size_t i = 0; i < m.values.size(); ++i) {
        const double a = gx.values[i];
        const double b = gy.values[i];
        if (a < 0.0 || b < 0.0)
            throw Error(Errc::invalid_argument, "feature_map expects rectified (non-negative) inputs");
        const double s = std::sqrt(a) + std::sqrt(b);
        m.values[i] = s * s;
    }
    return m;
}

double sigma_stat(const FeatureField& gx, const FeatureField& gy, const ForegroundMask& mask)
{
    require_same_shape(gx, gy);
    if (mask.cells.width != gx.width || mask.cells.height != gx.height)
        throw Error(Errc::invalid_argument, "mask and features differ in shape");
    std::vector<double> pool;
    pool.reserve(2 * mask.valid_count);
    for (std::size_t i = 0; i < gx.values.size(); ++i) {
        if (mask.cells.values[i]) {
            pool.push_back(gx.values[i]);
            pool.push_back(gy.values[i]);
        }
    }
    if (pool.empty())
        throw Error(Errc::empty_foreground, "no foreground pixels to pool");
    // 1-based nearest rank ceil(0.95 n), in exact integer arithmetic.
    const std::size_t rank = (95 * pool.size() + 99) / 100;
    const auto nth = pool.begin() + static_cast<std::ptrdiff_t>(rank - 1);
    std::nth_element(pool.begin(), nth, pool.end());
    return *nth;
}

double retention_ratio(double sigma)
{
    if (!(sigma >= 0.0))
        throw Error(Errc::invalid_argument, "sigma must be non-negative");
    return 0.25 * (1.0 - std::tanh(60.0 * (sigma - 0.095))) + 0.09;
}

std::vector<double> select_top(const FeatureField& m, const ForegroundMask& mask, double p)
{
    if (!(p > 0.0 && p <= 1.0))
        throw Error(Errc::invalid_argument, "retention ratio must lie in (0, 1]");
    if (mask.cells.width != m.width || mask.cells.height != m.height)
        throw Error(Errc::invalid_argument, "mask and feature map differ in shape");
    if (mask.valid_count == 0)
        throw Error(Errc::empty_foreground, "no foreground pixels to select");

    std::vector<double> values;
    values.reserve(mask.valid_count);
    for (std::size_t i = 0; i < m.values.size(); ++i)
        if (mask.cells.values[i])
            values.push_back(m.values[i]);

    const auto keep = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(p * static_cast<double>(values.size()))));
    // Only values are returned, so equal values are interchangeable and the
    // result does not depend on which tied pixel is chosen.
    const auto cut = values.begin() + static_cast<std::ptrdiff_t>(keep);
    if (keep < values.size())
        std::nth_element(values.begin(), cut - 1, values.end(), std::greater<>{});
    values.resize(keep);
    std::sort(values.begin(), values.end(), std::greater<>{});
    return values;
}

double central_moment(std::span<const double> values, int m)
{
    if (m < 2 || m % 2 != 0)
        throw Error(Errc::invalid_argument, "moment order must be even and >= 2 (got " + std::to_string(m) + ")");
    if (values.empty())
        throw Error(Errc::invalid_argument, "central moment of an empty set");
    double sum = 0.0;
    for (double v : values)
        sum += v;
    const double mean = sum / static_cast<double>(values.size());
    double acc = 0.0;
    for (double v : values)
        acc += pow_even(v - mean, m);
    return acc / static_cast<double>(values.size());
}

SharpnessScore score_single(const GrayImage& img, const FirKernel& k, int moment)
{
    const auto mask = background_mask(img);
    auto [gx, gy] = decompose(img, k);
    gx = relu(std::move(gx));
    gy = relu(std::move(gy));

    SharpnessScore score;
    score.sigma = sigma_stat(gx, gy, mask);
    const double p = retention_ratio(score.sigma);
    const auto fmap = feature_map(gx, gy);
    const auto top = select_top(fmap, mask, p);
    score.retained = top.size();
    score.moment_value = central_moment(top, moment);
    if (!(score.moment_value > 0.0))
        throw Error(Errc::degenerate_moment, "degenerate moment: retained features have zero spread");
    score.value = -std::log(score.moment_value);
    return score;
}

double combine_scores(std::array<double, 2> scores, std::array<double, 2> weights)
{
    return weights[0] * scores[0] + weights[1] * scores[1];
}

double score_combo(const GrayImage& img, const ComboConfig& cfg)
{
    for (double w : cfg.weights)
        if (!std::isfinite(w))
            throw Error(Errc::invalid_argument, "combination weights must be finite");
    const double c1 = score_single(img, cfg.kernels[0].kernel, cfg.kernels[0].moment).value;
    const double c2 = score_single(img, cfg.kernels[1].kernel, cfg.kernels[1].moment).value;
    return combine_scores({c1, c2}, cfg.weights);
}

} // namespace sharpkit

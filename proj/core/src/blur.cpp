#include "sharpkit/harness.hpp"
#include "sharpkit/scoring.hpp"

#include <algorithm>
#include <cmath>

namespace sharpkit {

FirKernel gaussian_taps(double sigma)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw Error(Errc::invalid_argument, "blur sigma must be positive and finite");
    const int r = static_cast<int>(std::ceil(4.0 * sigma));
    FirKernel k;
    k.taps.resize(static_cast<std::size_t>(2 * r + 1));
    double sum = 0.0;
    for (int i = -r; i <= r; ++i) {
        const double v = std::exp(-0.5 * (i / sigma) * (i / sigma));
        k.taps[static_cast<std::size_t>(i + r)] = v;
        sum += v;
    }
    for (auto& t : k.taps)
        t /= sum;
    return k;
}

GrayImage gaussian_blur(const GrayImage& img, double sigma)
{
    const auto k = gaussian_taps(sigma);
    auto out = convolve_columns(convolve_rows(img.raster(), k), k);
    // A convex combination stays in [0, 1] up to rounding.
    for (auto& v : out.values)
        v = std::clamp(v, 0.0, 1.0);
    return GrayImage(std::move(out));
}

} // namespace sharpkit

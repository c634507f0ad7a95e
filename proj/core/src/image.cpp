#include "sharpkit/error.hpp"
#include "sharpkit/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sharpkit {

GrayImage::GrayImage(int width, int height, std::vector<double> pixels)
{
    if (width <= 0 || height <= 0)
        throw Error(Errc::invalid_argument, "image must have positive width and height");
    if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw Error(Errc::invalid_argument, "pixel count does not match image dimensions");
    for (double v : pixels)
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
            throw Error(Errc::invalid_argument, "pixel value " + std::to_string(v) + " outside [0, 1]");
    raster_.width = width;
    raster_.height = height;
    raster_.values = std::move(pixels);
}

GrayImage::GrayImage(Raster<double> raster)
    : GrayImage(raster.width, raster.height, std::move(raster.values))
{
}

GrayImage to_gray(const InterleavedImage& img)
{
    if (img.width <= 0 || img.height <= 0)
        throw Error(Errc::invalid_argument, "zero-sized image");
    if (img.channels != 1 && img.channels != 3 && img.channels != 4)
        throw Error(Errc::invalid_argument, "unsupported channel count " + std::to_string(img.channels));
    if (img.bit_depth != 8 && img.bit_depth != 16)
        throw Error(Errc::invalid_argument, "unsupported bit depth " + std::to_string(img.bit_depth));
    const std::size_t n = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
    if (img.samples.size() != n * static_cast<std::size_t>(img.channels))
        throw Error(Errc::invalid_argument, "sample count does not match image dimensions");

    const double full_scale = img.bit_depth == 8 ? 255.0 : 65535.0;
    std::vector<double> gray(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto* px = &img.samples[i * static_cast<std::size_t>(img.channels)];
        const double luma = img.channels == 1 ? px[0] : 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2];
        gray[i] = std::clamp(luma / full_scale, 0.0, 1.0);
    }
    return GrayImage(img.width, img.height, std::move(gray));
}

} // namespace sharpkit

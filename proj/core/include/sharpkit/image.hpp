#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sharpkit {

/// Row-major 2-D raster.
template <class T>
struct Raster {
    int width = 0;
    int height = 0;
    std::vector<T> values;

    Raster() = default;
    Raster(int w, int h, T fill = T{})
        : width(w), height(h), values(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill)
    {
    }

    std::size_t size() const noexcept { return values.size(); }
    T& operator()(int x, int y) { return values[index(x, y)]; }
    const T& operator()(int x, int y) const { return values[index(x, y)]; }

    std::size_t index(int x, int y) const noexcept
    {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x);
    }

    Raster transposed() const
    {
        Raster out(height, width);
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x)
                out(y, x) = (*this)(x, y);
        return out;
    }

    Raster rotated180() const
    {
        Raster out(width, height);
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x)
                out(width - 1 - x, height - 1 - y) = (*this)(x, y);
        return out;
    }

    bool operator==(const Raster&) const = default;
};

/// Decomposed per-pixel responses; may be negative before rectification.
using FeatureField = Raster<double>;

/// Normalized grayscale image with every pixel finite and in [0, 1].
class GrayImage {
public:
    GrayImage() = default;
    /// Throws Errc::invalid_argument if the size is zero or any pixel is outside [0, 1].
    GrayImage(int width, int height, std::vector<double> pixels);
    explicit GrayImage(Raster<double> raster);

    int width() const noexcept { return raster_.width; }
    int height() const noexcept { return raster_.height; }
    double operator()(int x, int y) const { return raster_(x, y); }
    const std::vector<double>& pixels() const noexcept { return raster_.values; }
    const Raster<double>& raster() const noexcept { return raster_; }

    GrayImage transposed() const { return GrayImage(raster_.transposed()); }
    GrayImage rotated180() const { return GrayImage(raster_.rotated180()); }

private:
    Raster<double> raster_;
};

/// Foreground cells are 1; valid_count counts them.
struct ForegroundMask {
    Raster<std::uint8_t> cells;
    std::size_t valid_count = 0;
};

/// Decoded raster with 1, 3 (RGB) or 4 (RGBA) interleaved channels.
struct InterleavedImage {
    int width = 0;
    int height = 0;
    int channels = 1;
    int bit_depth = 8; ///< 8 or 16
    std::vector<std::uint16_t> samples;
};

/// Rec. 601 luma (0.299 R + 0.587 G + 0.114 B) scaled by the full-scale value.
/// Single-channel input is only rescaled; alpha is ignored.
GrayImage to_gray(const InterleavedImage& img);

} // namespace sharpkit

#pragma once

#include "sharpkit/image.hpp"

#include <filesystem>

namespace sharpkit {

/// Decodes PNG, JPEG, TIFF and the other OpenCV-supported formats into
/// interleaved gray, RGB or RGBA samples (8 or 16 bit). Throws Errc::io.
InterleavedImage decode_image(const std::filesystem::path& path);

/// decode_image followed by to_gray.
GrayImage load_gray(const std::filesystem::path& path);

/// Writes a grayscale PNG (or any OpenCV-supported format) at 8 or 16 bits,
/// rounding to the nearest code value.
void save_gray(const GrayImage& img, const std::filesystem::path& path, int bit_depth = 16);

} // namespace sharpkit

#include "sharpkit/error.hpp"
#include "sharpkit/image_io.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <cmath>
#include <string>

namespace sharpkit {

InterleavedImage decode_image(const std::filesystem::path& path)
{
    if (!std::filesystem::exists(path))
        throw Error(Errc::io, "no such file: " + path.string());
    cv::Mat m;
    try {
        m = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
    } catch (const cv::Exception& e) {
        throw Error(Errc::io, "cannot decode " + path.string() + ": " + e.what());
    }
    if (m.empty())
        throw Error(Errc::io, "cannot decode " + path.string());
    if (m.dims != 2)
        throw Error(Errc::io, path.string() + ": not a 2-D raster");

    InterleavedImage out;
    out.width = m.cols;
    out.height = m.rows;
    out.channels = m.channels();
    switch (m.depth()) {
    case CV_8U:
        out.bit_depth = 8;
        break;
    case CV_16U:
        out.bit_depth = 16;
        break;
    default:
        throw Error(Errc::io, path.string() + ": only 8- and 16-bit unsigned samples are supported");
    }
    if (out.channels != 1 && out.channels != 3 && out.channels != 4)
        throw Error(Errc::io, path.string() + ": unsupported channel count " + std::to_string(out.channels));

    // OpenCV stores colour as BGR(A); swap to RGB(A) while copying.
    const int c = out.channels;
    const bool swap = c >= 3;
    out.samples.resize(static_cast<std::size_t>(m.total()) * static_cast<std::size_t>(c));
    std::size_t i = 0;
    for (int y = 0; y < m.rows; ++y) {
        for (int x = 0; x < m.cols; ++x) {
            for (int ch = 0; ch < c; ++ch) {
                const int src = swap && ch < 3 ? 2 - ch : ch;
                out.samples[i++] = out.bit_depth == 8
                                       ? m.ptr<std::uint8_t>(y)[x * c + src]
                                       : m.ptr<std::uint16_t>(y)[x * c + src];
            }
        }
    }
    return out;
}

GrayImage load_gray(const std::filesystem::path& path) { return to_gray(decode_image(path)); }

void save_gray(const GrayImage& img, const std::filesystem::path& path, int bit_depth)
{
    if (bit_depth != 8 && bit_depth != 16)
        throw Error(Errc::invalid_argument, "bit depth must be 8 or 16");
    const double full = bit_depth == 8 ? 255.0 : 65535.0;
    cv::Mat m(img.height(), img.width(), bit_depth == 8 ? CV_8U : CV_16U);
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            const auto code = std::lround(img(x, y) * full);
            if (bit_depth == 8)
                m.at<std::uint8_t>(y, x) = static_cast<std::uint8_t>(code);
            else
                m.at<std::uint16_t>(y, x) = static_cast<std::uint16_t>(code);
        }
    bool ok = false;
    try {
        ok = cv::imwrite(path.string(), m);
    } catch (const cv::Exception& e) {
        throw Error(Errc::io, "cannot write " + path.string() + ": " + e.what());
    }
    if (!ok)
        throw Error(Errc::io, "cannot write " + path.string());
}

} // namespace sharpkit

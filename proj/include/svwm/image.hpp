#ifndef SVWM_IMAGE_HPP
#define SVWM_IMAGE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "svwm/matrix.hpp"

namespace svwm {

// 8-bit grayscale raster, row-major.
struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;

    bool operator==(const GrayImage&) const = default;
};

// Parses binary PGM ("P5", maxval <= 255). Header comments (# to end of
// line) are skipped. Throws ParseError with the failing byte offset.
GrayImage read_pgm(std::span<const std::uint8_t> bytes);

// Emits exactly "P5\n{width} {height}\n255\n" followed by the raw raster,
// so read_pgm(write_pgm(img)) == img bit for bit.
std::vector<std::uint8_t> write_pgm(const GrayImage& img);

// rows = height, cols = width; entries are the pixel values.
Matrix image_to_matrix(const GrayImage& img);

// Entries clamped to [0, 255], then rounded half away from zero.
GrayImage matrix_to_image(const Matrix& m);

// Affine min-max normalization to [0, 255] for rendering extracted marks.
// A constant matrix maps to mid-gray 128; `degenerate` reports that case.
GrayImage normalize_for_display(const Matrix& m, bool* degenerate = nullptr);

// File-path conveniences; throw IoError on filesystem failure.
GrayImage load_pgm(const std::string& path);
void save_pgm(const std::string& path, const GrayImage& img);

} // namespace svwm

#endif // SVWM_IMAGE_HPP

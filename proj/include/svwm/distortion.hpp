#ifndef SVWM_DISTORTION_HPP
#define SVWM_DISTORTION_HPP

#include <cstddef>
#include <cstdint>

#include "svwm/matrix.hpp"

namespace svwm {

// Adds zero-mean Gaussian noise of standard deviation `sigma` (pixel units),
// drawn row-major from Rng(seed). Same seed, same noise.
Matrix distort_gaussian(const Matrix& m, double sigma, std::uint64_t seed);

// Replaces the rectangle [top, top+height) x [left, left+width) with `fill`.
// The rectangle must lie within the matrix; zero-area rectangles are a no-op.
Matrix distort_crop(const Matrix& m, std::size_t top, std::size_t left, std::size_t height,
                    std::size_t width, double fill);

// Clamp to [0, 255] and round half away from zero, kept as a real matrix.
// Models the loss an adversary inflicts by re-exporting to 8 bits.
Matrix distort_quantize(const Matrix& m);

} // namespace svwm

#endif // SVWM_DISTORTION_HPP

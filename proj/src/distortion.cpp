#include "svwm/distortion.hpp"

#include <algorithm>
#include <cmath>

#include "svwm/errors.hpp"
#include "svwm/rng.hpp"

namespace svwm {

Matrix distort_gaussian(const Matrix& m, double sigma, std::uint64_t seed) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw PreconditionError("distort_gaussian: sigma must be finite and nonnegative");
    }
    if (sigma == 0.0) {
        return m;
    }
    Rng rng(seed);
    Matrix out = m;
    for (double& v : out.data()) {
        v += sigma * rng.next_gaussian();
    }
    return out;
}

Matrix distort_crop(const Matrix& m, std::size_t top, std::size_t left, std::size_t height,
                    std::size_t width, double fill) {
    if (top + height > m.rows() || left + width > m.cols()) {
        throw PreconditionError("distort_crop: rectangle [" + std::to_string(top) + "," +
                                std::to_string(left) + "]+" + std::to_string(height) + "x" +
                                std::to_string(width) + " exceeds matrix " + shape_string(m));
    }
    if (!std::isfinite(fill)) {
        throw PreconditionError("distort_crop: fill must be finite");
    }
    Matrix out = m;
    for (std::size_t i = top; i < top + height; ++i) {
        for (std::size_t j = left; j < left + width; ++j) {
            out(i, j) = fill;
        }
    }
    return out;
}

Matrix distort_quantize(const Matrix& m) {
    Matrix out = m;
    for (double& v : out.data()) {
        v = static_cast<double>(std::llround(std::clamp(v, 0.0, 255.0)));
    }
    return out;
}

} // namespace svwm

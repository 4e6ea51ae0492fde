#ifndef SVWM_METRICS_HPP
#define SVWM_METRICS_HPP

#include "svwm/matrix.hpp"

namespace svwm {

// psnr_db is +infinity exactly when mse is zero.
struct MetricReport {
    double ncc;
    double psnr_db;
    double mse;
};

// Pearson correlation over all entries, in [-1, 1]. Throws ZeroVarianceError
// when either input is constant.
double ncc(const Matrix& x, const Matrix& y);

// Mean squared difference.
double mse(const Matrix& x, const Matrix& y);

// 10 * log10(peak^2 / mse); +infinity when the inputs are identical.
double psnr(const Matrix& x, const Matrix& y, double peak = 255.0);

// All three metrics at once (peak fixed at 255 for 8-bit rasters).
MetricReport compare(const Matrix& x, const Matrix& y);

} // namespace svwm

#endif // SVWM_METRICS_HPP

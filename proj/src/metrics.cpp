#include "svwm/metrics.hpp"

#include <cmath>
#include <limits>

#include "svwm/errors.hpp"

namespace svwm {

namespace {

double mean_of(const Matrix& m) {
    double sum = 0.0;
    for (double v : m.data()) {
        sum += v;
    }
    return sum / static_cast<double>(m.size());
}

void require_same_shape(const Matrix& x, const Matrix& y, const char* op) {
    if (!x.same_shape(y)) {
        throw DimensionError(std::string(op) + ": shapes disagree (" + shape_string(x) +
                             " vs " + shape_string(y) + ")");
    }
}

} // namespace

double ncc(const Matrix& x, const Matrix& y) {
    require_same_shape(x, y, "ncc");
    const double mx = mean_of(x);
    const double my = mean_of(y);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x.data()[i] - mx;
        const double dy = y.data()[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw ZeroVarianceError(std::string("ncc: undefined correlation, ") +
                                (sxx == 0.0 ? "first" : "second") + " input has zero variance");
    }
    const double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

double mse(const Matrix& x, const Matrix& y) {
    require_same_shape(x, y, "mse");
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x.data()[i] - y.data()[i];
        sum += d * d;
    }
    return sum / static_cast<double>(x.size());
}

double psnr(const Matrix& x, const Matrix& y, double peak) {
    if (!(peak > 0.0)) {
        throw PreconditionError("psnr: peak must be positive");
    }
    const double err = mse(x, y);
    if (err == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(peak * peak / err);
}

MetricReport compare(const Matrix& x, const Matrix& y) {
    const double err = mse(x, y);
    return MetricReport{
        ncc(x, y),
        err == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(255.0 * 255.0 / err),
        err,
    };
}

} // namespace svwm

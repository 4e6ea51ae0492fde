#include "svwm/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "svwm/errors.hpp"

namespace svwm {

namespace {

void require_positive_dims(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw PreconditionError("matrix dimensions must be positive, got " +
                                std::to_string(rows) + "x" + std::to_string(cols));
    }
}

void require_finite(const std::vector<double>& data) {
    for (double v : data) {
        if (!std::isfinite(v)) {
            throw PreconditionError("matrix entries must be finite");
        }
    }
}

void require_finite_scalar(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw PreconditionError(std::string(name) + " must be finite");
    }
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    require_positive_dims(rows, cols);
    data_.assign(rows * cols, 0.0);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    require_positive_dims(rows, cols);
    if (data_.size() != rows * cols) {
        throw PreconditionError("data length " + std::to_string(data_.size()) +
                                " does not match shape " + std::to_string(rows) + "x" +
                                std::to_string(cols));
    }
    require_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> init)
    : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
    require_positive_dims(rows_, cols_);
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
        if (row.size() != cols_) {
            throw PreconditionError("ragged initializer: expected " + std::to_string(cols_) +
                                    " columns, got " + std::to_string(row.size()));
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
    require_finite(data_);
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

std::string shape_string(const Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("mat_mul: inner dimensions disagree (" + shape_string(a) +
                             " times " + shape_string(b) + ")");
    }
    Matrix out(a.rows(), b.cols());
    const std::size_t n = b.cols();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* out_row = &out.data()[i * n];
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) {
                continue;
            }
            const double* b_row = &b.data()[k * n];
            for (std::size_t j = 0; j < n; ++j) {
                out_row[j] += aik * b_row[j];
            }
        }
    }
    return out;
}

Matrix transpose(const Matrix& a) {
    Matrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = a(i, j);
        }
    }
    return out;
}

Matrix add_scaled(const Matrix& a, double alpha, const Matrix& b) {
    if (!a.same_shape(b)) {
        throw DimensionError("add_scaled: shapes disagree (" + shape_string(a) + " vs " +
                             shape_string(b) + ")");
    }
    require_finite_scalar(alpha, "alpha");
    Matrix out = a;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.data()[i] += alpha * b.data()[i];
    }
    return out;
}

Matrix scaled(const Matrix& a, double s) {
    require_finite_scalar(s, "scale");
    Matrix out = a;
    for (double& v : out.data()) {
        v *= s;
    }
    return out;
}

double frobenius_norm(const Matrix& a) {
    double sum = 0.0;
    for (double v : a.data()) {
        sum += v * v;
    }
    return std::sqrt(sum);
}

Matrix diag_from(const std::vector<double>& values, std::size_t rows, std::size_t cols) {
    require_positive_dims(rows, cols);
    const std::size_t k = std::min(rows, cols);
    if (values.size() != k) {
        throw DimensionError("diag_from: expected " + std::to_string(k) + " values for shape " +
                             std::to_string(rows) + "x" + std::to_string(cols) + ", got " +
                             std::to_string(values.size()));
    }
    require_finite(values);
    Matrix out(rows, cols);
    for (std::size_t i = 0; i < k; ++i) {
        out(i, i) = values[i];
    }
    return out;
}

std::vector<double> diag_of(const Matrix& a) {
    const std::size_t k = std::min(a.rows(), a.cols());
    std::vector<double> out(k);
    for (std::size_t i = 0; i < k; ++i) {
        out[i] = a(i, i);
    }
    return out;
}

} // namespace svwm

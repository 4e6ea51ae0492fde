#ifndef SVWM_MATRIX_HPP
#define SVWM_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace svwm {

// Dense real matrix, row-major, double entries. Value semantics: every
// operation returns a fresh matrix and never mutates its inputs. Entries are
// finite after construction; constructors reject NaN/infinity.
class Matrix {
public:
    // Zero-filled rows x cols matrix. Both dimensions must be positive.
    Matrix(std::size_t rows, std::size_t cols);

    // Takes ownership of row-major data; length must equal rows * cols and
    // every entry must be finite.
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    // Matrix{{1, 2}, {3, 4}}; all rows must have the same length.
    Matrix(std::initializer_list<std::initializer_list<double>> init);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

// "3x4" style shape string for error messages.
std::string shape_string(const Matrix& m);

// Standard product; requires a.cols == b.rows. Plain triple loop with
// 64-bit accumulation.
Matrix mat_mul(const Matrix& a, const Matrix& b);

inline Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }

Matrix transpose(const Matrix& a);

// Elementwise a + alpha * b; shapes must match, alpha must be finite.
Matrix add_scaled(const Matrix& a, double alpha, const Matrix& b);

// Elementwise s * a; s must be finite.
Matrix scaled(const Matrix& a, double s);

// sqrt of the sum of squared entries.
double frobenius_norm(const Matrix& a);

// Rectangular matrix with `values` on the main diagonal, zeros elsewhere.
// values.size() must equal min(rows, cols).
Matrix diag_from(const std::vector<double>& values, std::size_t rows, std::size_t cols);

// Main diagonal a[i,i] for i < min(rows, cols).
std::vector<double> diag_of(const Matrix& a);

} // namespace svwm

#endif // SVWM_MATRIX_HPP

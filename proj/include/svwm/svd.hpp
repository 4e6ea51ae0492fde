#ifndef SVWM_SVD_HPP
#define SVWM_SVD_HPP

#include <cstddef>
#include <vector>

#include "svwm/matrix.hpp"

namespace svwm {

// Full decomposition a = u * diag(sigma) * v^T with square orthogonal factors.
//
// Canonical form: sigma is nonincreasing and nonnegative; in every column of
// u the entry of largest absolute value is nonnegative (ties resolved at the
// lowest row index), with the paired column of v flipped to compensate.
// Trailing null-space columns of u (and of v, when cols > rows) follow the
// same sign rule on their own. Identical input bits always produce identical
// output bits.
struct SvdTriple {
    Matrix u;                  // rows x rows, orthogonal
    std::vector<double> sigma; // length min(rows, cols)
    Matrix v;                  // cols x cols, orthogonal
    std::size_t rows;
    std::size_t cols;
};

// One-sided Jacobi SVD. Works on the taller orientation internally; inputs
// with rows < cols are transposed first and u/v swapped on return.
// Singular values below 1e-12 * sigma_max are clamped to exactly zero and
// the matching columns of u are rebuilt by Gram-Schmidt completion.
// Throws ConvergenceError if the rotation sweeps fail to settle.
SvdTriple svd(const Matrix& a);

// u * diag(sigma) * v^T.
Matrix reconstruct(const SvdTriple& t);

// max-abs entry of m^T m - I; input must be square.
double orthogonality_error(const Matrix& m);

} // namespace svwm

#endif // SVWM_SVD_HPP

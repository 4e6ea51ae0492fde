#include "svwm/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "svwm/errors.hpp"

namespace svwm {

namespace {

// Rotations with relative coupling below this are skipped; a sweep with no
// rotations means convergence.
constexpr double kRotationTol = 1e-13;
constexpr int kMaxSweeps = 60;
// sigma below kRankCutoff * sigma_max counts as exactly zero.
constexpr double kRankCutoff = 1e-12;

double row_dot(const double* a, const double* b, std::size_t len) {
    double sum = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
        sum += a[k] * b[k];
    }
    return sum;
}

void rotate_rows(double* a, double* b, std::size_t len, double c, double s) {
    for (std::size_t k = 0; k < len; ++k) {
        const double x = a[k];
        const double y = b[k];
        a[k] = c * x - s * y;
        b[k] = s * x + c * y;
    }
}

// Orthogonalize candidate basis vectors against the filled columns of u and
// write the best survivor into column `slot`. Candidates are the standard
// basis vectors; the one with the largest residual wins (ties at the lowest
// index), which keeps completion deterministic.
void complete_column(Matrix& u, const std::vector<bool>& filled, std::size_t slot) {
    const std::size_t m = u.rows();
    std::vector<double> best;
    double best_norm = -1.0;
    for (std::size_t cand = 0; cand < m; ++cand) {
        std::vector<double> vec(m, 0.0);
        vec[cand] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < m; ++j) {
                if (!filled[j]) {
                    continue;
                }
                double proj = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    proj += vec[i] * u(i, j);
                }
                for (std::size_t i = 0; i < m; ++i) {
                    vec[i] -= proj * u(i, j);
                }
            }
        }
        double norm = std::sqrt(row_dot(vec.data(), vec.data(), m));
        if (norm > best_norm) {
            best_norm = norm;
            best = std::move(vec);
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        u(i, slot) = best[i] / best_norm;
    }
}

// Flip column j of m when its largest-magnitude entry (lowest row on ties)
// is negative. Returns whether a flip happened.
bool canonicalize_column(Matrix& m, std::size_t j) {
    std::size_t pivot = 0;
    double pivot_abs = -1.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double a = std::abs(m(i, j));
        if (a > pivot_abs) {
            pivot_abs = a;
            pivot = i;
        }
    }
    if (m(pivot, j) >= 0.0) {
        return false;
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
        m(i, j) = -m(i, j);
    }
    return true;
}

void canonicalize(SvdTriple& t) {
    const std::size_t k = std::min(t.rows, t.cols);
    for (std::size_t j = 0; j < t.u.cols(); ++j) {
        if (canonicalize_column(t.u, j) && j < k) {
            for (std::size_t i = 0; i < t.v.rows(); ++i) {
                t.v(i, j) = -t.v(i, j);
            }
        }
    }
    for (std::size_t j = k; j < t.v.cols(); ++j) {
        canonicalize_column(t.v, j);
    }
}

// Core one-sided Jacobi on a matrix with rows >= cols. The working copy is
// the transpose, so the columns being orthogonalized are contiguous rows.
SvdTriple svd_tall(const Matrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    Matrix work = transpose(a); // n x m; row i holds column i of a
    Matrix vt = Matrix::identity(n);

    bool converged = false;
    double worst_coupling = 0.0;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        bool rotated = false;
        worst_coupling = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            double* wi = &work.data()[i * m];
            for (std::size_t j = i + 1; j < n; ++j) {
                double* wj = &work.data()[j * m];
                const double p = row_dot(wi, wi, m);
                const double r = row_dot(wj, wj, m);
                const double q = row_dot(wi, wj, m);
                const double scale = std::sqrt(p * r);
                if (scale > 0.0) {
                    worst_coupling = std::max(worst_coupling, std::abs(q) / scale);
                }
                if (std::abs(q) <= kRotationTol * scale) {
                    continue;
                }
                const double tau = (r - p) / (2.0 * q);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                rotate_rows(wi, wj, m, c, s);
                rotate_rows(&vt.data()[i * n], &vt.data()[j * n], n, c, s);
                rotated = true;
            }
        }
        converged = !rotated;
    }
    if (!converged) {
        throw ConvergenceError("svd: Jacobi sweeps did not converge", worst_coupling);
    }

    std::vector<double> norms(n);
    for (std::size_t i = 0; i < n; ++i) {
        norms[i] = std::sqrt(row_dot(&work.data()[i * m], &work.data()[i * m], m));
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

    const double cutoff = kRankCutoff * norms[order[0]];

    SvdTriple t{Matrix(m, m), std::vector<double>(n), Matrix(n, n), m, n};
    std::vector<bool> filled(m, false);
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t src = order[col];
        const double sigma = norms[src];
        t.sigma[col] = sigma <= cutoff ? 0.0 : sigma;
        for (std::size_t i = 0; i < n; ++i) {
            t.v(i, col) = vt(src, i);
        }
        if (t.sigma[col] > 0.0) {
            const double* w = &work.data()[src * m];
            for (std::size_t i = 0; i < m; ++i) {
                t.u(i, col) = w[i] / sigma;
            }
            filled[col] = true;
        }
    }
    for (std::size_t col = 0; col < m; ++col) {
        if (!filled[col]) {
            complete_column(t.u, filled, col);
            filled[col] = true;
        }
    }
    return t;
}

} // namespace

SvdTriple svd(const Matrix& a) {
    for (double v : a.data()) {
        if (!std::isfinite(v)) {
            throw PreconditionError("svd: input entries must be finite");
        }
    }
    if (a.rows() < a.cols()) {
        SvdTriple flipped = svd_tall(transpose(a));
        SvdTriple t{std::move(flipped.v), std::move(flipped.sigma), std::move(flipped.u),
                    a.rows(), a.cols()};
        canonicalize(t);
        return t;
    }
    SvdTriple t = svd_tall(a);
    canonicalize(t);
    return t;
}

Matrix reconstruct(const SvdTriple& t) {
    // u * (S * v^T): keeps the sparse diagonal factor on the cheap side.
    Matrix svt = mat_mul(diag_from(t.sigma, t.rows, t.cols), transpose(t.v));
    return mat_mul(t.u, svt);
}

double orthogonality_error(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("orthogonality_error: matrix must be square, got " +
                             shape_string(m));
    }
    const std::size_t n = m.rows();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                dot += m(k, i) * m(k, j);
            }
            const double target = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(dot - target));
        }
    }
    return worst;
}

} // namespace svwm

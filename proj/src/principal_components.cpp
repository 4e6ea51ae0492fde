#include "svwm/principal_components.hpp"

#include <cmath>

#include "svwm/errors.hpp"
#include "svwm/svd.hpp"

namespace svwm {

namespace {

void require_key_shape(const Matrix& subject, const PcKeys& keys, const char* name) {
    if (subject.rows() != keys.rows || subject.cols() != keys.cols) {
        throw DimensionError(std::string(name) + " shape " + shape_string(subject) +
                             " does not match key shape " + std::to_string(keys.rows) + "x" +
                             std::to_string(keys.cols));
    }
}

// Shared head of extraction and reference search: remove the cover rebuilt
// from the keys and undo the cover rotation and the scaling.
Matrix recover_principal_components(const Matrix& suspect, const PcKeys& keys) {
    require_key_shape(suspect, keys, "suspect");
    if (!std::isfinite(keys.alpha) || keys.alpha <= 0.0) {
        throw PreconditionError("keys carry a non-positive alpha");
    }
    const Matrix cover = mat_mul(
        keys.u, mat_mul(diag_from(keys.sigma, keys.rows, keys.cols), transpose(keys.v)));
    const Matrix residual = add_scaled(suspect, -1.0, cover);
    // Orthogonal factors invert by transposition; no general inverse needed.
    const Matrix rotated = mat_mul(transpose(keys.u), mat_mul(residual, keys.v));
    return scaled(rotated, 1.0 / keys.alpha);
}

} // namespace

PcEmbedResult pc_embed(const Matrix& cover, const Matrix& mark, double alpha) {
    if (!cover.same_shape(mark)) {
        throw DimensionError("mark shape " + shape_string(mark) +
                             " does not match cover shape " + shape_string(cover));
    }
    if (!std::isfinite(alpha) || alpha <= 0.0) {
        throw PreconditionError("alpha must be positive");
    }
    const std::size_t rows = cover.rows();
    const std::size_t cols = cover.cols();
    SvdTriple cover_svd = svd(cover);
    SvdTriple mark_svd = svd(mark);
    const Matrix principal =
        mat_mul(mark_svd.u, diag_from(mark_svd.sigma, rows, cols));
    const Matrix s1 = add_scaled(diag_from(cover_svd.sigma, rows, cols), alpha, principal);
    const Matrix watermarked = mat_mul(cover_svd.u, mat_mul(s1, transpose(cover_svd.v)));
    PcKeys keys{std::move(cover_svd.u), std::move(cover_svd.sigma), std::move(cover_svd.v),
                std::move(mark_svd.v),  alpha,                      rows,
                cols};
    return PcEmbedResult{watermarked, std::move(keys)};
}

Matrix pc_extract(const Matrix& suspect, const PcKeys& keys) {
    const Matrix principal = recover_principal_components(suspect, keys);
    return mat_mul(principal, transpose(keys.v_w));
}

Matrix pc_reference_search(const Matrix& suspect, const PcKeys& keys, const Matrix& reference) {
    require_key_shape(reference, keys, "reference");
    const Matrix principal = recover_principal_components(suspect, keys);
    const SvdTriple reference_svd = svd(reference);
    return mat_mul(principal, transpose(reference_svd.v));
}

} // namespace svwm

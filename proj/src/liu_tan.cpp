#include "svwm/liu_tan.hpp"

#include <cmath>

#include "svwm/errors.hpp"
#include "svwm/svd.hpp"

namespace svwm {

namespace {

void require_embedding_inputs(const Matrix& cover, const Matrix& mark, double alpha) {
    if (!cover.same_shape(mark)) {
        throw DimensionError("mark shape " + shape_string(mark) +
                             " does not match cover shape " + shape_string(cover));
    }
    if (!std::isfinite(alpha) || alpha <= 0.0) {
        throw PreconditionError("alpha must be positive");
    }
}

LiuTanKeygenResult keygen_from(const SvdTriple& cover_svd, const Matrix& mark, double alpha) {
    const std::size_t rows = cover_svd.rows;
    const std::size_t cols = cover_svd.cols;
    const Matrix perturbed =
        add_scaled(diag_from(cover_svd.sigma, rows, cols), alpha, mark);
    SvdTriple mark_svd = svd(perturbed);
    LiuTanKeys keys{std::move(mark_svd.u), std::move(mark_svd.v), cover_svd.sigma,
                    alpha,                 rows,                  cols};
    return LiuTanKeygenResult{std::move(keys), std::move(mark_svd.sigma)};
}

} // namespace

LiuTanKeygenResult lt_keygen(const Matrix& cover, const Matrix& mark, double alpha) {
    require_embedding_inputs(cover, mark, alpha);
    return keygen_from(svd(cover), mark, alpha);
}

LiuTanEmbedResult lt_embed(const Matrix& cover, const Matrix& mark, double alpha) {
    require_embedding_inputs(cover, mark, alpha);
    const SvdTriple cover_svd = svd(cover);
    LiuTanKeygenResult gen = keygen_from(cover_svd, mark, alpha);
    const Matrix watermarked = mat_mul(
        cover_svd.u,
        mat_mul(diag_from(gen.s_w, cover.rows(), cover.cols()), transpose(cover_svd.v)));
    return LiuTanEmbedResult{watermarked, std::move(gen.keys)};
}

Matrix lt_extract(const Matrix& suspect, const LiuTanKeys& keys) {
    if (suspect.rows() != keys.rows || suspect.cols() != keys.cols) {
        throw DimensionError("suspect shape " + shape_string(suspect) +
                             " does not match key shape " + std::to_string(keys.rows) + "x" +
                             std::to_string(keys.cols));
    }
    if (!std::isfinite(keys.alpha) || keys.alpha <= 0.0) {
        throw PreconditionError("keys carry a non-positive alpha");
    }
    const SvdTriple suspect_svd = svd(suspect);
    const Matrix rebuilt = mat_mul(
        keys.u_w,
        mat_mul(diag_from(suspect_svd.sigma, keys.rows, keys.cols), transpose(keys.v_w)));
    const Matrix delta = add_scaled(rebuilt, -1.0, diag_from(keys.s_cover, keys.rows, keys.cols));
    return scaled(delta, 1.0 / keys.alpha);
}

} // namespace svwm

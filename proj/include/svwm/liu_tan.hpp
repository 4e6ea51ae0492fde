#ifndef SVWM_LIU_TAN_HPP
#define SVWM_LIU_TAN_HPP

#include <cstddef>
#include <vector>

#include "svwm/matrix.hpp"

namespace svwm {

// Detector side-information for the baseline scheme. The detector holds the
// singular vectors of the perturbed singular-value matrix plus the cover's
// singular values and the embedding strength.
struct LiuTanKeys {
    Matrix u_w;                  // rows x rows, orthogonal
    Matrix v_w;                  // cols x cols, orthogonal
    std::vector<double> s_cover; // nonincreasing, length min(rows, cols)
    double alpha;                // > 0
    std::size_t rows;
    std::size_t cols;
};

struct LiuTanKeygenResult {
    LiuTanKeys keys;
    std::vector<double> s_w; // singular values used to build the watermarked image
};

struct LiuTanEmbedResult {
    Matrix watermarked;
    LiuTanKeys keys;
};

// Decomposes the cover, perturbs its singular-value matrix by alpha * mark,
// and decomposes the result. Cover and mark must share a shape; alpha > 0.
LiuTanKeygenResult lt_keygen(const Matrix& cover, const Matrix& mark, double alpha);

// Rebuilds the cover with the perturbed singular values in place of the
// originals. Returns the watermarked image together with the detector keys.
LiuTanEmbedResult lt_embed(const Matrix& cover, const Matrix& mark, double alpha);

// Inverts the embedding: takes the suspect's singular values, rebuilds the
// perturbed matrix from the key vectors, and removes the cover diagonal.
Matrix lt_extract(const Matrix& suspect, const LiuTanKeys& keys);

} // namespace svwm

#endif // SVWM_LIU_TAN_HPP

#ifndef SVWM_PRINCIPAL_COMPONENTS_HPP
#define SVWM_PRINCIPAL_COMPONENTS_HPP

#include <cstddef>
#include <vector>

#include "svwm/matrix.hpp"

namespace svwm {

// Detector side-information for the principal-components scheme: the cover's
// full decomposition plus the watermark's right singular vectors. The
// watermark's left vectors and singular values are deliberately absent; an
// attacker holding these keys cannot rebuild the principal components.
struct PcKeys {
    Matrix u;                  // rows x rows, orthogonal
    std::vector<double> sigma; // cover singular values, nonincreasing
    Matrix v;                  // cols x cols, orthogonal
    Matrix v_w;                // cols x cols, right singular vectors of the mark
    double alpha;              // > 0
    std::size_t rows;
    std::size_t cols;
};

struct PcEmbedResult {
    Matrix watermarked;
    PcKeys keys;
};

// Adds alpha times the mark's principal components (left vectors scaled by
// the singular values) to the cover's singular-value matrix, then rebuilds
// the image with the cover's vectors. Shapes must match; alpha > 0.
PcEmbedResult pc_embed(const Matrix& cover, const Matrix& mark, double alpha);

// Subtracts the reconstructed cover, maps the residual back through the
// cover vectors to recover the principal components, and reattaches the
// mark's right singular vectors.
Matrix pc_extract(const Matrix& suspect, const PcKeys& keys);

// The attack surface: recover the principal components as in pc_extract but
// reattach the right singular vectors of an arbitrary reference image. For a
// never-embedded reference this yields noise.
Matrix pc_reference_search(const Matrix& suspect, const PcKeys& keys, const Matrix& reference);

} // namespace svwm

#endif // SVWM_PRINCIPAL_COMPONENTS_HPP

#pragma once

#include "matrix.hpp"

namespace elmlc {

// Default relative cutoff for singular values: sigma < rtol * sigma_max
// counts as zero. Overridable through the experiment config (model.svd_rtol).
inline constexpr double kDefaultSvdRtol = 1e-12;

// Moore-Penrose pseudoinverse via a rank-revealing SVD. Satisfies the four
// Penrose conditions to ~1e-8 relative Frobenius error; agrees with the
// closed forms H^T(HH^T)^-1 and (H^TH)^-1 H^T when H has full rank.
// Throws NumericError (with the operand shape) if the decomposition fails.
Matrix pseudoinverse(const Matrix& h, double rtol = kDefaultSvdRtol);

// Minimum-norm least-squares solution of H beta = T, i.e. beta = H^+ T,
// applied through the SVD factors rather than by forming H^+ explicitly.
// Throws ShapeError when h.rows != t.rows.
Matrix least_squares_solve(const Matrix& h, const Matrix& t,
                           double rtol = kDefaultSvdRtol);

}  // namespace elmlc

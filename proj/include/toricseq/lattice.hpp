#pragma once

#include <vector>

#include "toricseq/core.hpp"

namespace toricseq {

using IntMatrix = std::vector<IntVec>;  // row-major

IntMatrix identity_matrix(size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// Smith normal form U * M * V = D with U, V unimodular and D diagonal,
/// d_1 | d_2 | ... with non-negative entries.
struct SmithForm {
  IntMatrix u;
  IntMatrix v;
  IntMatrix d;
  IntVec invariant_factors;  // nonzero diagonal entries of d
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Inverse of a square integer matrix with determinant +-1.
/// Throws InternalError when the matrix is not unimodular.
IntMatrix unimodular_inverse(const IntMatrix& m);

}  // namespace toricseq

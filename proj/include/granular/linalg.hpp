#pragma once

#include <cstdint>
#include <utility>

#include "granular/rng.hpp"
#include "granular/types.hpp"

namespace granular {

/// Eigen-decomposition of a symmetric matrix, eigenvalues sorted descending.
/// Each eigenvector's sign is fixed (largest-magnitude entry positive) so
/// repeated runs serialize identically.
struct SymmetricEigen {
  Vector eigenvalues;   // descending
  Matrix eigenvectors;  // column i pairs with eigenvalues[i]
};

SymmetricEigen symmetric_eigen_desc(const Matrix& symmetric);

/// Haar-distributed orthonormal frame: `rows` orthonormal vectors of
/// dimension `dim`, as rows. QR of a Gaussian matrix with the R-diagonal
/// sign convention, so a given Rng state always yields the same frame.
Matrix random_orthonormal_rows(std::size_t rows, std::size_t dim, Rng& rng);

/// Largest principal angle (radians) between the row spans of two
/// orthonormal-row matrices of equal row count.
double max_principal_angle(const Matrix& basis_a, const Matrix& basis_b);

/// lambda_max / lambda_min of a symmetric positive semi-definite matrix;
/// +inf when the smallest eigenvalue is not strictly positive.
double spd_condition_number(const Matrix& symmetric);

}  // namespace granular

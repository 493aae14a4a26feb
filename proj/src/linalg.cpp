#include "granular/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "granular/errors.hpp"

namespace granular {

SymmetricEigen symmetric_eigen_desc(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric);
  if (solver.info() != Eigen::Success)
    throw Error("symmetric eigensolver failed to converge");
  const Eigen::Index p = symmetric.rows();
  SymmetricEigen out;
  out.eigenvalues.resize(p);
  out.eigenvectors.resize(p, p);
  // Solver returns ascending order; reverse it.
  for (Eigen::Index i = 0; i < p; ++i) {
    out.eigenvalues[i] = solver.eigenvalues()[p - 1 - i];
    out.eigenvectors.col(i) = solver.eigenvectors().col(p - 1 - i);
  }
  for (Eigen::Index i = 0; i < p; ++i) {
    Eigen::Index pivot = 0;
    out.eigenvectors.col(i).cwiseAbs().maxCoeff(&pivot);
    if (out.eigenvectors(pivot, i) < 0.0) out.eigenvectors.col(i) = -out.eigenvectors.col(i);
  }
  return out;
}

Matrix random_orthonormal_rows(std::size_t rows, std::size_t dim, Rng& rng) {
  if (rows > dim)
    throw ParameterOutOfRange("frame rows exceed ambient dimension");
  Matrix gauss(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(rows));
  for (Eigen::Index j = 0; j < gauss.cols(); ++j)
    for (Eigen::Index i = 0; i < gauss.rows(); ++i) gauss(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Matrix> qr(gauss);
  Matrix q = qr.householderQ() * Matrix::Identity(gauss.rows(), gauss.cols());
  const Matrix r = qr.matrixQR().topRows(gauss.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q.transpose();
}

double max_principal_angle(const Matrix& basis_a, const Matrix& basis_b) {
  if (basis_a.rows() != basis_b.rows() || basis_a.cols() != basis_b.cols())
    throw DimensionMismatch("principal angles need equal-shape bases");
  const Matrix overlap = basis_a * basis_b.transpose();
  Eigen::JacobiSVD<Matrix> svd(overlap);
  const double smallest_cosine =
      std::clamp(svd.singularValues().minCoeff(), -1.0, 1.0);
  return std::acos(smallest_cosine);
}

double spd_condition_number(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric,
                                               Eigen::EigenvaluesOnly);
  const double lo = solver.eigenvalues().minCoeff();
  const double hi = solver.eigenvalues().maxCoeff();
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

}  // namespace granular

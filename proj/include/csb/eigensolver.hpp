#pragma once

#include <Eigen/Dense>

#include "csb/subspace.hpp"

namespace csb {

// Full spectrum of a real symmetric tridiagonal matrix.
// eigenvalues are ascending; column m of eigenvectors belongs to eigenvalues[m]
// and has its first non-negligible component positive.
struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
};

// Sweep cap per eigenvalue before decompose() gives up with NumericError.
inline constexpr int kMaxQlIterations = 60;

// Implicit-shift QL with eigenvector accumulation.
// Throws DomainError for malformed input and NumericError (carrying the
// eigenvalue index) when an eigenvalue fails to converge.
EigenDecomposition decompose(const TridiagonalHamiltonian &h);

} // namespace csb

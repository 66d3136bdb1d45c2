#pragma once

#include <Eigen/Dense>

namespace specgraph {

struct EigenDecomposition {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors; // right eigenvectors by column; empty if not requested
};

/// Dense complex nonsymmetric eigendecomposition (LAPACK zgeev).
/// Throws NumericalError(EigensolverFailure).
EigenDecomposition eigen_decompose(Eigen::MatrixXcd a, bool want_vectors);

/// Singular values in descending order (LAPACK zgesdd, no vectors).
Eigen::VectorXd singular_values(Eigen::MatrixXcd a);

} // namespace specgraph

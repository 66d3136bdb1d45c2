#pragma once

#include "specgraph/collocation.hpp"
#include "specgraph/profile.hpp"

#include <Eigen/Dense>
#include <memory>
#include <vector>

namespace specgraph {

/// Collocation matrix of  i ε² z'' + q z  on the interior Chebyshev nodes
/// (Dirichlet conditions by restriction). The self-adjoint variant drops the
/// factor i:  -ε² z'' + q z.
struct ModelOperator {
  Eigen::MatrixXcd matrix;
  double epsilon = 0.0;
  bool self_adjoint = false;
  std::shared_ptr<const CollocationGrid> grid;

  int size() const { return static_cast<int>(matrix.rows()); }
  Eigen::VectorXd interior_nodes() const;
  /// Gram matrix of the discrete L2 (Clenshaw–Curtis) or first-derivative inner
  /// product on interior samples.
  Eigen::MatrixXd gram(bool sobolev) const;
};

ModelOperator build_model(const Profile& p, double epsilon, int n, bool self_adjoint = false);

/// Orr–Sommerfeld pencil A y = λ B y (λ the phase speed) for the clamped
/// problem, on the basis y = (1 - x²)² p(x) with p interpolating at the n-1
/// interior Chebyshev nodes (coefficients are the values of p there).
///   A = (D²-α²)² - iαR [q (D²-α²) - q'']
///   B = -iαR (D²-α²)
struct OSOperator {
  Eigen::MatrixXcd a_matrix;
  Eigen::MatrixXcd b_matrix;
  Eigen::MatrixXcd s_matrix; // B^{-1} A
  double alpha = 0.0;
  double reynolds = 0.0;
  double b_condition = 0.0;
  int n = 0;
  Eigen::VectorXd nodes;        // interior nodes
  Eigen::VectorXd envelope;     // (1 - x²)² at the nodes: y = envelope .* coefficients
  Eigen::MatrixXd l2_gram;      // exact ∫ y_i y_j
  Eigen::MatrixXd sobolev_gram; // exact ∫ y_i' y_j'

  double epsilon() const; // (αR)^{-1/2}
  int size() const { return static_cast<int>(s_matrix.rows()); }
  const Eigen::MatrixXd& gram(bool sobolev) const { return sobolev ? sobolev_gram : l2_gram; }
};

/// Throws NumericalError(SingularB) when cond(B) > 1e14.
OSOperator build_os(const Profile& p, double alpha, double reynolds, int n);

struct SpectrumResult {
  Eigen::VectorXcd eigenvalues;
  Eigen::MatrixXcd eigenvectors;   // node samples (model: interior values; OS: y at interior nodes)
  Eigen::MatrixXcd coefficients;   // eigenvectors in the operator's own coordinates, unit L2
  std::vector<bool> trusted;       // set by mark_trusted
  std::vector<bool> near_defective;
  int resolution = 0;

  int size() const { return static_cast<int>(eigenvalues.size()); }
};

/// Full eigendecomposition. With vectors, each is normalised to unit discrete
/// L2 norm and near-defective pairs are flagged (eigenvalues within 1e-6 and
/// eigenvector angle below 1e-3).
SpectrumResult eigensolve(const ModelOperator& op, bool want_vectors = true);
SpectrumResult eigensolve(const OSOperator& op, bool want_vectors = true);

struct TrustedEigenvalue {
  int index = 0;
  cplx value;
  double distance = 0.0; // to the nearest high-resolution eigenvalue
};

/// Eigenvalues of `low` with an eigenvalue of `high` within tol.
std::vector<TrustedEigenvalue> filter_spurious(const SpectrumResult& low, const SpectrumResult& high,
                                               double tol);

/// filter_spurious, recording the result in low.trusted.
std::vector<TrustedEigenvalue> mark_trusted(SpectrumResult& low, const SpectrumResult& high, double tol);

std::vector<cplx> trusted_values(const SpectrumResult& s);

} // namespace specgraph

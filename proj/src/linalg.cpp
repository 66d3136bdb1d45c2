#include "specgraph/linalg.hpp"

#include "specgraph/errors.hpp"

#include <algorithm>
#include <complex>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace specgraph {

EigenDecomposition eigen_decompose(Eigen::MatrixXcd a, bool want_vectors) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  EigenDecomposition out;
  out.values.resize(n);
  if (want_vectors) out.vectors.resize(n, n);
  if (n == 0) return out;
  Eigen::MatrixXcd dummy(1, 1);
  auto* vr = want_vectors ? out.vectors.data() : dummy.data();
  lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, a.data(), n,
                                  out.values.data(), nullptr, 1, vr, want_vectors ? n : 1);
  if (info != 0)
    throw NumericalError(ErrorKind::EigensolverFailure, "disc", "eigensolve",
                         "zgeev returned info=" + std::to_string(info));
  return out;
}

Eigen::VectorXd singular_values(Eigen::MatrixXcd a) {
  const lapack_int m = static_cast<lapack_int>(a.rows()), n = static_cast<lapack_int>(a.cols());
  Eigen::VectorXd s(std::min(m, n));
  if (s.size() == 0) return s;
  lapack_complex_double u[1], vt[1];
  lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, a.data(), m, s.data(), u, 1, vt, 1);
  if (info != 0)
    throw NumericalError(ErrorKind::EigensolverFailure, "nonnormal", "resolvent_norm",
                         "zgesdd returned info=" + std::to_string(info));
  return s;
}

} // namespace specgraph

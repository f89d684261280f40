#include "gfs/linalg.hpp"

#include <lapacke.h>

#include <algorithm>

#include "gfs/error.hpp"

namespace gfs {

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

RVector hermitian_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw Error(Errc::DegenerateSplitFailure, "hermitian eigensolver did not converge");
  return es.eigenvalues();
}

int bandwidth(const CMatrix& m) {
  int kd = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != cplx{0.0, 0.0})
        kd = std::max(kd, static_cast<int>(i > j ? i - j : j - i));
  return kd;
}

RVector hermitian_band_eigenvalues(const CMatrix& m, int kd) {
  const lapack_int n = static_cast<lapack_int>(m.rows());
  const lapack_int ldab = kd + 1;
  // Upper band storage, column major: ab(kd + i - j, j) = m(i, j) for i <= j.
  std::vector<lapack_complex_double> ab(static_cast<std::size_t>(ldab) * n);
  for (lapack_int j = 0; j < n; ++j)
    for (lapack_int i = std::max<lapack_int>(0, j - kd); i <= j; ++i) {
      const cplx v = m(i, j);
      ab[static_cast<std::size_t>(j) * ldab + (kd + i - j)] =
          lapack_make_complex_double(v.real(), v.imag());
    }
  RVector w(n);
  const lapack_int info = LAPACKE_zhbev(LAPACK_COL_MAJOR, 'N', 'U', n, kd, ab.data(),
                                        ldab, w.data(), nullptr, 1);
  if (info != 0)
    throw Error(Errc::DegenerateSplitFailure,
                "band eigensolver failed, info = " + std::to_string(info));
  return w;
}

}  // namespace gfs

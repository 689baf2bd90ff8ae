// Copyright 2026 The tidiss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dense_lapack.hpp"

#include <complex>

#include <lapacke.h>

#include "tidiss/errors.hpp"

namespace tidiss::detail {

namespace {

lapack_complex_double* lc(std::complex<double>* p) {
  return reinterpret_cast<lapack_complex_double*>(p);
}
const lapack_complex_double* lc(const std::complex<double>* p) {
  return reinterpret_cast<const lapack_complex_double*>(p);
}

}  // namespace

DenseLU::DenseLU(Eigen::MatrixXcd a) : lu_(std::move(a)) {
  const lapack_int n = static_cast<lapack_int>(lu_.rows());
  if (lu_.cols() != lu_.rows()) throw InvalidArgument("DenseLU: square matrix required");
  const double anorm = lu_.cwiseAbs().colwise().sum().maxCoeff();
  pivots_.resize(static_cast<size_t>(n));
  const lapack_int info =
      LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, lc(lu_.data()), n, pivots_.data());
  if (info < 0) throw NumericalError("zgetrf: illegal argument");
  if (info > 0) {
    singular_ = true;
    rcond_ = 0.0;
    return;
  }
  double rcond = 0.0;
  const lapack_int cinfo =
      LAPACKE_zgecon(LAPACK_COL_MAJOR, '1', n, lc(lu_.data()), n, anorm, &rcond);
  if (cinfo != 0) throw NumericalError("zgecon failed");
  rcond_ = rcond;
}

Eigen::VectorXcd DenseLU::solve(const Eigen::VectorXcd& b) const {
  if (singular_) throw NumericalError("DenseLU::solve: matrix is singular");
  const lapack_int n = static_cast<lapack_int>(lu_.rows());
  Eigen::VectorXcd x = b;
  const lapack_int info = LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', n, 1, lc(lu_.data()), n,
                                         pivots_.data(), lc(x.data()), n);
  if (info != 0) throw NumericalError("zgetrs failed");
  return x;
}

SvdResult svd(Eigen::MatrixXcd a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  SvdResult out;
  out.singular_values.resize(n);
  Eigen::MatrixXcd u(n, n), vt(n, n);
  const lapack_int info =
      LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'A', n, n, lc(a.data()), n, out.singular_values.data(),
                     lc(u.data()), n, lc(vt.data()), n);
  if (info != 0) throw NumericalError("zgesdd failed");
  out.right_vectors = vt.adjoint();
  return out;
}

Eigen::VectorXcd general_eigenvalues(Eigen::MatrixXcd a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXcd w(n);
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, lc(a.data()), n,
                                        lc(w.data()), nullptr, 1, nullptr, 1);
  if (info != 0) throw NumericalError("zgeev failed");
  return w;
}

Eigen::VectorXd hermitian_eigenvalues(Eigen::MatrixXcd a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd w(n);
  const lapack_int info =
      LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'U', n, lc(a.data()), n, w.data());
  if (info != 0) throw NumericalError("zheevd failed");
  return w;
}

}  // namespace tidiss::detail

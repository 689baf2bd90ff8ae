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

// Thin RAII wrappers over the LAPACK routines the solvers need. Internal.

#pragma once

#include <vector>

#include <Eigen/Dense>

namespace tidiss::detail {

/// In-place LU factorization (zgetrf) with condition estimate.
class DenseLU {
 public:
  explicit DenseLU(Eigen::MatrixXcd a);

  /// Reciprocal condition number estimate in the 1-norm (zgecon).
  double rcond() const { return rcond_; }
  bool singular() const { return singular_; }
  Eigen::VectorXcd solve(const Eigen::VectorXcd& b) const;

 private:
  Eigen::MatrixXcd lu_;
  std::vector<int> pivots_;
  double rcond_ = 0.0;
  bool singular_ = false;
};

/// Singular values (descending) and right singular vectors of a square
/// matrix (zgesdd).
struct SvdResult {
  Eigen::VectorXd singular_values;
  Eigen::MatrixXcd right_vectors;  // columns
};
SvdResult svd(Eigen::MatrixXcd a);

/// Eigenvalues of a general complex matrix (zgeev, no vectors).
Eigen::VectorXcd general_eigenvalues(Eigen::MatrixXcd a);

/// Eigenvalues of a Hermitian matrix, ascending (zheevd, no vectors).
Eigen::VectorXd hermitian_eigenvalues(Eigen::MatrixXcd a);

}  // namespace tidiss::detail

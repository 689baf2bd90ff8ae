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

// Shared fixtures for the test binaries.

#pragma once

#include <random>

#include "tidiss/fock.hpp"

namespace tidiss::testing {

/// Random density matrix supported on the lowest `support` Fock levels.
inline DensityMatrix random_state(int dim, int support, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix g = Matrix::Zero(dim, support);
  for (int i = 0; i < support; ++i)
    for (int j = 0; j < support; ++j) g(i, j) = Complex(n(gen), n(gen));
  return DensityMatrix::normalized(Operator(g * g.adjoint()));
}

/// Random Hermitian matrix with standard normal entries.
inline Matrix random_hermitian(int dim, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(n(gen), n(gen));
  return 0.5 * (g + g.adjoint());
}

/// Max abs entry of the top-left interior block.
inline double interior_max(const Matrix& m, int interior) {
  return m.topLeftCorner(interior, interior).cwiseAbs().maxCoeff();
}

}  // namespace tidiss::testing

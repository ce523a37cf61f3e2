// Copyright 2026 The dissipa Authors
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

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dissipa {

using Complex = std::complex<double>;

/// Dense square operator on a finite Hilbert space. Energies are in units of
/// the reference Rabi frequency, times in its inverse.
using ComplexMatrix = Eigen::MatrixXcd;

/// State vector. Not normalized unless the producer says so.
using KetVector = Eigen::VectorXcd;

/// Raised for inputs that violate an operation's preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr Eigen::Index kDefaultMaxDimension = 4096;

/// Returns the kronecker product a (x) b. Throws InvalidInput when the result
/// would exceed `max_dim`.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   Eigen::Index max_dim = kDefaultMaxDimension);
KetVector kron(const KetVector& a, const KetVector& b);

/// ab - ba.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix dagger(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr(a b) in O(d^2) without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// |ket><bra|.
ComplexMatrix outer(const KetVector& ket, const KetVector& bra);
ComplexMatrix projector(const KetVector& ket);

/// Single basis vector of dimension `dim`.
KetVector basis_ket(Eigen::Index dim, Eigen::Index index);

/// |i><j| on a `dim`-level space.
ComplexMatrix transition(Eigen::Index dim, Eigen::Index i, Eigen::Index j);

/// Truncated bosonic annihilation operator on photon numbers 0..n_max.
ComplexMatrix annihilation(Eigen::Index n_max);

/// True when ||a - a^dag||_F <= tol * max(1, ||a||_F).
bool is_hermitian(const ComplexMatrix& a, double tol = kHermitianTolerance);

void require_square(const ComplexMatrix& a, const char* what);
void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* what);

struct HermitianEigen {
  /// Ascending.
  std::vector<double> eigenvalues;
  /// Orthonormal; order matches `eigenvalues`. Vectors spanning a degenerate
  /// eigenspace come in no particular order or phase.
  std::vector<KetVector> eigenvectors;
};

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized as
/// (a + a^dag)/2 before decomposition; non-Hermitian input is rejected.
HermitianEigen hermitian_eigen(const ComplexMatrix& a);

/// Smallest eigenvalue of the Hermitian part of `a`.
double min_eigenvalue(const ComplexMatrix& a);

}  // namespace dissipa

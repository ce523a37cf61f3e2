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

#include "dissipa/operator_algebra.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace dissipa {

namespace {

std::string dims_message(const char* what, Eigen::Index a, Eigen::Index b) {
  std::ostringstream os;
  os << what << ": dimension mismatch (" << a << " vs " << b << ")";
  return os.str();
}

}  // namespace

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << a.rows()
       << "x" << a.cols();
    throw InvalidInput(os.str());
  }
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* what) {
  require_square(a, what);
  require_square(b, what);
  if (a.rows() != b.rows()) {
    throw InvalidInput(dims_message(what, a.rows(), b.rows()));
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   Eigen::Index max_dim) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (rows > max_dim || cols > max_dim) {
    std::ostringstream os;
    os << "kron: result " << rows << "x" << cols
       << " exceeds maximum dimension " << max_dim;
    throw InvalidInput(os.str());
  }
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

KetVector kron(const KetVector& a, const KetVector& b) {
  KetVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

ComplexMatrix dagger(const ComplexMatrix& a) { return a.adjoint(); }

Complex trace(const ComplexMatrix& a) {
  require_square(a, "trace");
  return a.trace();
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidInput(dims_message("frobenius_distance", a.rows(), b.rows()));
  }
  return (a - b).norm();
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw InvalidInput(dims_message("trace_of_product", a.cols(), b.rows()));
  }
  return (a.transpose().array() * b.array()).sum();
}

ComplexMatrix outer(const KetVector& ket, const KetVector& bra) {
  return ket * bra.adjoint();
}

ComplexMatrix projector(const KetVector& ket) { return outer(ket, ket); }

KetVector basis_ket(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) {
    throw InvalidInput("basis_ket: index out of range");
  }
  KetVector v = KetVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

ComplexMatrix transition(Eigen::Index dim, Eigen::Index i, Eigen::Index j) {
  if (i < 0 || j < 0 || i >= dim || j >= dim) {
    throw InvalidInput("transition: index out of range");
  }
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix annihilation(Eigen::Index n_max) {
  if (n_max < 1) throw InvalidInput("annihilation: n_max must be >= 1");
  ComplexMatrix a = ComplexMatrix::Zero(n_max + 1, n_max + 1);
  for (Eigen::Index n = 1; n <= n_max; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.norm());
  return (a - a.adjoint()).norm() <= tol * scale;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& a) {
  require_square(a, "hermitian_eigen");
  if (!a.allFinite()) throw InvalidInput("hermitian_eigen: non-finite entries");
  if (!is_hermitian(a)) throw InvalidInput("hermitian_eigen: matrix is not Hermitian");
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw InvalidInput("hermitian_eigen: decomposition did not converge");
  }
  HermitianEigen out;
  out.eigenvalues.reserve(static_cast<std::size_t>(a.rows()));
  out.eigenvectors.reserve(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    out.eigenvalues.push_back(solver.eigenvalues()(i));
    out.eigenvectors.emplace_back(solver.eigenvectors().col(i));
  }
  return out;
}

double min_eigenvalue(const ComplexMatrix& a) {
  require_square(a, "min_eigenvalue");
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

}  // namespace dissipa

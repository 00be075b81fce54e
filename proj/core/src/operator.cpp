// Copyright 2026 The cdcg Authors
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

#include "cdcg/operator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "cdcg/errors.hpp"

namespace cdcg {
namespace {

void require_same_factorization(const Operator& a, const Operator& b, const char* op) {
  if (a.factorization() != b.factorization()) {
    std::ostringstream os;
    os << op << ": factorization mismatch (" << a.dim_s() << "x" << a.dim_b() << " vs "
       << b.dim_s() << "x" << b.dim_b() << ")";
    throw ValidationError(os.str());
  }
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// Eigendecomposition of a Hermitian matrix with eigenvalues clipped at zero.
// Throws if any eigenvalue is below -kStateTol.
Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  Eigen::VectorXd w = es.eigenvalues();
  for (Index i = 0; i < w.size(); ++i) {
    if (w(i) < -kStateTol) {
      std::ostringstream os;
      os << "matrix is not positive semidefinite: eigenvalue " << w(i);
      throw ValidationError(os.str());
    }
    w(i) = std::sqrt(std::max(w(i), 0.0));
  }
  return es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Operator::Operator(Matrix entries, Factorization factorization)
    : entries_(std::move(entries)), factorization_(factorization) {
  if (factorization_.dim_s < 1 || factorization_.dim_b < 1) {
    throw ValidationError("Operator: factor dimensions must be positive");
  }
  if (entries_.rows() != entries_.cols() || entries_.rows() != factorization_.total()) {
    std::ostringstream os;
    os << "Operator: matrix is " << entries_.rows() << "x" << entries_.cols()
       << " but factorization " << factorization_.dim_s << "x" << factorization_.dim_b
       << " requires side " << factorization_.total();
    throw ValidationError(os.str());
  }
}

Operator Operator::on_system(Matrix entries) {
  const Index n = entries.rows();
  return Operator(std::move(entries), {n, 1});
}

Operator Operator::identity(Factorization f) {
  return Operator(Matrix::Identity(f.total(), f.total()), f);
}

Operator Operator::zero(Factorization f) { return Operator(Matrix::Zero(f.total(), f.total()), f); }

Operator Operator::adjoint() const { return Operator(entries_.adjoint(), factorization_); }

double Operator::anti_hermitian_norm() const {
  return spectral_norm(Matrix(entries_ - entries_.adjoint()));
}

double Operator::unitarity_defect() const {
  return spectral_norm(Matrix(entries_.adjoint() * entries_ - Matrix::Identity(dim(), dim())));
}

bool Operator::is_hermitian(double tol) const { return anti_hermitian_norm() <= tol; }

bool Operator::is_unitary(double tol) const { return unitarity_defect() <= tol; }

Operator& Operator::operator+=(const Operator& rhs) {
  require_same_factorization(*this, rhs, "operator+");
  entries_ += rhs.entries_;
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  require_same_factorization(*this, rhs, "operator-");
  entries_ -= rhs.entries_;
  return *this;
}

Operator& Operator::operator*=(Complex s) {
  entries_ *= s;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_factorization(a, b, "operator*");
  return Operator(a.entries_ * b.entries_, a.factorization_);
}

Operator tensor(const Matrix& system, const Matrix& bath) {
  if (system.rows() != system.cols() || bath.rows() != bath.cols()) {
    throw ValidationError("tensor: inputs must be square");
  }
  const Index ds = system.rows();
  const Index db = bath.rows();
  Matrix out(ds * db, ds * db);
  for (Index i = 0; i < ds; ++i) {
    for (Index j = 0; j < ds; ++j) {
      out.block(i * db, j * db, db, db) = system(i, j) * bath;
    }
  }
  return Operator(std::move(out), {ds, db});
}

Operator embed_system(const Matrix& system, Index dim_b) {
  return tensor(system, Matrix::Identity(dim_b, dim_b));
}

Operator matexp(const Operator& h, double t) {
  const double defect = h.anti_hermitian_norm();
  if (defect > kHermitianTol) {
    std::ostringstream os;
    os << "matexp: input is not Hermitian, ||H - H^dagger|| = " << defect;
    throw ValidationError(os.str());
  }
  if (t == 0.0) return Operator::identity(h.factorization());
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h.matrix()));
  const Eigen::VectorXcd phases =
      (es.eigenvalues() * (-t)).unaryExpr([](double x) { return std::polar(1.0, x); });
  return Operator(es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint(),
                  h.factorization());
}

Operator matlog_unitary(const Operator& u) {
  const double defect = u.unitarity_defect();
  if (defect > kUnitaryTol) {
    std::ostringstream os;
    os << "matlog_unitary: input is not unitary, ||U^dagger U - I|| = " << defect;
    throw ValidationError(os.str());
  }
  // A unitary is normal, so its Schur form is diagonal and the Schur vectors
  // are an orthonormal eigenbasis even for clustered eigenvalues.
  Eigen::ComplexSchur<Matrix> schur(u.matrix());
  const Matrix& tri = schur.matrixT();
  const Index n = tri.rows();
  Eigen::VectorXcd generator(n);
  double worst = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double phase = std::arg(tri(i, i));
    worst = std::max(worst, std::abs(phase));
    generator(i) = -phase;
  }
  if (worst > std::numbers::pi - kBranchGuard) {
    std::ostringstream os;
    os << "matlog_unitary: eigenphase " << worst << " within " << kBranchGuard
       << " of the branch cut; shorten the switching time";
    throw BranchAmbiguityError(os.str(), worst);
  }
  const Matrix& v = schur.matrixU();
  return Operator(hermitian_part(v * generator.asDiagonal() * v.adjoint()), u.factorization());
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double trace_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

Operator partial_trace(const Operator& a, Factor traced) {
  const Index ds = a.dim_s();
  const Index db = a.dim_b();
  const Matrix& m = a.matrix();
  if (traced == Factor::bath) {
    Matrix out = Matrix::Zero(ds, ds);
    for (Index i = 0; i < ds; ++i) {
      for (Index j = 0; j < ds; ++j) {
        out(i, j) = m.block(i * db, j * db, db, db).trace();
      }
    }
    return Operator(std::move(out), {ds, 1});
  }
  Matrix out = Matrix::Zero(db, db);
  for (Index i = 0; i < ds; ++i) out += m.block(i * db, i * db, db, db);
  return Operator(std::move(out), {1, db});
}

Operator mod_b(const Operator& e) {
  const Operator bath_part = partial_trace(e, Factor::system);
  Operator pure_bath = tensor(Matrix::Identity(e.dim_s(), e.dim_s()), bath_part.matrix());
  pure_bath *= Complex(1.0 / static_cast<double>(e.dim_s()));
  return e - pure_bath;
}

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw ValidationError("DensityMatrix: matrix must be square and nonempty");
  }
  const double herm = spectral_norm(Matrix(entries_ - entries_.adjoint()));
  if (herm > kStateTol) {
    std::ostringstream os;
    os << "DensityMatrix: not Hermitian, ||rho - rho^dagger|| = " << herm;
    throw ValidationError(os.str());
  }
  const Complex tr = entries_.trace();
  if (std::abs(tr - Complex(1.0)) > kStateTol) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr.real() << (tr.imag() < 0 ? "-" : "+")
       << std::abs(tr.imag()) << "i differs from 1";
    throw ValidationError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(entries_), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kStateTol) {
    std::ostringstream os;
    os << "DensityMatrix: negative eigenvalue " << es.eigenvalues().minCoeff();
    throw ValidationError(os.str());
  }
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw ValidationError("DensityMatrix::pure: zero state vector");
  const Vector unit = psi / n;
  return DensityMatrix(unit * unit.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  if (dim < 1) throw ValidationError("DensityMatrix::maximally_mixed: dimension must be positive");
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2) {
  if (r1.dim() != r2.dim()) {
    std::ostringstream os;
    os << "trace_distance: dimension mismatch " << r1.dim() << " vs " << r2.dim();
    throw ValidationError(os.str());
  }
  return trace_norm(Matrix(r1.matrix() - r2.matrix()));
}

double fidelity(const DensityMatrix& actual, const DensityMatrix& target) {
  if (actual.dim() != target.dim()) {
    std::ostringstream os;
    os << "fidelity: dimension mismatch " << actual.dim() << " vs " << target.dim();
    throw ValidationError(os.str());
  }
  for (const auto* pair : {&target, &actual}) {
    const Matrix& m = pair->matrix();
    if (std::abs((m * m).trace().real() - 1.0) < kPurityTol) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
      const Vector psi = es.eigenvectors().col(es.eigenvalues().size() - 1);
      const Matrix& other = pair == &target ? actual.matrix() : target.matrix();
      const double overlap = (psi.adjoint() * other * psi)(0, 0).real();
      return std::clamp(std::sqrt(std::max(overlap, 0.0)), 0.0, 1.0);
    }
  }
  const Matrix root = psd_sqrt(actual.matrix());
  const Matrix inner = root * target.matrix() * root;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(inner), Eigen::EigenvaluesOnly);
  double f = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    f += std::sqrt(std::max(es.eigenvalues()(i), 0.0));
  }
  return std::clamp(f, 0.0, 1.0);
}

const Matrix& pauli(int index) {
  static const std::array<Matrix, 4> table = [] {
    std::array<Matrix, 4> p;
    const Complex i(0.0, 1.0);
    p[0] = Matrix::Identity(2, 2);
    p[1] = Matrix::Zero(2, 2);
    p[1](0, 1) = 1.0;
    p[1](1, 0) = 1.0;
    p[2] = Matrix::Zero(2, 2);
    p[2](0, 1) = -i;
    p[2](1, 0) = i;
    p[3] = Matrix::Zero(2, 2);
    p[3](0, 0) = 1.0;
    p[3](1, 1) = -1.0;
    return p;
  }();
  if (index < 0 || index > 3) throw ValidationError("pauli: index must be in 0..3");
  return table[static_cast<std::size_t>(index)];
}

}  // namespace cdcg

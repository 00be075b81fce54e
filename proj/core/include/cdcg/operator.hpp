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

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace cdcg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kBranchGuard = 1e-6;
inline constexpr double kStateTol = 1e-10;
inline constexpr double kPurityTol = 1e-12;

// Joint space is system (x) bath with the system index varying slowest, so
// a joint basis index is i_s * dim_b + i_b.
struct Factorization {
  Index dim_s = 1;
  Index dim_b = 1;

  Index total() const { return dim_s * dim_b; }
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

enum class Factor { system, bath };

// Dense square matrix tagged with its system (x) bath factorization.
class Operator {
 public:
  Operator() = default;
  Operator(Matrix entries, Factorization factorization);

  // Operator acting on the system alone (bath dimension 1).
  static Operator on_system(Matrix entries);
  static Operator identity(Factorization f);
  static Operator zero(Factorization f);

  const Matrix& matrix() const { return entries_; }
  Factorization factorization() const { return factorization_; }
  Index dim_s() const { return factorization_.dim_s; }
  Index dim_b() const { return factorization_.dim_b; }
  Index dim() const { return factorization_.total(); }

  Operator adjoint() const;

  // Spectral norm of A - A^dagger (zero for Hermitian operators).
  double anti_hermitian_norm() const;
  // Spectral norm of A^dagger A - I.
  double unitarity_defect() const;
  bool is_hermitian(double tol = kHermitianTol) const;
  bool is_unitary(double tol = kUnitaryTol) const;

  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(Complex s);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  Matrix entries_;
  Factorization factorization_;
};

// Kronecker product with `system` as the leftmost factor. Both inputs are
// taken as plain square matrices on their respective factors.
Operator tensor(const Matrix& system, const Matrix& bath);

// system (x) I_bath.
Operator embed_system(const Matrix& system, Index dim_b);

// exp(-i h t) for Hermitian h via eigendecomposition.
Operator matexp(const Operator& h, double t);

// Hermitian E with exp(-i E) = u on the principal branch. Throws
// BranchAmbiguityError if an eigenphase lies within kBranchGuard of +/- pi.
Operator matlog_unitary(const Operator& u);

double spectral_norm(const Matrix& a);
inline double spectral_norm(const Operator& a) { return spectral_norm(a.matrix()); }

// Sum of singular values.
double trace_norm(const Matrix& a);

Operator partial_trace(const Operator& a, Factor traced);

// Removes the pure-bath component: E - (1/d_s) I_S (x) Tr_S(E).
Operator mod_b(const Operator& e);

// Single-factor density matrix: Hermitian, PSD, unit trace.
class DensityMatrix {
 public:
  // Validates; small negative eigenvalues above -kStateTol are accepted.
  explicit DensityMatrix(Matrix entries);

  static DensityMatrix pure(const Vector& psi);
  static DensityMatrix maximally_mixed(Index dim);

  const Matrix& matrix() const { return entries_; }
  Index dim() const { return entries_.rows(); }

 private:
  Matrix entries_;
};

// ||r1 - r2||_1, no factor of one half: orthogonal pure states are at 2.
double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2);

// Uhlmann fidelity Tr sqrt(sqrt(a) t sqrt(a)), root (not squared) convention.
double fidelity(const DensityMatrix& actual, const DensityMatrix& target);

// Pauli matrices, index 0..3 = I, X, Y, Z.
const Matrix& pauli(int index);

}  // namespace cdcg

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

#include "cdcg/error_model.hpp"

#include <random>
#include <sstream>

#include "cdcg/errors.hpp"

namespace cdcg {
namespace {

double uniform(std::mt19937_64& rng, double hi) {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return static_cast<double>(rng() >> 11) * kScale * hi;
}

// sigma on `site` of an (n_bath + 1)-spin register, site 0 being the system.
Matrix site_operator(const Matrix& sigma, int site, int n_bath) {
  Matrix out = Matrix::Identity(1, 1);
  for (int k = 0; k <= n_bath; ++k) {
    const Matrix& factor = (k == site) ? sigma : pauli(0);
    Matrix next(out.rows() * 2, out.cols() * 2);
    for (Index i = 0; i < out.rows(); ++i) {
      for (Index j = 0; j < out.cols(); ++j) next.block(i * 2, j * 2, 2, 2) = out(i, j) * factor;
    }
    out = std::move(next);
  }
  return out;
}

Factorization joint(int n_bath) { return {2, Index{1} << n_bath}; }

}  // namespace

void SpinBathSpec::validate() const {
  if (n_bath < 1 || n_bath > 8) {
    throw ValidationError("SpinBathSpec.n_bath: must be in 1..8, got " + std::to_string(n_bath));
  }
  if (!(j_max > 0.0)) {
    throw ValidationError("SpinBathSpec.j_max: must be positive");
  }
  if (!(b_max >= 0.0)) {
    throw ValidationError("SpinBathSpec.b_max: must be nonnegative");
  }
}

BathCouplings draw_couplings(const SpinBathSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  BathCouplings c;
  c.heisenberg.reserve(static_cast<std::size_t>(spec.n_bath));
  for (int i = 0; i < spec.n_bath; ++i) c.heisenberg.push_back(uniform(rng, spec.j_max));
  for (int i = 0; i < spec.n_bath; ++i) {
    for (int k = i + 1; k < spec.n_bath; ++k) c.dipolar.push_back(uniform(rng, spec.b_max));
  }
  return c;
}

Operator heisenberg_coupling(std::span<const double> j) {
  const int n = static_cast<int>(j.size());
  if (n < 1) throw ValidationError("heisenberg_coupling: need at least one bath spin");
  Matrix h = Matrix::Zero(Index{2} << n, Index{2} << n);
  for (int i = 0; i < n; ++i) {
    if (j[static_cast<std::size_t>(i)] == 0.0) continue;
    for (int a = 1; a <= 3; ++a) {
      h += (0.25 * j[static_cast<std::size_t>(i)]) *
           (site_operator(pauli(a), 0, n) * site_operator(pauli(a), i + 1, n));
    }
  }
  return Operator(std::move(h), joint(n));
}

Operator dipolar_bath(int n_bath, std::span<const double> b) {
  const std::size_t pairs = static_cast<std::size_t>(n_bath * (n_bath - 1) / 2);
  if (b.size() != pairs) {
    std::ostringstream os;
    os << "dipolar_bath: expected " << pairs << " pair couplings, got " << b.size();
    throw ValidationError(os.str());
  }
  Matrix h = Matrix::Zero(Index{2} << n_bath, Index{2} << n_bath);
  std::size_t p = 0;
  for (int i = 0; i < n_bath; ++i) {
    for (int k = i + 1; k < n_bath; ++k, ++p) {
      if (b[p] == 0.0) continue;
      const auto pair = [&](int a) {
        return Matrix(site_operator(pauli(a), i + 1, n_bath) * site_operator(pauli(a), k + 1, n_bath));
      };
      h += (0.25 * b[p]) * (pair(1) + pair(2) - 2.0 * pair(3));
    }
  }
  return Operator(std::move(h), joint(n_bath));
}

Operator system_drift(const std::array<double, 3>& h, int n_bath) {
  Matrix s = Matrix::Zero(2, 2);
  for (int a = 0; a < 3; ++a) s += h[static_cast<std::size_t>(a)] * pauli(a + 1);
  return embed_system(s, Index{1} << n_bath);
}

Operator build_heisenberg_coupling(const SpinBathSpec& spec) {
  return heisenberg_coupling(draw_couplings(spec).heisenberg);
}

Operator build_dipolar_bath(const SpinBathSpec& spec) {
  return dipolar_bath(spec.n_bath, draw_couplings(spec).dipolar);
}

ErrorHamiltonian assemble(const SpinBathSpec& spec) { return assemble(spec, draw_couplings(spec)); }

ErrorHamiltonian assemble(const SpinBathSpec& spec, const BathCouplings& couplings) {
  spec.validate();
  if (couplings.heisenberg.size() != static_cast<std::size_t>(spec.n_bath)) {
    throw ValidationError("assemble: Heisenberg coupling count does not match n_bath");
  }
  ErrorHamiltonian h;
  h.couplings = couplings;
  h.h_se = system_drift(spec.h_drift, spec.n_bath);
  h.h_sb = heisenberg_coupling(couplings.heisenberg);
  h.h_b = dipolar_bath(spec.n_bath, couplings.dipolar);
  h.h_e = h.h_se + h.h_sb + h.h_b;
  h.norm_he = spectral_norm(h.h_e);
  h.norm_err = spectral_norm(h.h_sb + h.h_se);
  return h;
}

char to_char(PauliLabel label) { return "IXYZ"[static_cast<int>(label)]; }

std::array<Operator, 4> pauli_decomposition(const Operator& h) {
  if (h.dim_s() != 2) throw ValidationError("pauli_decomposition: system must be a qubit");
  std::array<Operator, 4> partners;
  for (int a = 0; a < 4; ++a) {
    const Operator weighted = embed_system(pauli(a), h.dim_b()) * h;
    Operator b = partial_trace(weighted, Factor::system);
    b *= Complex(0.5);
    partners[static_cast<std::size_t>(a)] = std::move(b);
  }
  return partners;
}

std::vector<PauliLabel> error_span(const Operator& h) {
  const auto partners = pauli_decomposition(h);
  std::vector<PauliLabel> labels;
  for (int a = 0; a < 4; ++a) {
    if (spectral_norm(partners[static_cast<std::size_t>(a)]) > 1e-12) {
      labels.push_back(static_cast<PauliLabel>(a));
    }
  }
  return labels;
}

}  // namespace cdcg

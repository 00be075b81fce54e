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

#include "cdcg/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "cdcg/errors.hpp"

namespace cdcg {
namespace {

Vector plus_state() {
  Vector psi(2);
  psi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return psi;
}

}  // namespace

Operator segment_propagator(const PrimitiveSegment& seg, const Operator& h_e) {
  if (!(seg.duration > 0.0)) throw ValidationError("segment_propagator: duration must be positive");
  if (h_e.dim_s() != 2) throw ValidationError("segment_propagator: system must be a qubit");
  const Matrix n = seg.axis[0] * pauli(1) + seg.axis[1] * pauli(2) + seg.axis[2] * pauli(3);
  const Operator h = embed_system(seg.amplitude() * n, h_e.dim_b()) + h_e;
  return matexp(h, seg.duration);
}

Operator run_schedule(const Schedule& s, const Operator& h_e) {
  if (s.segments.empty()) throw ValidationError("run_schedule: empty schedule");
  using Key = std::tuple<double, double, double, double, double>;
  std::map<Key, Matrix> cache;
  Matrix u = Matrix::Identity(h_e.dim(), h_e.dim());
  Matrix next(h_e.dim(), h_e.dim());
  for (const auto& seg : s.segments) {
    const Key key{seg.axis[0], seg.axis[1], seg.axis[2], seg.angle, seg.duration};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, segment_propagator(seg, h_e).matrix()).first;
    next.noalias() = it->second * u;
    u.swap(next);
  }
  return Operator(std::move(u), h_e.factorization());
}

ErrorAction error_action(const Operator& u_total, const GateSpec& target) {
  if (u_total.dim_s() != 2) throw ValidationError("error_action: system must be a qubit");
  Matrix m = embed_system(target.unitary().adjoint(), u_total.dim_b()).matrix() * u_total.matrix();
  const Complex tr = m.trace();
  if (std::abs(tr) > 0.0) m *= std::conj(tr) / std::abs(tr);
  ErrorAction out;
  out.generator = matlog_unitary(Operator(std::move(m), u_total.factorization()));
  out.eta = spectral_norm(mod_b(out.generator));
  return out;
}

DensityMatrix reduced_final_state(const Operator& u, const Vector& psi, const DensityMatrix& rho_b) {
  if (psi.size() != u.dim_s() || rho_b.dim() != u.dim_b()) {
    throw ValidationError("reduced_final_state: state dimensions do not match the propagator");
  }
  const Matrix rho0 = tensor(psi * psi.adjoint(), rho_b.matrix()).matrix();
  const Operator rho = Operator(u.matrix() * rho0 * u.matrix().adjoint(), u.factorization());
  Matrix reduced = partial_trace(rho, Factor::bath).matrix();
  reduced = 0.5 * (reduced + reduced.adjoint());
  return DensityMatrix(std::move(reduced));
}

SimulationResult evaluate(const SimulationConfig& cfg) {
  const Operator& h_e = cfg.h_e;
  const Vector psi_raw = cfg.initial_system_state.value_or(plus_state());
  if (psi_raw.size() != h_e.dim_s()) {
    throw ValidationError("evaluate: initial system state has the wrong dimension");
  }
  if (std::abs(psi_raw.norm() - 1.0) > kStateTol) {
    throw ValidationError("evaluate: initial system state is not normalized");
  }
  const Vector psi = psi_raw / psi_raw.norm();
  const DensityMatrix rho_b = cfg.bath_state.value_or(DensityMatrix::maximally_mixed(h_e.dim_b()));
  if (rho_b.dim() != h_e.dim_b()) throw ValidationError("evaluate: bath state dimension mismatch");

  SimulationResult r;
  r.level = cfg.level;
  r.tau_min = cfg.tau_min;
  r.total_duration = cfg.schedule.total_duration;
  r.u_total = run_schedule(cfg.schedule, h_e);

  try {
    r.epg_eta = error_action(r.u_total, cfg.target).eta;
  } catch (const BranchAmbiguityError&) {
    r.branch_ambiguous = true;
    r.epg_eta = std::numeric_limits<double>::quiet_NaN();
  }

  const Matrix q = cfg.target.unitary();
  const Vector phi = q * psi;
  const DensityMatrix rho_a = reduced_final_state(r.u_total, psi, rho_b);
  const DensityMatrix rho_t = DensityMatrix::pure(phi);
  r.trace_dist = trace_distance(rho_a, rho_t);
  r.fid = fidelity(rho_a, rho_t);

  // Weight outside the target: sum_k w_k |(Pi_perp (x) I) U |psi, b_k>|^2.
  // Amplitudes are small, so squaring them keeps full relative accuracy.
  Eigen::SelfAdjointEigenSolver<Matrix> bath(rho_b.matrix());
  const Index db = h_e.dim_b();
  double leak = 0.0;
  for (Index k = 0; k < db; ++k) {
    const double w = bath.eigenvalues()(k);
    if (w <= 0.0) continue;
    Vector in(h_e.dim());
    for (Index s = 0; s < psi.size(); ++s) in.segment(s * db, db) = psi(s) * bath.eigenvectors().col(k);
    const Vector out = r.u_total.matrix() * in;
    Vector along = Vector::Zero(db);
    for (Index s = 0; s < psi.size(); ++s) along += std::conj(phi(s)) * out.segment(s * db, db);
    for (Index s = 0; s < psi.size(); ++s) {
      leak += w * (out.segment(s * db, db) - phi(s) * along).squaredNorm();
    }
  }
  leak = std::clamp(leak, 0.0, 1.0);
  r.infidelity = leak / (1.0 + std::sqrt(1.0 - leak));
  return r;
}

Operator compose_first_order(std::span<const TimedGate> gates, const Operator& h_e) {
  if (gates.empty()) throw ValidationError("compose_first_order: need at least one gate");
  Operator sum = Operator::zero(h_e.factorization());
  Operator partial = Operator::identity(h_e.factorization());
  for (const auto& g : gates) {
    const Operator e = error_action(run_schedule(g.schedule, h_e), g.target).generator;
    sum += partial.adjoint() * e * partial;
    partial = embed_system(g.target.unitary(), h_e.dim_b()) * partial;
  }
  return sum;
}

}  // namespace cdcg

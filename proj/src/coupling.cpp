// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "maxmin/coupling.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <string>

namespace maxmin {

namespace {

void check_dims(const ChannelRealization& channels, const NetworkConfig& config) {
  if (channels.cells() != config.cells || channels.users_per_cell() != config.users_per_cell ||
      channels.antennas() != config.antennas) {
    throw InvalidArgument("channel realization does not match the network dimensions");
  }
}

void check_length(Eigen::Index got, const NetworkConfig& config, const char* what) {
  if (got != config.users()) throw InvalidArgument(std::string(what) + " must have length J*K");
}

ComplexVector solve_unit(const ComplexMatrix& a, const ComplexVector& h, double* quad) {
  Eigen::LLT<ComplexMatrix> llt(a);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("interference-plus-noise covariance is not positive definite");
  }
  ComplexVector x = llt.solve(h);
  if (quad != nullptr) *quad = h.dot(x).real();
  const double norm = x.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::runtime_error("MVDR solve produced a zero or non-finite direction");
  }
  return x / norm;
}

}  // namespace

GainMatrix build_gain(const ChannelRealization& channels, const BeamformingMatrix& u) {
  const int n = channels.users();
  if (u.users() != n || u.antennas() != channels.antennas()) {
    throw InvalidArgument("beamforming matrix does not match the channel dimensions");
  }
  GainMatrix gm;
  gm.g_mat.resize(n, n);
  for (int col = 0; col < n; ++col) {
    for (int row = 0; row < n; ++row) {
      gm.g_mat(row, col) = std::norm(channels.h(col, row).dot(u.column(col)));
    }
  }
  gm.g_vec.resize(n);
  for (int m = 0; m < n; ++m) {
    if (!(gm.g_mat(m, m) > 0.0)) {
      throw DegenerateBeamformer("beamformer " + std::to_string(m + 1) +
                                 " is orthogonal to its own channel");
    }
    gm.g_vec[m] = 1.0 / gm.g_mat(m, m);
  }
  gm.f_mat = gm.g_mat;
  gm.f_mat.diagonal().setZero();
  return gm;
}

RealVector primal_sinr(const PowerVector& p, const GainMatrix& gm, const NetworkConfig& config) {
  check_length(p.size(), config, "p");
  const double inv_n = 1.0 / config.antennas;
  const RealVector interference = inv_n * (gm.f_mat * p.values) + config.noise;
  return (inv_n * p.values.array() * gm.g_mat.diagonal().array() / interference.array()).matrix();
}

RealVector dual_sinr(const PowerVector& q, const GainMatrix& gm, const NetworkConfig& config) {
  check_length(q.size(), config, "q");
  const double inv_n = 1.0 / config.antennas;
  const RealVector interference = inv_n * (gm.f_mat.transpose() * q.values) + config.weights;
  return (inv_n * q.values.array() * gm.g_mat.diagonal().array() / interference.array()).matrix();
}

ComplexVector mvdr(const ChannelRealization& channels, const PowerVector& q,
                   const NetworkConfig& config, int m) {
  check_dims(channels, config);
  check_length(q.size(), config, "q");
  const int n = config.users();
  if (m < 0 || m >= n) throw InvalidArgument("user index out of range");
  const int ant = config.antennas;
  ComplexMatrix a = config.weights[m] * ComplexMatrix::Identity(ant, ant);
  for (int other = 0; other < n; ++other) {
    if (other == m) continue;
    const ComplexVector& h = channels.h(m, other);
    a.selfadjointView<Eigen::Lower>().rankUpdate(h, q[other] / ant);
  }
  return solve_unit(a, channels.h(m, m), nullptr);
}

MvdrSolution mvdr_all(const ChannelRealization& channels, const PowerVector& q,
                      const NetworkConfig& config) {
  check_dims(channels, config);
  check_length(q.size(), config, "q");
  const int n = config.users();
  const int ant = config.antennas;
  const double inv_n = 1.0 / ant;
  ComplexMatrix u(ant, n);
  RealVector sinr(n);
  for (int cell = 0; cell < config.cells; ++cell) {
    // Total received covariance at this base station; each user of the cell
    // removes its own rank-one term.
    ComplexMatrix total = ComplexMatrix::Zero(ant, ant);
    for (int b = 0; b < n; ++b) {
      total.selfadjointView<Eigen::Lower>().rankUpdate(channels.from_cell(cell, b), q[b] * inv_n);
    }
    for (int k = 0; k < config.users_per_cell; ++k) {
      const int m = cell * config.users_per_cell + k;
      const ComplexVector& own = channels.h(m, m);
      ComplexMatrix a = total;
      a.selfadjointView<Eigen::Lower>().rankUpdate(own, -q[m] * inv_n);
      a.diagonal().array() += config.weights[m];
      double quad = 0.0;
      u.col(m) = solve_unit(a, own, &quad);
      sinr[m] = q[m] * inv_n * quad;
    }
  }
  return {BeamformingMatrix(std::move(u)), std::move(sinr)};
}

ExtendedCouplingMatrix extended_matrix(const GainMatrix& gm, const NetworkConfig& config,
                                       NetworkKind kind) {
  check_length(gm.g_vec.size(), config, "gain vector");
  const double inv_p = 1.0 / config.power_budget;
  RealMatrix core;
  if (kind == NetworkKind::kPrimal) {
    core = gm.f_mat + inv_p * config.noise * config.weights.transpose();
  } else {
    core = gm.f_mat.transpose() + inv_p * config.weights * config.noise.transpose();
  }
  const RealVector scale = config.priorities.cwiseProduct(gm.g_vec);
  return {scale.asDiagonal() * core, kind};
}

BeamformingMatrix matched_filters(const ChannelRealization& channels) {
  const int n = channels.users();
  ComplexMatrix u(channels.antennas(), n);
  for (int m = 0; m < n; ++m) {
    const ComplexVector& h = channels.h(m, m);
    const double norm = h.norm();
    if (!(norm > 0.0)) throw DegenerateBeamformer("own channel is zero");
    u.col(m) = h / norm;
  }
  return BeamformingMatrix(std::move(u));
}

}  // namespace maxmin

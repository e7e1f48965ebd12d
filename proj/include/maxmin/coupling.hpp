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

#ifndef MAXMIN_COUPLING_HPP
#define MAXMIN_COUPLING_HPP

#include "maxmin/types.hpp"

namespace maxmin {

/// G(m,n) = |h(n,m)^H u_n|^2 (row: receiving user, column: interfering
/// stream), F = G with zero diagonal, g_m = 1 / G(m,m).
struct GainMatrix {
  RealMatrix g_mat;
  RealVector g_vec;
  RealMatrix f_mat;
};

/// Throws DegenerateBeamformer when some u_m is orthogonal to h(m,m).
GainMatrix build_gain(const ChannelRealization& channels, const BeamformingMatrix& u);

/// Downlink SINR: (p_m/N) G(m,m) / ((1/N)(F p)_m + sigma_m).
RealVector primal_sinr(const PowerVector& p, const GainMatrix& gm, const NetworkConfig& config);

/// Virtual uplink SINR: (q_m/N) G(m,m) / ((1/N)(F^T q)_m + w_m).
RealVector dual_sinr(const PowerVector& q, const GainMatrix& gm, const NetworkConfig& config);

/// Receive beamformer of user m minimising interference-plus-noise under a
/// distortionless constraint, normalised to unit length.
ComplexVector mvdr(const ChannelRealization& channels, const PowerVector& q,
                   const NetworkConfig& config, int m);

/// MVDR beamformers for every user, plus the dual SINR quadratic form
/// (q_m/N) h(m,m)^H A_m^{-1} h(m,m) obtained from the same factorisation.
struct MvdrSolution {
  BeamformingMatrix u;
  RealVector dual_sinr;
};

MvdrSolution mvdr_all(const ChannelRealization& channels, const PowerVector& q,
                      const NetworkConfig& config);

enum class NetworkKind { kPrimal, kDual };

/// diag(beta o g)(F + sigma w^T / P) for the downlink and
/// diag(beta o g)(F^T + w sigma^T / P) for the virtual uplink.
struct ExtendedCouplingMatrix {
  RealMatrix b_mat;
  NetworkKind kind = NetworkKind::kPrimal;
};

ExtendedCouplingMatrix extended_matrix(const GainMatrix& gm, const NetworkConfig& config,
                                       NetworkKind kind);

/// Matched filters h(m,m)/||h(m,m)||.
BeamformingMatrix matched_filters(const ChannelRealization& channels);

}  // namespace maxmin

#endif  // MAXMIN_COUPLING_HPP

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

#ifndef MAXMIN_PERRON_HPP
#define MAXMIN_PERRON_HPP

#include "maxmin/types.hpp"

namespace maxmin {

/// Spectral radius and positive right/left eigenvectors of a nonnegative
/// irreducible matrix. x and y are scaled to unit 1-norm.
struct PerronPair {
  double rho = 0.0;
  RealVector x;
  RealVector y;
  double residual = 0.0;  // max of ||Bx - rho x||_inf and ||B^T y - rho y||_inf, over rho
  int iterations = 0;
};

/// Power iteration with inf-norm normalisation on B and B^T. Throws
/// ConvergenceFailure (reporting the last residual) when either run does not
/// reach tol within max_iter steps, which happens for reducible or periodic B.
PerronPair perron_pair(const RealMatrix& b, double tol = 1e-13, int max_iter = 100000);

/// Rescale a Perron vector so that (1/N) prices^T v equals the budget.
RealVector scale_to_budget(const RealVector& v, const RealVector& prices, int antennas,
                           double power_budget);

}  // namespace maxmin

#endif  // MAXMIN_PERRON_HPP

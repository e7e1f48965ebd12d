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

#include "maxmin/perron.hpp"

#include <cmath>
#include <sstream>

namespace maxmin {

namespace {

struct PowerRun {
  double rho = 0.0;
  RealVector v;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

PowerRun power_iterate(const RealMatrix& b, double tol, int max_iter) {
  const Eigen::Index n = b.rows();
  PowerRun run;
  run.v = RealVector::Ones(n);
  for (int it = 1; it <= max_iter; ++it) {
    RealVector next = b * run.v;
    const double scale = next.lpNorm<Eigen::Infinity>();
    if (!(scale > 0.0) || !std::isfinite(scale)) break;
    next /= scale;
    run.iterations = it;
    // Rayleigh-type estimate on the normalised iterate.
    const RealVector image = b * next;
    run.rho = image.dot(next) / next.squaredNorm();
    run.residual = (image - run.rho * next).lpNorm<Eigen::Infinity>() / run.rho;
    run.v = std::move(next);
    if (run.residual <= tol && (run.v.array() > 0.0).all()) {
      run.converged = true;
      break;
    }
  }
  return run;
}

}  // namespace

PerronPair perron_pair(const RealMatrix& b, double tol, int max_iter) {
  if (b.rows() != b.cols() || b.rows() == 0) throw InvalidArgument("matrix must be square");
  if (!b.allFinite() || (b.array() < 0.0).any()) {
    throw InvalidArgument("matrix must be entrywise nonnegative and finite");
  }
  const PowerRun right = power_iterate(b, tol, max_iter);
  const PowerRun left = power_iterate(b.transpose(), tol, max_iter);
  if (!right.converged || !left.converged) {
    std::ostringstream msg;
    msg << "power iteration did not converge within " << max_iter
        << " steps (right residual " << right.residual << ", left residual " << left.residual
        << ")";
    throw ConvergenceFailure(msg.str());
  }
  PerronPair pair;
  pair.rho = right.rho;
  pair.x = right.v / right.v.sum();
  pair.y = left.v / left.v.sum();
  pair.residual = std::max(right.residual, left.residual);
  pair.iterations = std::max(right.iterations, left.iterations);
  return pair;
}

RealVector scale_to_budget(const RealVector& v, const RealVector& prices, int antennas,
                           double power_budget) {
  if (v.size() != prices.size()) throw InvalidArgument("length mismatch");
  return (antennas * power_budget / prices.dot(v)) * v;
}

}  // namespace maxmin

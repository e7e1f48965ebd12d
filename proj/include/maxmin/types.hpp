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

#ifndef MAXMIN_TYPES_HPP
#define MAXMIN_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxmin {

using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

// Precondition violations on public entry points.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A beamformer orthogonal to its own channel (G(m,m) == 0).
class DegenerateBeamformer : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iteration that has no non-converged result to hand back (power iteration).
class ConvergenceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimensions, budget, prices, priorities and noise of a coordinated cluster.
///
/// Vectors are indexed by the flat 0-based user index m = j*K + k; see
/// flatten_index() for the 1-based external convention.
struct NetworkConfig {
  int cells = 1;            // J
  int users_per_cell = 1;   // K
  int antennas = 1;         // N
  double power_budget = 1;  // P-bar, watts
  RealVector weights;       // w, power prices
  RealVector priorities;    // beta
  RealVector noise;         // sigma, watts
  double tol = 1e-10;
  int max_iter = 500;

  [[nodiscard]] int users() const { return cells * users_per_cell; }
  [[nodiscard]] int cell_of(int m) const { return m / users_per_cell; }

  /// Throws InvalidArgument when any invariant is violated.
  void validate() const;

  /// Uniform w, beta and sigma.
  static NetworkConfig uniform(int cells, int users_per_cell, int antennas,
                               double power_budget, double weight,
                               double priority, double noise);
};

/// Large-scale gains d(a,b): base station of cell(a) towards user b.
class LargeScaleProfile {
 public:
  LargeScaleProfile() = default;
  explicit LargeScaleProfile(RealMatrix gains);

  [[nodiscard]] double operator()(int a, int b) const { return d_(a, b); }
  [[nodiscard]] const RealMatrix& matrix() const { return d_; }
  [[nodiscard]] int users() const { return static_cast<int>(d_.rows()); }

 private:
  RealMatrix d_;
};

/// Instantaneous channels. One N-vector per (transmitting cell, user); every
/// stream index a inside a cell sees the same vector h(a,b).
class ChannelRealization {
 public:
  ChannelRealization() = default;
  ChannelRealization(int cells, int users_per_cell, int antennas,
                     std::vector<ComplexVector> per_cell, std::uint64_t seed);

  /// h(a,b): channel from the base station serving stream a to user b.
  [[nodiscard]] const ComplexVector& h(int a, int b) const {
    return per_cell_[static_cast<std::size_t>((a / users_per_cell_) * users() + b)];
  }
  [[nodiscard]] const ComplexVector& from_cell(int cell, int b) const {
    return per_cell_[static_cast<std::size_t>(cell * users() + b)];
  }

  [[nodiscard]] int cells() const { return cells_; }
  [[nodiscard]] int users_per_cell() const { return users_per_cell_; }
  [[nodiscard]] int users() const { return cells_ * users_per_cell_; }
  [[nodiscard]] int antennas() const { return antennas_; }
  [[nodiscard]] std::uint64_t seed() const { return seed_; }

 private:
  int cells_ = 0;
  int users_per_cell_ = 0;
  int antennas_ = 0;
  std::vector<ComplexVector> per_cell_;
  std::uint64_t seed_ = 0;
};

enum class PowerKind { kPrimal, kDual, kAsymptoticPrimal, kAsymptoticDual };

std::string to_string(PowerKind kind);

/// Strictly positive per-user powers (p_m / N is the transmitted power).
struct PowerVector {
  RealVector values;
  PowerKind kind = PowerKind::kPrimal;

  PowerVector() = default;
  PowerVector(RealVector v, PowerKind k);

  [[nodiscard]] Eigen::Index size() const { return values.size(); }
  [[nodiscard]] double operator[](Eigen::Index m) const { return values[m]; }
};

/// Unit-norm transmit beamformers, one column per user.
class BeamformingMatrix {
 public:
  BeamformingMatrix() = default;
  explicit BeamformingMatrix(ComplexMatrix columns);

  [[nodiscard]] auto column(Eigen::Index m) const { return u_.col(m); }
  [[nodiscard]] const ComplexMatrix& matrix() const { return u_; }
  [[nodiscard]] Eigen::Index users() const { return u_.cols(); }
  [[nodiscard]] Eigen::Index antennas() const { return u_.rows(); }

 private:
  ComplexMatrix u_;
};

/// Scenario constants for the stochastic geometry.
struct GeometrySpec {
  double cell_radius = 1500.0;           // m
  double inter_site_distance = 2598.0762113533160;  // sqrt(3) * 1.5 km
  double min_user_distance = 35.0;       // m
  double antenna_gain_db = 15.0;         // dBi
  double pathloss_intercept_db = 15.3;
  double pathloss_slope = 37.6;          // dB per decade of metres
  double shadowing_std_db = 8.0;
  double noise_psd_dbm_hz = -162.0;
  double bandwidth_hz = 10e6;

  void validate() const;
  /// Thermal noise power in watts over the configured bandwidth.
  [[nodiscard]] double noise_power_w() const;
};

}  // namespace maxmin

#endif  // MAXMIN_TYPES_HPP

# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import os
import pathlib

import numpy as np
import pytest

import maxmin


def drop(k=4, n=4, p=10.0, seed=1):
    geo = maxmin.GeometrySpec()
    d = maxmin.make_drop(geo, 3, k, seed)
    cfg = maxmin.NetworkConfig.uniform(3, k, n, p, noise=geo.noise_power_w())
    return d, cfg


def test_flat_index():
    assert maxmin.flatten_index(3, 4, 4, 3) == 12
    assert maxmin.unflatten_index(5, 4, 3) == (2, 1)
    with pytest.raises(ValueError):
        maxmin.flatten_index(0, 1, 4, 3)


def test_finite_solver_is_optimal():
    d, cfg = drop()
    ch = maxmin.sample_channel(d.profile, 3, 4, 1000001)
    res = maxmin.algorithm_a(ch, cfg)
    assert res.converged
    assert res.tau_star > 0
    rep = maxmin.verify_optimality(res, ch, cfg)
    assert rep.ok(), rep.failures
    p = np.asarray(res.p_star)
    assert np.isclose(cfg.weights @ p / cfg.antennas, cfg.power_budget, rtol=1e-9)
    u = np.asarray(res.u_star)
    assert np.allclose(np.linalg.norm(u, axis=0), 1.0)


def test_single_user_closed_form():
    profile = maxmin.LargeScaleProfile(np.array([[0.8]]))
    cfg = maxmin.NetworkConfig.uniform(1, 1, 2, 3.0, 1.0, 1.0, 0.5)
    ch = maxmin.sample_channel(profile, 1, 2, 7)
    h = ch.h(0, 0)
    res = maxmin.algorithm_a(ch, cfg)
    assert res.tau_star == pytest.approx(3.0 * np.vdot(h, h).real / 0.5, rel=1e-12)
    coarse = maxmin.brute_force_maxmin(ch, cfg, 10, 1)
    fine = maxmin.brute_force_maxmin(ch, cfg, 4000, 1)
    assert coarse <= fine <= res.tau_star * (1 + 1e-12)
    assert fine == pytest.approx(res.tau_star, rel=1e-4)


def test_perron_pair():
    pp = maxmin.perron_pair(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert pp.rho == pytest.approx(3.0)
    assert np.allclose(pp.x, [0.5, 0.5])
    with pytest.raises(maxmin.ConvergenceFailure):
        maxmin.perron_pair(np.array([[0.0, 1.0], [4.0, 0.0]]), 1e-13, 500)


def test_large_system_state():
    d, cfg = drop()
    st = maxmin.algorithm_e(d.profile, cfg)
    assert st.converged
    assert st.varsigma == pytest.approx(st.zeta, rel=1e-8)
    assert max(st.phi_residual, st.dual_eigen_residual, st.primal_eigen_residual) < 1e-8
    g = maxmin.gamma_primal(st, d.profile, cfg)
    assert np.allclose(g, st.zeta, rtol=1e-8)
    ch = maxmin.sample_channel(d.profile, 3, 4, 1000001)
    achieved = maxmin.asymptotic_achieved_sinr(ch, st, cfg)
    assert achieved.shape == (12,)
    u, sinr = maxmin.mvdr_beamformers(ch, st.q_hat, cfg)
    assert u.shape == (4, 12)
    assert np.all(sinr > 0)


def test_run_experiment(tmp_path):
    scenario = pathlib.Path(os.environ.get("MAXMIN_SCENARIO_DIR", "scenarios")) / "default.json"
    summary, ok = maxmin.run_experiment("finite-convergence", tmp_path, scenario=scenario)
    assert ok
    assert summary["runs"][0]["optimality"]["equalization_gap"] < 1e-6
    assert (tmp_path / "finite_trace_g0_t0.csv").exists()
    with pytest.raises(ValueError):
        maxmin.run_experiment("power-sweep", tmp_path, sweep=[10.0, 1.0])

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

"""Max-min weighted SINR beamforming and power control."""

import json as _json

from ._core import (
    AlgorithmEOptions,
    AsymptoticState,
    ChannelRealization,
    ConvergenceFailure,
    DegenerateBeamformer,
    Drop,
    GeometrySpec,
    LargeScaleProfile,
    NetworkConfig,
    OptimalityReport,
    PerronPair,
    PhiUpdate,
    SolveResult,
    algorithm_a,
    algorithm_b,
    algorithm_e,
    asymptotic_achieved_sinr,
    brute_force_maxmin,
    flatten_index,
    gamma_dual,
    gamma_primal,
    make_drop,
    mvdr_beamformers,
    perron_pair,
    sample_channel,
    unflatten_index,
    verify_optimality,
)
from ._core import _run_experiment


def run_experiment(kind, out_dir, scenario=None, trials=None, geometries=None, seed=None,
                   sweep=()):
    """Run one experiment kind and return (summary dict, all_converged)."""
    text, ok = _run_experiment(kind, str(out_dir), None if scenario is None else str(scenario),
                               trials, geometries, seed, list(sweep))
    return _json.loads(text), ok


__all__ = [
    "AlgorithmEOptions",
    "AsymptoticState",
    "ChannelRealization",
    "ConvergenceFailure",
    "DegenerateBeamformer",
    "Drop",
    "GeometrySpec",
    "LargeScaleProfile",
    "NetworkConfig",
    "OptimalityReport",
    "PerronPair",
    "PhiUpdate",
    "SolveResult",
    "algorithm_a",
    "algorithm_b",
    "algorithm_e",
    "asymptotic_achieved_sinr",
    "brute_force_maxmin",
    "flatten_index",
    "gamma_dual",
    "gamma_primal",
    "make_drop",
    "mvdr_beamformers",
    "perron_pair",
    "run_experiment",
    "sample_channel",
    "unflatten_index",
    "verify_optimality",
]

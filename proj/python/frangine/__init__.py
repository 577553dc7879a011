# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Fog radio access network simulator.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports it.
"""

from ._core import (  # noqa: F401
    AllFapsBlocked,
    EdgeCache,
    EmptyTrace,
    ParseError,
    ScenarioConfig,
    UeContext,
    UnknownParameter,
    ValidationError,
    ZeroPower,
    coac_assign,
    drac_assign,
    evaluate_underlay,
    fading_samples,
    fap_adjacency,
    fronthaul_load,
    path_gain,
    rate,
    run_cli,
    run_scenario,
    sample_ppp,
    select_mode,
    sffr_allocate,
    sinr,
    sweep,
    sweep_parameters,
    zipf_stream,
)

__version__ = "0.1.0"

# Copyright 2026 The optokerr Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Photon blockade and cat-state generation in optomechanics with cross-Kerr coupling."""

from ._core import *  # noqa: F401,F403
from ._core import Error, HilbertSpec, SystemParams

__all__ = [name for name in dir() if not name.startswith("_")]


def blockade_params(**overrides):
    """Parameters of the blockade study: g0 = 0.7, g_ck/g0 = 0.25, kappa = 0.1."""
    base = dict(g0=0.7, g_ck=0.175, kappa=0.1, gamma_m=0.001, drive_amp=0.001)
    base.update(overrides)
    return SystemParams(**base)


def cat_params(**overrides):
    """Parameters of the cat-state study: g0 = 1.2, g_ck/g0 = 0.25, closed system."""
    base = dict(omega_c=100.0, g0=1.2, g_ck=0.3)
    base.update(overrides)
    return SystemParams(**base)


__all__ += ["blockade_params", "cat_params", "Error", "HilbertSpec", "SystemParams"]

# Copyright 2026 The anomaly-index Authors
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
"""Anomaly indices of finite-group symmetry actions on spin chains.

Every command takes a dict shaped like the command-line input files and
returns the report as a dict.
"""

from __future__ import annotations

import json
from typing import Any, Mapping, Optional

import numpy as np

from . import _core

__all__ = [
    "AnomalyError",
    "anomaly",
    "cohomology",
    "detcheck",
    "logdet",
    "nogo",
    "projective",
    "random_unitary",
]


class AnomalyError(Exception):
    """Raised for invalid inputs and failed computations."""

    def __init__(self, code: str, category: str, message: str):
        super().__init__(message)
        self.code = code
        self.category = category


def _call(fn, doc: Mapping[str, Any], **opts) -> dict:
    try:
        return json.loads(fn(json.dumps(doc), **opts))
    except _core.NativeError as e:
        raise AnomalyError(*e.args) from None


def cohomology(doc, *, modulus_power: Optional[int] = None) -> dict:
    return _call(_core.cohomology, doc, modulus_power=modulus_power)


def projective(doc, *, tol: Optional[float] = None, snap_tol: Optional[float] = None) -> dict:
    return _call(_core.projective, doc, tol=tol, snap_tol=snap_tol)


def anomaly(doc, *, tol=None, snap_tol=None, modulus_power: Optional[int] = None) -> dict:
    return _call(_core.anomaly, doc, tol=tol, snap_tol=snap_tol, modulus_power=modulus_power)


def nogo(doc) -> dict:
    return _call(_core.nogo, doc)


def detcheck(doc, *, tol=None, snap_tol=None, seed: int = 20260101) -> dict:
    return _call(_core.detcheck, doc, tol=tol, snap_tol=snap_tol, seed=seed)


def logdet(u, normalized: bool = False, tol: float = 1e-9) -> dict:
    try:
        return json.loads(_core.logdet(np.asarray(u, dtype=complex), normalized, tol))
    except _core.NativeError as e:
        raise AnomalyError(*e.args) from None


def random_unitary(d: int, seed: int = 20260101) -> np.ndarray:
    return _core.random_unitary(d, seed)

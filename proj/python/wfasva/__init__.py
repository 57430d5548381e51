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

"""Weighted finite automata: minimization, spectral form, truncation bounds."""

import json
import math

from ._core import (
    SvaForm,
    Wfa,
    WfaError,
    compute_sva,
    conjugate,
    direct_sum,
    evaluate,
    grams,
    hadamard_product,
    hankel_singular_values,
    l2_distance_sq,
    minimize,
    rank,
    save,
    sva_truncate,
    to_json,
)
from . import _core

__all__ = [
    "SvaForm",
    "Wfa",
    "WfaError",
    "compute_sva",
    "conjugate",
    "direct_sum",
    "evaluate",
    "grams",
    "hadamard_product",
    "hankel_singular_values",
    "l2_distance_sq",
    "load",
    "minimize",
    "rank",
    "sandwich_report",
    "save",
    "sva_truncate",
    "to_json",
    "truncation_bound",
]


def load(path, strict=False):
    """Reads a Wfa or SvaForm document."""
    return _core._load(str(path), strict)


def truncation_bound(sva, n_hat):
    """Bound on ||f - f_hat||_2^2 for the n_hat-state truncation, as a dict."""
    return json.loads(_core._truncation_bound(sva, n_hat))


def sandwich_report(sva, n_hat, p):
    """Schatten-p Hankel bounds for the truncation; p may be math.inf or "inf"."""
    if p == "inf":
        p = math.inf
    return json.loads(_core._sandwich_report(sva, n_hat, float(p)))

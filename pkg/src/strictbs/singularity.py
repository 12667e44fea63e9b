"""
Smoothness of Schubert varieties X^w, globally and at T-fixed points.

Globally X^w is smooth iff w avoids 3412 and 4231.  At a fixed point e_v the
Zariski tangent space has dimension #{t reflection : v*t <= w}, and X^w is
smooth at e_v iff that count equals l(w).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _tables
from .bruhat import interval_array
from .permutation import (
    Permutation, bruhat_leq, compose, length, pattern_contains, reflections,
)

__all__ = [
    "SingularProfile", "REFLECTION_SIDE", "is_smooth_variety", "tangent_dim",
    "is_smooth_at", "singular_profile", "singular_codes",
]

# which side the reflection multiplies v on in the tangent count
REFLECTION_SIDE = "right"

_P3412 = (3, 4, 1, 2)
_P4231 = (4, 2, 3, 1)


@dataclass(frozen=True)
class SingularProfile:
    w: Permutation
    singular_points: frozenset[Permutation]
    maximal_singular: frozenset[Permutation]


@lru_cache(maxsize=65536)
def is_smooth_variety(w: Permutation) -> bool:
    if len(w) < 4:
        return True
    return not (pattern_contains(w, _P3412) or pattern_contains(w, _P4231))


def tangent_dim(w: Permutation, v: Permutation, side: str = REFLECTION_SIDE) -> int:
    if not bruhat_leq(v, w):
        raise ValueError(f"{v} is not below {w} in Bruhat order")
    n = len(w)
    count = 0
    for t in reflections(n):
        tp = t.as_perm(n)
        moved = compose(v, tp) if side == "right" else compose(tp, v)
        if bruhat_leq(moved, w):
            count += 1
    return count


def is_smooth_at(w: Permutation, v: Permutation) -> bool:
    return tangent_dim(w, v) == length(w)


@lru_cache(maxsize=8192)
def _singular_indices(w: Permutation) -> np.ndarray:
    """Table indices of the singular fixed points of X^w (table ranks only)."""
    t = _tables.table(len(w))
    if is_smooth_variety(w):
        return np.zeros(0, dtype=np.int64)
    mask = t.below(t.index(w))
    idx = np.flatnonzero(mask)
    dims = mask[t.right_reflect[:, idx]].sum(axis=0)
    out = idx[dims != length(w)]
    out.setflags(write=False)
    return out


@lru_cache(maxsize=8192)
def singular_codes(w: Permutation) -> np.ndarray:
    """Sorted packed codes of the singular fixed points of X^w."""
    n = len(w)
    if n <= _tables.TABLE_MAX_RANK:
        codes = _tables.table(n).codes[_singular_indices(w)]
    elif is_smooth_variety(w):
        codes = np.zeros(0, dtype=np.uint64)
    else:
        pts = [v for v in _tables.from_array(interval_array(w)) if not is_smooth_at(w, v)]
        codes = np.sort(np.array([v.code() for v in pts], dtype=np.uint64))
    codes.setflags(write=False)
    return codes


def singular_mask(w: Permutation) -> np.ndarray:
    """Boolean mask over the S_n table marking singular points of X^w."""
    t = _tables.table(len(w))
    mask = np.zeros(t.size, dtype=bool)
    mask[_singular_indices(w)] = True
    return mask


@lru_cache(maxsize=1024)
def singular_profile(w: Permutation) -> SingularProfile:
    n = len(w)
    points = frozenset(Permutation.from_code(int(c), n) for c in singular_codes(w))
    maximal = frozenset(
        v for v in points
        if not any(u != v and bruhat_leq(v, u) for u in points)
    )
    return SingularProfile(w, points, maximal)

"""
Dense lookup tables for S_n, n <= TABLE_MAX_RANK.

Every permutation is identified with its index in the lexicographic listing of
S_n.  Permutations are packed 4 bits per entry into a uint64 (0-based values,
first entry most significant), so the packed codes of the lexicographic
listing are sorted and ``searchsorted`` recovers indices.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .permutation import Permutation

TABLE_MAX_RANK = 9


def pack(arr: np.ndarray) -> np.ndarray:
    """Pack an (..., n) array of 0-based one-line values into uint64 codes."""
    arr = np.asarray(arr)
    code = np.zeros(arr.shape[:-1], dtype=np.uint64)
    for col in range(arr.shape[-1]):
        code <<= np.uint64(4)
        code |= arr[..., col].astype(np.uint64)
    return code


def to_array(perms) -> np.ndarray:
    """Permutations -> (m, n) uint8 array of 0-based values."""
    perms = list(perms)
    if not perms:
        return np.zeros((0, 0), dtype=np.uint8)
    return np.asarray(perms, dtype=np.uint8) - 1


def from_array(arr: np.ndarray) -> list[Permutation]:
    return [Permutation(row) for row in (arr.astype(np.int64) + 1).tolist()]


class GroupTable:
    """Precomputed arrays for the whole of S_n."""

    def __init__(self, n: int):
        self.n = n
        self.perms = np.array(list(permutations(range(n))), dtype=np.uint8).reshape(-1, n)
        self.size = len(self.perms)
        self.codes = pack(self.perms)
        inv = self.perms[:, :, None] > self.perms[:, None, :]
        self.lengths = np.triu(inv, 1).sum(axis=(1, 2)).astype(np.int16)
        # dots[a, i, j] = #{p <= i : perm_a(p) >= j} for 1 <= i < n, 2 <= j <= n
        ind = self.perms[:, :-1, None] >= np.arange(1, n, dtype=np.uint8)[None, None, :]
        self.dots = np.cumsum(ind, axis=1, dtype=np.uint8).reshape(self.size, -1)
        self.reflection_pairs = list(combinations(range(n), 2))
        # right_reflect[r, a] = index of perm_a * t_r (swap positions)
        self.right_reflect = np.empty((len(self.reflection_pairs), self.size), dtype=np.int32)
        for r, (i, j) in enumerate(self.reflection_pairs):
            swapped = self.perms.copy()
            swapped[:, [i, j]] = swapped[:, [j, i]]
            self.right_reflect[r] = self.rank(swapped)

    def rank(self, arr: np.ndarray) -> np.ndarray:
        return np.searchsorted(self.codes, pack(arr))

    def index(self, w: Permutation) -> int:
        return int(np.searchsorted(self.codes, np.uint64(w.code())))

    def below(self, a: int) -> np.ndarray:
        """Boolean mask of the lower Bruhat interval of perm_a."""
        return (self.dots <= self.dots[a]).all(axis=1)


@lru_cache(maxsize=None)
def table(n: int) -> GroupTable:
    if n > TABLE_MAX_RANK:
        raise ValueError(f"dense tables are only built for n <= {TABLE_MAX_RANK}")
    return GroupTable(n)

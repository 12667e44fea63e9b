"""
Bruhat intervals, Demazure products, reduced words and length-additive
factorizations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from . import _tables
from .permutation import (
    Permutation, Word, compose, identity, inverse, length, word_to_perm,
)

__all__ = [
    "Interval", "Split", "interval", "interval_array", "demazure_product",
    "reduced_words", "length_additive_splits", "weak_prefixes", "bruhat_covers", "split_from_words",
    "lex_first_reduced_word",
]


@dataclass(frozen=True)
class Interval:
    top: Permutation
    elements: frozenset[Permutation]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, v) -> bool:
        return v in self.elements


@dataclass(frozen=True, order=True)
class Split:
    """An ordered pair (w1, w2); reduced when lengths add under composition."""
    w1: Permutation
    w2: Permutation

    @property
    def product(self) -> Permutation:
        return compose(self.w1, self.w2)

    def is_reduced(self) -> bool:
        return length(self.w1) + length(self.w2) == length(self.product)

    def __str__(self) -> str:
        return f"({self.w1}, {self.w2})"


def bruhat_covers(v: Permutation) -> list[Permutation]:
    """Elements covered by v in Bruhat order (v * t_ij with length one less)."""
    n = len(v)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            if v[i] > v[j] and not any(v[i] > v[k] > v[j] for k in range(i + 1, j)):
                vals = list(v)
                vals[i], vals[j] = vals[j], vals[i]
                out.append(Permutation(vals))
    return out


def _interval_by_covers(w: Permutation) -> list[Permutation]:
    seen = {w}
    frontier = [w]
    while frontier:
        nxt = []
        for v in frontier:
            for u in bruhat_covers(v):
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return sorted(seen)


@lru_cache(maxsize=4096)
def interval_array(w: Permutation) -> np.ndarray:
    """Lower interval [e, w] as a lexicographically sorted (m, n) uint8 array
    of 0-based one-line values."""
    n = len(w)
    if n <= _tables.TABLE_MAX_RANK:
        t = _tables.table(n)
        arr = t.perms[t.below(t.index(w))]
    else:
        arr = _tables.to_array(_interval_by_covers(w))
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=256)
def interval(w: Permutation) -> Interval:
    return Interval(w, frozenset(_tables.from_array(interval_array(w))))


def demazure_product(words: Sequence[Word], n: int) -> Permutation:
    """Fold the concatenated letters, keeping a letter only if it raises length."""
    vals = list(range(1, n + 1))
    for word in words:
        for i in word:
            if not 1 <= i < n:
                raise ValueError(f"letter {i} out of range for S_{n}")
            if vals[i - 1] < vals[i]:
                vals[i - 1], vals[i] = vals[i], vals[i - 1]
    return Permutation(vals)


def reduced_words(w: Permutation) -> Iterator[list[int]]:
    """Every reduced word of w exactly once, grouped by last letter."""
    descents = [i for i in range(1, len(w)) if w[i - 1] > w[i]]
    if not descents:
        yield []
        return
    for i in descents:
        vals = list(w)
        vals[i - 1], vals[i] = vals[i], vals[i - 1]
        for word in reduced_words(Permutation(vals)):
            yield word + [i]


def weak_prefixes(w: Permutation) -> list[Permutation]:
    """All u with l(u) + l(u^-1 w) = l(w), i.e. the right weak order lower set."""
    seen = {w}
    frontier = [w]
    while frontier:
        nxt = []
        for u in frontier:
            for i in range(1, len(u)):
                if u[i - 1] > u[i]:
                    vals = list(u)
                    vals[i - 1], vals[i] = vals[i], vals[i - 1]
                    p = Permutation(vals)
                    if p not in seen:
                        seen.add(p)
                        nxt.append(p)
        frontier = nxt
    return sorted(seen, key=lambda u: (length(u), u))


@lru_cache(maxsize=4096)
def _splits(w: Permutation) -> tuple[Split, ...]:
    e = identity(len(w))
    return tuple(
        Split(u, compose(inverse(u), w)) for u in weak_prefixes(w) if u != e and u != w
    )


def length_additive_splits(w: Permutation) -> list[Split]:
    """Nontrivial factorizations w = w1 * w2 with additive lengths.

    Ordered by ascending length of w1, then lexicographically by w1.
    """
    if length(w) < 2:
        return []
    return list(_splits(w))


def split_from_words(left: Word, right: Word, n: int) -> Split:
    return Split(word_to_perm(left, n), word_to_perm(right, n))


def lex_first_reduced_word(w: Permutation) -> list[int]:
    """The lexicographically smallest reduced word, built from left descents."""
    vals = list(w)
    word = []
    while True:
        pos = {x: p for p, x in enumerate(vals)}
        # s_i is a left descent iff i+1 sits left of i
        i = next((i for i in range(1, len(vals)) if pos[i + 1] < pos[i]), None)
        if i is None:
            return word
        word.append(i)
        a, b = pos[i], pos[i + 1]
        vals[a], vals[b] = vals[b], vals[a]

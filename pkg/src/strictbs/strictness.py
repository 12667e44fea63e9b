"""
Fibre counts of the product map [e,w1] x [e,w2] -> [e,w1*w2] and the
strictness test built on them, plus codimension-one non-reduced sub-tuples of
a Bott-Samelson tuple.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _tables
from .bruhat import Split, bruhat_covers, interval_array, length_additive_splits
from .permutation import Permutation, compose, identity, is_reduced, length, word_to_perm
from .singularity import singular_codes, singular_mask

__all__ = [
    "FibreTable", "BSTuple", "fibre_table", "is_strict", "strict_splits",
    "nonreduced_codim1_subtuples", "parse_words", "deletion_word",
]

# products materialised per chunk in the strictness loop
CHUNK = 1 << 18


@dataclass(frozen=True)
class FibreTable:
    split: Split
    counts: dict[Permutation, int]

    def multi(self) -> dict[Permutation, int]:
        return {v: c for v, c in self.counts.items() if c > 1}


def _require_reduced(split: Split) -> Permutation:
    w = split.product
    if length(split.w1) + length(split.w2) != length(w):
        raise ValueError(f"split {split} is not reduced: lengths do not add")
    return w


def fibre_table(split: Split) -> FibreTable:
    _require_reduced(split)
    a1, a2 = interval_array(split.w1), interval_array(split.w2)
    codes = _tables.pack(a1[:, a2]).ravel()
    uniq, cnt = np.unique(codes, return_counts=True)
    n = len(split.w1)
    counts = {Permutation.from_code(int(c), n): int(k) for c, k in zip(uniq, cnt)}
    return FibreTable(split, counts)


def is_strict(split: Split) -> bool:
    """True iff every fixed point with more than one preimage is singular."""
    w = _require_reduced(split)
    n = len(w)
    a1, a2 = interval_array(split.w1), interval_array(split.w2)
    m1, m2 = len(a1), len(a2)
    if m1 * m2 == len(interval_array(w)):
        # surjective with matching cardinality: a bijection
        return True
    if n > _tables.TABLE_MAX_RANK:
        codes = _tables.pack(a1[:, a2]).ravel()
        uniq, cnt = np.unique(codes, return_counts=True)
        return bool(np.isin(uniq[cnt > 1], singular_codes(w)).all())

    t = _tables.table(n)
    smooth = ~singular_mask(w)
    counts = np.zeros(t.size, dtype=np.int32)
    rows = max(1, CHUNK // m2)
    for start in range(0, m1, rows):
        ranks = t.rank(a1[start:start + rows][:, a2].reshape(-1, n))
        counts += np.bincount(ranks, minlength=t.size).astype(np.int32)
        if np.any((counts > 1) & smooth):
            return False
    return True


def strict_splits(w: Permutation) -> list[Split]:
    return [s for s in length_additive_splits(w) if is_strict(s)]


@dataclass(frozen=True)
class BSTuple:
    """A tuple Q = (w_1, ..., w_k) of permutations of one rank."""
    factors: tuple[Permutation, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a Bott-Samelson tuple needs at least one factor")
        if len({len(f) for f in self.factors}) != 1:
            raise ValueError("all factors must have the same rank")

    @property
    def n(self) -> int:
        return len(self.factors[0])

    def product(self) -> Permutation:
        out = identity(self.n)
        for f in self.factors:
            out = compose(out, f)
        return out

    def total_length(self) -> int:
        return sum(length(f) for f in self.factors)

    def is_reduced(self) -> bool:
        return length(self.product()) == self.total_length()

    @classmethod
    def from_words(cls, words: Sequence[Sequence[int]], n: int) -> "BSTuple":
        return cls(tuple(word_to_perm(w, n) for w in words))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "BSTuple":
        """Parse dash notation (``"13-312"``) or a parenthesized tuple.

        Parenthesized entries are words: ``s1s3s2``, ``132``, or ``e``/``-``
        for the identity, e.g. ``"(s1s3s2s3, s1, s2)"``.
        """
        return cls.from_words(*parse_words(text, n))

    def is_single_letter(self) -> bool:
        return all(length(f) <= 1 for f in self.factors)

    def dash(self) -> str:
        """Dash notation; only defined for single-letter tuples."""
        if not self.is_single_letter():
            raise ValueError("dash notation needs every factor to be e or simple")
        out = []
        for f in self.factors:
            moved = [i for i in range(1, self.n) if f[i - 1] > f[i]]
            out.append(str(moved[0]) if moved else "-")
        return "".join(out)


def parse_words(text: str, n: int | None) -> tuple[list[list[int]], int]:
    text = text.strip()
    if text.startswith("("):
        if not text.endswith(")"):
            raise ValueError(f"unbalanced parentheses in {text!r}")
        words = []
        for entry in text[1:-1].split(","):
            entry = entry.strip().replace(" ", "")
            if entry in ("e", "-", ""):
                words.append([])
            elif re.fullmatch(r"(s\d+)+", entry):
                words.append([int(x) for x in re.findall(r"s(\d+)", entry)])
            elif entry.isdigit():
                words.append([int(c) for c in entry])
            else:
                raise ValueError(f"malformed tuple entry {entry!r}")
    elif re.fullmatch(r"[1-9-]+", text):
        words = [[] if c == "-" else [int(c)] for c in text]
    else:
        raise ValueError(f"malformed Bott-Samelson tuple {text!r}")
    letters = [i for w in words for i in w]
    if n is None:
        n = max(letters, default=1) + 1
    if any(not 1 <= i < n for i in letters):
        raise ValueError(f"letter out of range for S_{n}")
    return words, n


def nonreduced_codim1_subtuples(q: BSTuple) -> list[BSTuple]:
    """Sub-tuples one step below q (one factor replaced by a Bruhat cover)
    whose ordinary product drops length."""
    if not q.is_reduced():
        raise ValueError("tuple is not reduced")
    out = []
    for pos, f in enumerate(q.factors):
        for cover in sorted(bruhat_covers(f)):
            r = BSTuple(q.factors[:pos] + (cover,) + q.factors[pos + 1:])
            if not r.is_reduced():
                out.append(r)
    return out


def deletion_word(word: Sequence[int], target: Permutation) -> list[int]:
    """A reduced word for a Bruhat cover of word_to_perm(word), obtained by
    deleting one letter of ``word``."""
    n = len(target)
    for k in range(len(word)):
        cand = list(word[:k]) + list(word[k + 1:])
        if word_to_perm(cand, n) == target and is_reduced(cand, n):
            return cand
    raise ValueError(f"{target} is not one deletion below the word {list(word)}")

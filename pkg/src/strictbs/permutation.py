"""
Permutations of ``{1, ..., n}`` in one-line notation.

Composition is functional: ``compose(u, v)(i) == u(v(i))``.  A word
``[i1, i2, ..., ip]`` in simple reflections evaluates left to right, so
``word_to_perm([1, 2], 3) == compose(s1, s2)``.  Right multiplication by
``s_i`` swaps the entries in positions ``i, i+1``; left multiplication swaps
the values ``i, i+1``.

>>> w = Permutation.parse("4231")
>>> length(w)
5
>>> str(word_to_perm([2, 1, 3, 2], 4))
'3412'
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "Permutation", "Reflection", "Word",
    "identity", "simple", "compose", "inverse", "length",
    "bruhat_leq", "pattern_contains", "translate",
    "word_to_perm", "is_reduced", "all_permutations", "reflections",
]

MAX_RANK = 16

# a sequence of simple-reflection indices, each in 1..n-1
Word = Sequence[int]


class Permutation(tuple):
    """An element of S_n stored as its one-line values (1-based)."""

    __slots__ = ()

    def __new__(cls, values: Iterable[int]):
        self = super().__new__(cls, (int(x) for x in values))
        if not self:
            raise ValueError("a permutation needs at least one entry")
        if sorted(self) != list(range(1, len(self) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self)}: {tuple(self)}")
        if len(self) > MAX_RANK:
            raise ValueError(f"rank {len(self)} exceeds the supported maximum {MAX_RANK}")
        return self

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse ``"45312"`` (n <= 9) or ``"4,5,3,1,2"`` (any n)."""
        text = text.strip()
        if "," in text:
            parts = [p.strip() for p in text.split(",")]
            if not all(p.isdigit() for p in parts):
                raise ValueError(f"malformed permutation literal: {text!r}")
            return cls(int(p) for p in parts)
        if not text.isdigit():
            raise ValueError(f"malformed permutation literal: {text!r}")
        return cls(int(c) for c in text)

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        return self[i - 1]

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(map(str, self))
        return self.csv()

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"

    def csv(self) -> str:
        """Rank-safe comma-separated form, used in every machine format."""
        return ",".join(map(str, self))

    def code(self) -> int:
        """Pack into a single 64-bit integer, 4 bits per entry.

        Codes of permutations of equal rank compare like the tuples do.
        """
        c = 0
        for x in self:
            c = (c << 4) | (x - 1)
        return c

    @classmethod
    def from_code(cls, code: int, n: int) -> "Permutation":
        vals = []
        for _ in range(n):
            vals.append((code & 0xF) + 1)
            code >>= 4
        return cls(reversed(vals))


class Reflection(NamedTuple):
    """The transposition t_ij, 1 <= i < j <= n."""
    i: int
    j: int

    def as_perm(self, n: int) -> Permutation:
        if not 1 <= self.i < self.j <= n:
            raise ValueError(f"invalid reflection ({self.i}, {self.j}) in S_{n}")
        vals = list(range(1, n + 1))
        vals[self.i - 1], vals[self.j - 1] = vals[self.j - 1], vals[self.i - 1]
        return Permutation(vals)


def identity(n: int) -> Permutation:
    return Permutation(range(1, n + 1))


def simple(i: int, n: int) -> Permutation:
    """The simple reflection s_i = t_{i,i+1} in S_n."""
    if not 1 <= i < n:
        raise ValueError(f"simple reflection s_{i} does not exist in S_{n}")
    return Reflection(i, i + 1).as_perm(n)


def reflections(n: int) -> list[Reflection]:
    return [Reflection(i, j) for i, j in combinations(range(1, n + 1), 2)]


def _check_rank(u: Permutation, v: Permutation) -> None:
    if len(u) != len(v):
        raise ValueError(f"rank mismatch: S_{len(u)} vs S_{len(v)}")


def compose(u: Permutation, v: Permutation) -> Permutation:
    """Return u∘v, i.e. i -> u(v(i))."""
    _check_rank(u, v)
    return Permutation(u[x - 1] for x in v)


def inverse(w: Permutation) -> Permutation:
    inv = [0] * len(w)
    for pos, val in enumerate(w, start=1):
        inv[val - 1] = pos
    return Permutation(inv)


def length(w: Sequence[int]) -> int:
    """Number of inversions."""
    n = len(w)
    return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])


def bruhat_leq(u: Permutation, w: Permutation) -> bool:
    """Bruhat comparison by dot counts.

    u <= w iff for every i, j the number of a <= i with u(a) >= j is at most
    the same count for w.
    """
    _check_rank(u, w)
    n = len(u)
    # cu[j] = #{a <= i : u(a) >= j}, updated row by row
    cu = [0] * (n + 2)
    cw = [0] * (n + 2)
    for i in range(n - 1):
        for j in range(1, u[i] + 1):
            cu[j] += 1
        for j in range(1, w[i] + 1):
            cw[j] += 1
        for j in range(2, n + 1):
            if cu[j] > cw[j]:
                return False
    return True


def pattern_contains(w: Sequence[int], p: Sequence[int]) -> bool:
    """True iff some subsequence of w is order-isomorphic to p."""
    k, n = len(p), len(w)
    if k > n:
        raise ValueError(f"pattern of size {k} cannot occur in a permutation of size {n}")

    def extend(chosen: list[int], start: int) -> bool:
        m = len(chosen)
        if m == k:
            return True
        for pos in range(start, n - (k - m) + 1):
            # relative order with every earlier chosen entry must agree with p
            if all((w[chosen[a]] < w[pos]) == (p[a] < p[m]) for a in range(m)):
                chosen.append(pos)
                if extend(chosen, pos + 1):
                    return True
                chosen.pop()
        return False

    return extend([], 0)


def translate(p: Sequence[int], k: int, n: int) -> Permutation:
    """Embed the pattern p into the identity of S_n starting at position k."""
    m = len(p)
    if k < 1 or k + m - 1 > n:
        raise ValueError(f"cannot embed a pattern of size {m} at position {k} in S_{n}")
    vals = list(range(1, n + 1))
    for a, x in enumerate(p):
        vals[k - 1 + a] = x + k - 1
    return Permutation(vals)


def word_to_perm(word: Word, n: int) -> Permutation:
    """Left-to-right product of simple reflections."""
    vals = list(range(1, n + 1))
    for i in word:
        if not 1 <= i < n:
            raise ValueError(f"letter {i} out of range for S_{n}")
        # right multiplication by s_i swaps positions i, i+1
        vals[i - 1], vals[i] = vals[i], vals[i - 1]
    return Permutation(vals)


def is_reduced(word: Word, n: int) -> bool:
    return length(word_to_perm(word, n)) == len(word)


def all_permutations(n: int) -> list[Permutation]:
    """S_n in lexicographic order."""
    return [Permutation(p) for p in permutations(range(1, n + 1))]

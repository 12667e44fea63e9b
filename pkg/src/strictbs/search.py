"""
Recursive search for strict Bott-Samelson resolutions.

A singular X^w is strictly resolvable when some length-additive split
w = w1 * w2 has a strict product map and both factors are themselves smooth
or strictly resolvable.  Factors recurse as group elements, so the memo table
is keyed by permutation alone.  Splits are tried in the fixed order of
:func:`strictbs.bruhat.length_additive_splits` and the first success is kept.
"""

from __future__ import annotations

import multiprocessing as mp
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .bruhat import Split, length_additive_splits
from .permutation import Permutation, all_permutations, bruhat_leq, translate
from .singularity import is_smooth_variety
from .strictness import is_strict

__all__ = [
    "ResolutionTree", "GammaList", "ScanReport", "VerifyReport",
    "strictly_resolvable", "validate_tree", "scan", "run_scan", "bruhat_minimal",
    "pi_n", "gamma", "verify_conjecture", "resolve_many", "default_memo",
]

# Memo table: w -> chosen split, or None when w has no strict resolution.
# Smooth permutations are never stored.
Memo = dict

_MEMO: Memo = {}


def default_memo() -> Memo:
    return _MEMO


@dataclass(frozen=True)
class ResolutionTree:
    root: Permutation
    split: Optional[Split] = None
    left: Optional["ResolutionTree"] = None
    right: Optional["ResolutionTree"] = None

    @property
    def is_leaf(self) -> bool:
        return self.split is None

    def nodes(self) -> Iterable["ResolutionTree"]:
        yield self
        if not self.is_leaf:
            yield from self.left.nodes()
            yield from self.right.nodes()

    def to_dict(self) -> dict:
        if self.is_leaf:
            return {"perm": self.root.csv(), "smooth": True}
        return {
            "perm": self.root.csv(),
            "smooth": False,
            "split": [self.split.w1.csv(), self.split.w2.csv()],
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }


def _search(w: Permutation, memo: Optional[Memo]) -> Optional[ResolutionTree]:
    if is_smooth_variety(w):
        return ResolutionTree(w)
    if memo is not None and w in memo:
        split = memo[w]
        if split is None:
            return None
        return ResolutionTree(w, split, _search(split.w1, memo), _search(split.w2, memo))
    tree = None
    for split in length_additive_splits(w):
        if memo is not None and (
            (split.w1 in memo and memo[split.w1] is None)
            or (split.w2 in memo and memo[split.w2] is None)
        ):
            continue
        if not is_strict(split):
            continue
        left = _search(split.w1, memo)
        if left is None:
            continue
        right = _search(split.w2, memo)
        if right is None:
            continue
        tree = ResolutionTree(w, split, left, right)
        break
    if memo is not None:
        memo[w] = tree.split if tree else None
    return tree


def strictly_resolvable(
    w: Permutation, cache: Optional[Memo] = None, memoize: bool = True,
) -> Optional[ResolutionTree]:
    """A resolution tree for X^w, or None if no strict resolution exists.

    ``cache`` defaults to a process-wide table; ``memoize=False`` disables
    memoization entirely.
    """
    if not memoize:
        return _search(w, None)
    return _search(w, _MEMO if cache is None else cache)


def validate_tree(tree: ResolutionTree) -> None:
    """Re-check a tree independently of the search; raises AssertionError."""
    for node in tree.nodes():
        if node.is_leaf:
            assert is_smooth_variety(node.root), f"leaf {node.root} is singular"
            continue
        s = node.split
        assert s.product == node.root, f"split {s} does not compose to {node.root}"
        assert s.is_reduced(), f"split {s} is not reduced"
        assert is_strict(s), f"split {s} is not strict"
        assert node.left.root == s.w1 and node.right.root == s.w2


# -- batch driver ------------------------------------------------------------

_worker_memo: Memo = {}


def _init_worker(seed: list) -> None:
    global _worker_memo
    _worker_memo = dict(seed)


def _work(perms: list) -> list:
    before = len(_worker_memo)
    for w in perms:
        _search(w, _worker_memo)
    return list(_worker_memo.items())[before:]


def resolve_many(
    perms: list,
    memo: Memo,
    jobs: int = 1,
    on_entries: Optional[Callable[[list], None]] = None,
    chunk: int = 16,
) -> None:
    """Decide every permutation in ``perms``, filling ``memo``.

    ``on_entries`` receives newly learned memo entries in an order where each
    split's factors precede it (or are smooth).
    """
    todo = [w for w in perms if w not in memo and not is_smooth_variety(w)]
    if jobs <= 1 or len(todo) <= chunk:
        for w in todo:
            before = len(memo)
            _search(w, memo)
            if on_entries is not None and len(memo) > before:
                on_entries(list(memo.items())[before:])
        return
    batches = [todo[i:i + chunk] for i in range(0, len(todo), chunk)]
    ctx = mp.get_context("fork")
    with ProcessPoolExecutor(jobs, mp_context=ctx, initializer=_init_worker,
                             initargs=(list(memo.items()),)) as pool:
        for entries in pool.map(_work, batches):
            fresh = [(w, s) for w, s in entries if w not in memo]
            for w, s in fresh:
                memo[w] = s
            if on_entries is not None and fresh:
                on_entries(fresh)


# -- whole-rank scans ---------------------------------------------------------

@dataclass
class ScanReport:
    """Outcome of a whole-rank scan.

    ``no_strict_split`` lists the singular w admitting no strict split at all;
    ``unresolvable`` lists those with no strict resolution by recursive
    splitting, which also catches w whose only strict splits lead to an
    unresolvable factor.  The first is contained in the second.
    """
    n: int
    no_strict_split: list[Permutation]
    unresolvable: list[Permutation]
    checked: int
    seconds: float

    @property
    def resolvable(self) -> int:
        return self.checked - len(self.unresolvable)


def run_scan(n: int, memo: Optional[Memo] = None, jobs: int = 1,
             on_entries: Optional[Callable[[list], None]] = None) -> ScanReport:
    memo = _MEMO if memo is None else memo
    start = time.perf_counter()
    singular = [w for w in all_permutations(n) if not is_smooth_variety(w)]
    resolve_many(singular, memo, jobs=jobs, on_entries=on_entries)
    bad = sorted(w for w in singular if _search(w, memo) is None)
    # resolvable w always have a strict split, so only the failures need a look
    blocked = [w for w in bad if not any(is_strict(s) for s in length_additive_splits(w))]
    return ScanReport(n, blocked, bad, len(singular), time.perf_counter() - start)


def scan(n: int, memo: Optional[Memo] = None, jobs: int = 1,
         recursive: bool = False) -> set[Permutation]:
    """Singular w in S_n for which no split w = w1 * w2 gives a strict map.

    With ``recursive`` return instead every singular w lacking a strict
    resolution by repeated splitting.
    """
    report = run_scan(n, memo, jobs)
    return set(report.unresolvable if recursive else report.no_strict_split)


def bruhat_minimal(perms: Iterable[Permutation]) -> set[Permutation]:
    perms = set(perms)
    return {
        v for v in perms
        if not any(u != v and bruhat_leq(u, v) for u in perms)
    }


# -- exception lists -----------------------------------------------------------

@dataclass(frozen=True)
class GammaList:
    n: int
    elements: frozenset[Permutation]


def pi_n(n: int) -> Permutation:
    if n < 6:
        raise ValueError("pi_n is defined for n >= 6")
    if n == 6:
        return Permutation((6, 3, 2, 5, 4, 1))
    return Permutation([n, 3, 2, *range(4, n - 2), n - 1, n - 2, 1])


def gamma(n: int) -> GammaList:
    if n < 5:
        raise ValueError("the exception list starts at n = 5")
    elements = {Permutation((4, 5, 3, 1, 2))}
    for m in range(6, n + 1):
        moved = {translate(p, k, m) for p in elements for k in range(1, m - len(p) + 2)}
        elements = moved | {pi_n(m)}
    return GammaList(n, frozenset(elements))


@dataclass
class VerifyReport:
    n: int
    gamma: list[Permutation]
    checked: int
    skipped: int
    resolvable: int
    counterexamples: list[Permutation]
    candidates: int
    seconds: float
    skipped_resolvable: list[Permutation] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.checked == self.candidates


def verify_conjecture(
    n: int,
    memo: Optional[Memo] = None,
    jobs: int = 1,
    limit: Optional[int] = None,
    check_skipped: bool = False,
    on_entries: Optional[Callable[[list], None]] = None,
) -> VerifyReport:
    """Check that every singular w in S_n lying above no element of the
    exception list is strictly resolvable.

    ``limit`` caps how many candidates (in lexicographic order) are decided,
    for partial runs.  With ``check_skipped`` the permutations above the list
    are decided as well, and the resolvable ones reported.
    """
    memo = _MEMO if memo is None else memo
    start = time.perf_counter()
    gam = sorted(gamma(n).elements)
    singular = [w for w in all_permutations(n) if not is_smooth_variety(w)]
    candidates, skipped = [], []
    for w in singular:
        (skipped if any(bruhat_leq(v, w) for v in gam) else candidates).append(w)
    todo = candidates if limit is None else candidates[:limit]
    resolve_many(todo, memo, jobs=jobs, on_entries=on_entries)
    bad = [w for w in todo if _search(w, memo) is None]
    skipped_ok = []
    if check_skipped:
        resolve_many(skipped, memo, jobs=jobs, on_entries=on_entries)
        skipped_ok = [w for w in skipped if _search(w, memo) is not None]
    return VerifyReport(
        n=n, gamma=gam, checked=len(todo), skipped=len(skipped),
        resolvable=len(todo) - len(bad), counterexamples=bad,
        candidates=len(candidates), seconds=time.perf_counter() - start,
        skipped_resolvable=skipped_ok,
    )

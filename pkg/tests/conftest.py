"""Shared oracles.  These deliberately avoid the package's numeric paths."""

from collections import Counter
from itertools import combinations, product

import pytest

from strictbs.permutation import Permutation, all_permutations, compose, word_to_perm


def P(text: str) -> Permutation:
    return Permutation.parse(text)


def one_reduced_word(w):
    """Bubble-sort word: repeatedly undo the first right descent."""
    vals = list(w)
    word = []
    while True:
        i = next((i for i in range(len(vals) - 1) if vals[i] > vals[i + 1]), None)
        if i is None:
            return word[::-1]
        vals[i], vals[i + 1] = vals[i + 1], vals[i]
        word.append(i + 1)


def subword_interval(w):
    """[e, w] via the subword property: products of reduced subwords of one
    reduced word of w."""
    n = len(w)
    word = one_reduced_word(w)
    out = set()
    for k in range(len(word) + 1):
        for pos in combinations(range(len(word)), k):
            sub = [word[p] for p in pos]
            u = word_to_perm(sub, n)
            if sum(1 for a in range(n) for b in range(a + 1, n) if u[a] > u[b]) == k:
                out.add(u)
    return out


def brute_fibres(w1, w2):
    """Fibre counts by explicit double loop over subword intervals."""
    return Counter(compose(a, b) for a in subword_interval(w1) for b in subword_interval(w2))


def brute_words(n, k):
    return product(range(1, n), repeat=k)


# permutation literals shared across modules
LISTED_SCAN6 = frozenset(map(P, (
    "156423 453126 456312 465132 465312 546213 546312 "
    "564123 564132 564213 564312 632541 653421"
).split()))


@pytest.fixture(scope="session")
def s4():
    return all_permutations(4)


@pytest.fixture(scope="session")
def s5():
    return all_permutations(5)


# acceptance verdicts, keyed by criterion number, printed after the run
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"AC{key}: {'PASS' if ok else 'FAIL'}  {detail}")

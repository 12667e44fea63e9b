"""Command-line interface: ``strictbs <command> ...``.

Exit codes: 0 success (resolvable/smooth, no counterexamples), 1 negative
outcome (no strict resolution, counterexamples found), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from contextlib import nullcontext
from pathlib import Path
from typing import Optional

from .bruhat import lex_first_reduced_word
from .cache import CacheError, CacheWriter, default_cache_path, load_cache
from .permutation import Permutation, is_reduced, length
from .search import (
    ResolutionTree, gamma, resolve_many, run_scan, strictly_resolvable,
    verify_conjecture,
)
from .singularity import singular_profile
from .strictness import BSTuple, parse_words, deletion_word, nonreduced_codim1_subtuples

log = logging.getLogger("strictbs")

EXTENDED_RANK = 8


class UsageError(Exception):
    pass


def _perm(text: str) -> Permutation:
    try:
        return Permutation.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _word_str(w: Permutation) -> str:
    word = lex_first_reduced_word(w)
    return "".join(f"s{i}" for i in word) if word else "e"


# -- output helpers ------------------------------------------------------------

def _emit_json(command: str, rank: int, results, checked: int, resolvable: int,
               unresolvable: int, seconds: Optional[float],
               extra: Optional[dict] = None) -> None:
    doc = {
        "command": command,
        "rank": rank,
        "results": results,
        **(extra or {}),
        "summary": {
            "checked": checked,
            "resolvable": resolvable,
            "unresolvable": unresolvable,
            "seconds": None if seconds is None else round(seconds, 3),
        },
    }
    sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def render_tree(tree: ResolutionTree) -> str:
    lines: list[str] = []

    def label(node: ResolutionTree) -> str:
        if node.is_leaf:
            return f"{node.root}  [{_word_str(node.root)}]  smooth"
        s = node.split
        return (f"{node.root}  [{_word_str(node.root)}]  "
                f"split ({_word_str(s.w1)}, {_word_str(s.w2)})")

    def walk(node: ResolutionTree, prefix: str) -> None:
        if node.is_leaf:
            return
        kids = [node.left, node.right]
        for k, child in enumerate(kids):
            last = k == len(kids) - 1
            lines.append(prefix + ("└── " if last else "├── ") + label(child))
            walk(child, prefix + ("    " if last else "│   "))

    lines.append(label(tree))
    walk(tree, "")
    return "\n".join(lines)


def _seconds(args, value: float) -> Optional[float]:
    return None if args.no_timing else value


# -- memo / cache plumbing -----------------------------------------------------

def _cache_path(args, rank: int) -> Optional[Path]:
    if args.cache is None:
        return None
    if args.cache == "auto":
        return default_cache_path(rank)
    return Path(args.cache)


def _open_cache(args, rank: int):
    """Returns (memo, writer-context)."""
    path = _cache_path(args, rank)
    if path is None:
        return {}, nullcontext(None)
    try:
        memo = load_cache(path, rank, strict=True)
        valid = True
    except CacheError as exc:
        log.warning("ignoring cache %s: %s", path, exc)
        memo, valid = {}, False
    return memo, CacheWriter(path, rank, valid=valid, flush_every=args.flush_every)


# -- commands -----------------------------------------------------------------

def cmd_resolve(args) -> int:
    w: Permutation = args.perm
    start = time.perf_counter()
    memo, writer_ctx = _open_cache(args, w.n)
    with writer_ctx as writer:
        resolve_many([w], memo, on_entries=writer.write if writer else None)
        tree = strictly_resolvable(w, memo)
    elapsed = _seconds(args, time.perf_counter() - start)
    ok = tree is not None
    if args.format == "json":
        _emit_json("resolve", w.n, {
            "perm": w.csv(),
            "resolvable": ok,
            "tree": tree.to_dict() if ok else None,
        }, 1, int(ok), int(not ok), elapsed)
    else:
        print(render_tree(tree) if ok else f"{w}: no strict resolution")
    return 0 if ok else 1


def _check_rank(n: int, lo: int) -> None:
    if not lo <= n <= 16:
        raise UsageError(f"rank must lie in {lo}..16 (got {n})")


def cmd_scan(args) -> int:
    n = args.n
    _check_rank(n, 4)
    memo, writer_ctx = _open_cache(args, n)
    with writer_ctx as writer:
        report = run_scan(n, memo, jobs=args.jobs,
                          on_entries=writer.write if writer else None)
    elapsed = _seconds(args, report.seconds)
    if args.format == "json":
        _emit_json("scan", n, [w.csv() for w in report.no_strict_split],
                   report.checked, report.resolvable, len(report.unresolvable), elapsed,
                   extra={"unresolvable": [w.csv() for w in report.unresolvable]})
    else:
        print(f"S_{n}: singular permutations with no strict split "
              f"({len(report.no_strict_split)}):")
        for w in report.no_strict_split:
            print(f"  {w}")
        print(f"no strict resolution by recursive splitting ({len(report.unresolvable)}):")
        for w in report.unresolvable:
            print(f"  {w}")
        tail = "" if elapsed is None else f", {elapsed:.2f}s"
        print(f"checked {report.checked} singular, {report.resolvable} resolvable, "
              f"{len(report.unresolvable)} unresolvable{tail}")
    return 0


def cmd_gamma(args) -> int:
    n = args.n
    if n < 5:
        raise UsageError("the exception list starts at n = 5")
    elements = sorted(gamma(n).elements)
    if args.format == "json":
        _emit_json("gamma", n, [w.csv() for w in elements], len(elements), 0, 0, None)
    else:
        for w in elements:
            print(w)
    return 0


def cmd_verify(args) -> int:
    n = args.n
    _check_rank(n, 5)
    if n >= EXTENDED_RANK and not args.extended:
        raise UsageError(f"n >= {EXTENDED_RANK} is a long run; pass --extended "
                         "(and preferably --cache) to proceed")
    memo, writer_ctx = _open_cache(args, n)
    with writer_ctx as writer:
        report = verify_conjecture(
            n, memo, jobs=args.jobs, limit=args.limit, check_skipped=args.check_skipped,
            on_entries=writer.write if writer else None,
        )
    elapsed = _seconds(args, report.seconds)
    if args.format == "json":
        _emit_json("verify", n, {
            "counterexamples": [w.csv() for w in report.counterexamples],
            "gamma": [w.csv() for w in report.gamma],
            "candidates": report.candidates,
            "skipped": report.skipped,
            "complete": report.complete,
            "skipped_resolvable": [w.csv() for w in report.skipped_resolvable],
        }, report.checked, report.resolvable, len(report.counterexamples), elapsed)
    else:
        print(f"S_{n}: exception list {' '.join(map(str, report.gamma))}")
        print(f"checked {report.checked} of {report.candidates} singular permutations "
              f"above no listed element ({report.skipped} skipped)")
        if args.check_skipped:
            print(f"{len(report.skipped_resolvable)} skipped permutations are nonetheless "
                  "strictly resolvable")
        print(f"counterexamples: {len(report.counterexamples)}")
        for w in report.counterexamples:
            print(f"  {w}")
        if not report.complete:
            print("partial run: not every candidate was checked")
        if elapsed is not None:
            print(f"{elapsed:.2f}s")
    return 0 if not report.counterexamples else 1


def cmd_singular_locus(args) -> int:
    w: Permutation = args.perm
    prof = singular_profile(w)
    points = sorted(prof.singular_points, key=lambda v: (length(v), v))
    maximal = sorted(prof.maximal_singular)
    if args.format == "json":
        _emit_json("singular-locus", w.n, {
            "perm": w.csv(),
            "smooth": not points,
            "singular_points": [v.csv() for v in points],
            "maximal_singular": [v.csv() for v in maximal],
        }, 1, 0, 0, None)
    else:
        if not points:
            print(f"X^{w} is smooth")
        else:
            print(f"X^{w} is singular at {len(points)} fixed points")
            print("maximal components: " + " ".join(f"X^{v}" for v in maximal))
            for v in points:
                print(f"  {v}  [{_word_str(v)}]")
    return 0


def _format_tuple(r: BSTuple, words: list[list[int]], q: BSTuple) -> str:
    if r.is_single_letter() and all(len(w) <= 1 for w in words):
        return r.dash()
    parts = []
    for f, orig, word in zip(r.factors, q.factors, words):
        if f != orig:
            word = deletion_word(word, f)
        parts.append("".join(f"s{i}" for i in word) or "e")
    return "(" + ",".join(parts) + ")"


def cmd_bsni(args) -> int:
    try:
        words, n = parse_words(args.tuple, args.n)
        if not all(is_reduced(w, n) for w in words):
            raise ValueError("every entry must be a reduced word")
        q = BSTuple.from_words(words, n)
        subs = nonreduced_codim1_subtuples(q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    shown = [_format_tuple(r, words, q) for r in subs]
    if args.format == "json":
        _emit_json("bsni", n, shown, len(subs), 0, len(subs), None)
    else:
        print(f"{len(subs)} non-reduced codimension-1 sub-tuples:")
        for s in shown:
            print(f"  {s}")
    return 0


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="strictbs",
        description="Strict Bott-Samelson resolutions of Schubert varieties.",
    )
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")

    def runner(sp, long_run: bool):
        sp.add_argument("--cache", nargs="?", const="auto", default=None, metavar="PATH",
                        help="persistent memo file (default location: "
                             "$STRICTBS_CACHE_DIR/s<n>.cache)")
        sp.add_argument("--flush-every", type=int, default=256, metavar="K",
                        help="fsync the cache after every K new entries")
        sp.add_argument("--no-timing", action="store_true",
                        help="report seconds as null, for reproducible output")
        if long_run:
            sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1)

    sp = sub.add_parser("resolve", help="find a strict resolution tree for X^w")
    sp.add_argument("perm", type=_perm)
    fmt(sp)
    runner(sp, long_run=False)
    sp.set_defaults(func=cmd_resolve)

    sp = sub.add_parser("scan", help="list the obstructed permutations of S_n")
    sp.add_argument("n", type=int)
    fmt(sp)
    runner(sp, long_run=True)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("gamma", help="print the exception list for S_n")
    sp.add_argument("n", type=int)
    fmt(sp)
    sp.set_defaults(func=cmd_gamma)

    sp = sub.add_parser("verify", help="check the avoidance conjecture in S_n")
    sp.add_argument("n", type=int)
    sp.add_argument("--limit", type=int, default=None,
                    help="decide only the first K candidates (partial run)")
    sp.add_argument("--extended", action="store_true",
                    help=f"allow the long runs n >= {EXTENDED_RANK}")
    sp.add_argument("--check-skipped", action="store_true",
                    help="also decide permutations above a listed element")
    fmt(sp)
    runner(sp, long_run=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("singular-locus", help="singular fixed points of X^w")
    sp.add_argument("perm", type=_perm)
    fmt(sp)
    sp.set_defaults(func=cmd_singular_locus)

    sp = sub.add_parser("bsni", help="non-reduced codimension-1 sub-tuples of a tuple")
    sp.add_argument("tuple", help='dash notation ("132312") or "(s1s3s2s3,s1,s2)"')
    sp.add_argument("--n", type=int, default=None, help="rank (default: inferred)")
    fmt(sp)
    sp.set_defaults(func=cmd_bsni)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.exit(2, f"strictbs {args.command}: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())

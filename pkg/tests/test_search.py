import pytest

from strictbs.bruhat import length_additive_splits, split_from_words
from strictbs.permutation import (
    all_permutations, bruhat_leq, pattern_contains, translate, word_to_perm,
)
from strictbs.search import (
    ResolutionTree, bruhat_minimal, gamma, pi_n, resolve_many, run_scan, scan,
    strictly_resolvable, validate_tree, verify_conjecture,
)
from strictbs.singularity import is_smooth_variety
from strictbs.strictness import is_strict, strict_splits

from conftest import P, LISTED_SCAN6


def singular_by_pattern(w):
    return pattern_contains(w, P("3412")) or pattern_contains(w, P("4231"))


class TestResolve:
    def test_smooth_is_leaf(self):
        tree = strictly_resolvable(P("12345"), {})
        assert tree.is_leaf and tree.root == P("12345")

    @pytest.mark.parametrize("w", ["3412", "4231"])
    def test_s4_singular_trees(self, w):
        tree = strictly_resolvable(P(w), {})
        assert tree is not None and not tree.is_leaf
        validate_tree(tree)

    def test_3412_uses_s2_split(self):
        tree = strictly_resolvable(P("3412"), {})
        assert tree.split == split_from_words([2], [1, 3, 2], 4)

    def test_45312_absent(self):
        assert strictly_resolvable(P("45312"), {}) is None

    def test_256413(self):
        assert strictly_resolvable(P("256413"), {}) is None

    def test_456123_present(self):
        tree = strictly_resolvable(P("456123"), {})
        assert tree is not None
        validate_tree(tree)
        assert bruhat_leq(P("156423"), P("456123"))

    def test_456123_displayed_chain_is_strict(self):
        # the displayed tree: (s3s4s5s2s3, s4s1s2s3), then (s3, s4s5s2s3) on the left
        top = split_from_words([3, 4, 5, 2, 3], [4, 1, 2, 3], 6)
        left = split_from_words([3], [4, 5, 2, 3], 6)
        assert left.product == top.w1
        assert is_strict(top) and is_strict(left)
        for f in (left.w1, left.w2, top.w2):
            assert strictly_resolvable(f, {}) is not None

    def test_validate_rejects_bad_tree(self):
        w = P("45312")
        s = length_additive_splits(w)[0]
        bogus = ResolutionTree(w, s, ResolutionTree(s.w1), ResolutionTree(s.w2))
        with pytest.raises(AssertionError):
            validate_tree(bogus)

    def test_memo_agrees_with_plain_search_s5(self, s5):
        memo = {}
        for w in s5:
            a = strictly_resolvable(w, memo)
            b = strictly_resolvable(w, memoize=False)
            assert (a is None) == (b is None)
            if a is not None:
                validate_tree(a)
                assert a.to_dict() == b.to_dict()

    def test_memo_has_no_smooth_keys(self):
        memo = {}
        strictly_resolvable(P("456123"), memo)
        assert memo and not any(is_smooth_variety(w) for w in memo)

    def test_tree_dict_is_rank_safe(self):
        d = strictly_resolvable(P("3412"), {}).to_dict()
        assert d["perm"] == "3,4,1,2" and d["split"] == ["1,3,2,4", "2,4,1,3"]


class TestScan:
    def test_s4(self):
        assert scan(4, {}) == set()

    def test_s5(self):
        assert scan(5, {}) == {P("45312")}
        assert scan(5, {}, recursive=True) == {P("45312")}

    def test_s6_matches_listed_set(self):
        assert scan(6, {}) == LISTED_SCAN6

    def test_s6_recursive_set(self):
        report = run_scan(6, {})
        got = set(report.unresolvable)
        assert set(report.no_strict_split) <= got
        extra = got - LISTED_SCAN6
        assert len(extra) == 12
        # each extra element sits above a listed one, so it was pruned there
        assert all(any(bruhat_leq(u, w) for u in LISTED_SCAN6) for w in extra)
        assert P("256413") in extra
        assert bruhat_minimal(got) == bruhat_minimal(LISTED_SCAN6)

    def test_report_counts(self):
        report = run_scan(5, {})
        singular = [w for w in all_permutations(5) if singular_by_pattern(w)]
        assert report.checked == len(singular)
        assert report.resolvable == len(singular) - 1

    def test_jobs_do_not_change_result(self):
        one, two = run_scan(5, {}, jobs=1), run_scan(5, {}, jobs=2)
        assert one.unresolvable == two.unresolvable
        assert one.no_strict_split == two.no_strict_split

    def test_resolve_many_parallel_entries(self):
        perms = [w for w in all_permutations(6)[::11] if not is_smooth_variety(w)]
        serial, parallel = {}, {}
        resolve_many(perms, serial, jobs=1)
        seen = []
        resolve_many(perms, parallel, jobs=2, chunk=4, on_entries=seen.extend)
        for w in perms:
            assert (serial.get(w) is None) == (parallel.get(w) is None)
        # entries arrive with their factors already known or smooth
        known = set()
        for w, s in seen:
            if s is not None:
                for f in (s.w1, s.w2):
                    assert is_smooth_variety(f) or f in known
            known.add(w)


class TestMinimal:
    def test_values(self):
        assert bruhat_minimal(LISTED_SCAN6) == {P("156423"), P("453126"), P("632541")}
        assert bruhat_minimal({P("45312")}) == {P("45312")}
        assert bruhat_minimal(set()) == set()


class TestGamma:
    def test_pi(self):
        assert pi_n(6) == P("632541")
        assert pi_n(7) == P("7324651")
        assert pi_n(8) == P("83245761")
        assert pi_n(8) in gamma(8).elements
        with pytest.raises(ValueError):
            pi_n(5)

    def test_lists(self):
        assert gamma(5).elements == {P("45312")}
        assert gamma(6).elements == {P("156423"), P("453126"), P("632541")}
        assert gamma(7).elements == set(map(P, [
            "1267534", "1564237", "1743652", "4531267", "6325417", "7324651"]))
        with pytest.raises(ValueError):
            gamma(4)

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
    def test_triangular_sizes(self, k):
        assert len(gamma(k + 4).elements) == k * (k + 1) // 2

    def test_translations_deduplicated(self):
        # brute-force recursion with a list keeps duplicates only if τ collides
        prev = [P("45312")]
        for m in range(6, 10):
            prev = [translate(p, k, m) for p in prev for k in range(1, m - len(p) + 2)]
            prev.append(pi_n(m))
            assert len(set(prev)) == len(gamma(m).elements)

    @pytest.mark.parametrize("n", [5, 6])
    def test_elements_unresolvable_small(self, n):
        found = scan(n, {})
        for w in gamma(n).elements:
            assert singular_by_pattern(w)
            assert strictly_resolvable(w, {}) is None
            assert w in found

    def test_elements_blocked_rank7(self):
        memo = {}
        for w in gamma(7).elements:
            assert singular_by_pattern(w)
            assert strict_splits(w) == []
            assert strictly_resolvable(w, memo) is None

    def test_elements_blocked_rank8(self):
        memo = {}
        for w in gamma(8).elements:
            assert strict_splits(w) == []
            assert strictly_resolvable(w, memo) is None


class TestVerify:
    def test_rank5(self):
        r = verify_conjecture(5, {})
        assert r.counterexamples == [] and r.complete

    def test_rank6_with_skipped(self):
        r = verify_conjecture(6, {}, check_skipped=True)
        assert r.counterexamples == [] and r.complete
        # 456123 lies above 156423 yet resolves, so the condition is not necessary
        assert P("456123") in r.skipped_resolvable
        assert r.checked + r.skipped == r.candidates + r.skipped == run_scan(6, {}).checked

    def test_limit_is_partial(self):
        r = verify_conjecture(6, {}, limit=10)
        assert r.checked == 10 and not r.complete


def test_word_helpers_agree():
    assert word_to_perm([3, 4, 5, 2, 3, 4, 1, 2, 3], 6) == P("456123")

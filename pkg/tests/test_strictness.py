import pytest

from strictbs.bruhat import Split, interval, length_additive_splits, split_from_words
from strictbs.permutation import all_permutations, identity, length, simple, word_to_perm
from strictbs.singularity import is_smooth_at, is_smooth_variety
from strictbs.strictness import (
    BSTuple, deletion_word, fibre_table, is_strict, nonreduced_codim1_subtuples,
    parse_words, strict_splits,
)

from conftest import P, brute_fibres


def strict_by_definition(split):
    w = split.product
    return all(is_smooth_at(w, v) is False
               for v, c in brute_fibres(split.w1, split.w2).items() if c > 1)


class TestFibres:
    def test_4231(self):
        ft = fibre_table(split_from_words([1], [2, 3, 2, 1], 4))
        assert ft.multi() == {P(x): 2 for x in ["1234", "2134", "1243", "2143"]}
        assert set(ft.counts.values()) == {1, 2}

    def test_3412(self):
        ft = fibre_table(split_from_words([2], [1, 3, 2], 4))
        assert ft.multi() == {P("1234"): 2, P("1324"): 2}

    def test_commuting_chain(self):
        ft = fibre_table(Split(simple(1, 4), simple(3, 4)))
        assert set(ft.counts.values()) == {1}

    def test_not_reduced(self):
        with pytest.raises(ValueError):
            fibre_table(Split(simple(1, 4), simple(1, 4)))
        with pytest.raises(ValueError):
            is_strict(Split(simple(1, 4), simple(1, 4)))

    def test_surjective_and_mass_conserving_s5(self, s5):
        for w in s5:
            below = interval(w).elements
            for s in length_additive_splits(w):
                ft = fibre_table(s)
                assert set(ft.counts) == below
                assert sum(ft.counts.values()) == len(interval(s.w1)) * len(interval(s.w2))
                assert ft.counts == brute_fibres(s.w1, s.w2)


class TestStrict:
    def test_known_examples(self):
        assert is_strict(split_from_words([1], [2, 3, 2, 1], 4))
        assert is_strict(split_from_words([2], [1, 3, 2], 4))
        assert all(not is_strict(s) for s in length_additive_splits(P("45312")))

    def test_matches_definition_s5(self, s5):
        for w in s5:
            for s in length_additive_splits(w):
                assert is_strict(s) == strict_by_definition(s), s

    def test_matches_definition_sample_s6(self):
        for w in all_permutations(6)[::37]:
            for s in length_additive_splits(w)[:12]:
                assert is_strict(s) == strict_by_definition(s), s

    def test_smooth_means_bijective_s5(self, s5):
        for w in s5:
            if not is_smooth_variety(w):
                continue
            for s in length_additive_splits(w):
                bij = set(fibre_table(s).counts.values()) == {1}
                assert is_strict(s) == bij

    def test_chunked_loop_agrees(self, monkeypatch):
        import strictbs.strictness as mod
        w = P("564312")
        splits = length_additive_splits(w)
        whole = [is_strict(s) for s in splits]
        monkeypatch.setattr(mod, "CHUNK", 7)
        assert [is_strict(s) for s in splits] == whole

    def test_generic_path_matches_tables(self):
        # embed a rank-6 problem in rank 11 so the table-free path is used
        for base in ["156423", "453126", "456123"]:
            small = P(base)
            big = P(",".join(map(str, list(small) + list(range(7, 12)))))
            assert [is_strict(Split(P(",".join(map(str, list(s.w1) + list(range(7, 12))))),
                                    P(",".join(map(str, list(s.w2) + list(range(7, 12)))))))
                    for s in length_additive_splits(small)] == \
                   [is_strict(s) for s in length_additive_splits(small)]
            assert len(length_additive_splits(big)) == len(length_additive_splits(small))


class TestStrictSplits:
    def test_256413(self):
        assert strict_splits(P("256413")) == [Split(P("213456"), P("156423"))]

    def test_45312(self):
        assert strict_splits(P("45312")) == []

    def test_45312_every_split_doubles_over_s1_and_s4(self):
        # brute-force fibres, checked over every reduced-word division
        for s in length_additive_splits(P("45312")):
            fib = brute_fibres(s.w1, s.w2)
            assert fib[P("12354")] > 1 and fib[P("21345")] > 1

    def test_456123(self):
        s = split_from_words([3, 4, 5, 2, 3], [4, 1, 2, 3], 6)
        assert s.product == P("456123")
        assert s in strict_splits(P("456123"))


class TestSubtuples:
    def test_132312(self):
        q = BSTuple.parse("132312")
        assert q.is_reduced() and q.product() == P("4321")
        got = nonreduced_codim1_subtuples(q)
        assert [r.dash() for r in got] == ["13-312", "132-12", "1323-2"]
        assert [r.factors for r in got] == [BSTuple.parse(x, 4).factors
                                            for x in ["13-312", "132-12", "1323-2"]]

    def test_three_factor_tuple(self):
        q = BSTuple.parse("(s1s3s2s3, s1, s2)")
        got = {r.factors for r in nonreduced_codim1_subtuples(q)}
        assert got == {
            BSTuple.from_words([[1, 3, 2], [1], [2]], 4).factors,
            BSTuple.from_words([[1, 3, 2, 3], [], [2]], 4).factors,
        }

    def test_single_letter(self):
        assert nonreduced_codim1_subtuples(BSTuple.parse("1")) == []

    def test_non_reduced_rejected(self):
        with pytest.raises(ValueError):
            nonreduced_codim1_subtuples(BSTuple.parse("11"))

    def test_output_properties(self):
        for text in ["132312", "(1323,1,2)", "121", "(s2s1s3s2, s1)", "2132"]:
            q = BSTuple.parse(text)
            if not q.is_reduced():
                continue
            for r in nonreduced_codim1_subtuples(q):
                assert not r.is_reduced()
                assert q.total_length() - r.total_length() == 1

    @pytest.mark.parametrize("text", ["13a", "(1,2", "(s1x,2)", "1 2", ""])
    def test_parse_errors(self, text):
        with pytest.raises(ValueError):
            parse_words(text, None)

    def test_parse_forms(self):
        assert BSTuple.parse("(1323, e, 2)") == BSTuple.parse("(s1s3s2s3,-,s2)")
        assert BSTuple.parse("12-1").factors[2] == identity(3)
        with pytest.raises(ValueError):
            parse_words("(5)", 4)

    def test_deletion_word(self):
        assert deletion_word([1, 3, 2, 3], word_to_perm([1, 3, 2], 4)) == [1, 3, 2]
        with pytest.raises(ValueError):
            deletion_word([1, 3, 2, 3], identity(4))

    def test_dash_requires_letters(self):
        with pytest.raises(ValueError):
            BSTuple.parse("(12,1)").dash()

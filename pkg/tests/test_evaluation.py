from itertools import combinations

import pytest

from teamscope.evaluation import evaluate_at_n, evaluate_corpus


class TestEvaluateAtN:
    def test_three_of_ten_gold_terms_in_top_five(self):
        # top-5 holds 3 of 10 gold terms: P=0.6, R=0.3, F1=0.4
        extracted = ["g1", "g2", "g3", "x1", "x2"]
        gold = {f"g{i}" for i in range(1, 11)}
        result = evaluate_at_n(extracted, gold, 5)
        assert (result.tp, result.fp, result.fn) == (3, 2, 7)
        assert result.precision == 0.6
        assert result.recall == 0.3
        assert abs(result.f1 - 0.4) < 1e-12

    def test_perfect_extraction(self):
        result = evaluate_at_n(["a", "b"], {"a", "b"}, 2)
        assert result.precision == result.recall == result.f1 == 1.0

    def test_no_hits_zero_division_guard(self):
        result = evaluate_at_n(["x", "y"], {"a"}, 2)
        assert result.precision == result.recall == result.f1 == 0.0

    def test_normalization_case_and_whitespace(self):
        result = evaluate_at_n(["  Graph "], {"graph"}, 1)
        assert result.tp == 1

    def test_duplicates_collapse_before_cutoff(self):
        result = evaluate_at_n(["a", "A", "b"], {"b"}, 2)
        # deduped candidates: [a, b]
        assert result.tp == 1 and result.fp == 1

    def test_n_truncates_but_short_lists_allowed(self):
        result = evaluate_at_n(["a", "b", "c", "d"], {"a", "x"}, 10)
        assert result.tp + result.fp == 4  # only 4 available
        assert result.fp == 3

    def test_empty_gold_is_error(self):
        with pytest.raises(ValueError, match="gold"):
            evaluate_at_n(["a"], set(), 1)
        with pytest.raises(ValueError, match="gold"):
            evaluate_at_n(["a"], {"  "}, 1)

    def test_n_must_be_positive(self):
        with pytest.raises(ValueError):
            evaluate_at_n(["a"], {"a"}, 0)

    def test_tp_fp_fn_identities(self):
        extracted = ["a", "b", "c", "d", "e", "f"]
        gold = {"b", "d", "z"}
        for n in (1, 2, 3, 4, 5, 6, 9):
            result = evaluate_at_n(extracted, gold, n)
            assert result.tp + result.fp == min(n, len(extracted))
            assert result.tp + result.fn == len(gold)

    def test_swapping_in_a_correct_term_never_hurts(self):
        gold = {"g1", "g2", "g3"}
        base = ["x1", "x2", "g1", "x3"]
        for i in range(4):
            for g in gold:
                improved = list(base)
                if improved[i] in gold:
                    continue
                improved[i] = g
                if len(set(improved)) < 4:
                    continue
                for n in (1, 2, 3, 4):
                    a = evaluate_at_n(base, gold, n)
                    b = evaluate_at_n(improved, gold, n)
                    assert b.precision >= a.precision
                    assert b.recall >= a.recall
                    assert b.f1 >= a.f1

    def test_f1_zero_iff_tp_zero(self):
        universe = ["a", "b", "c"]
        gold_options = [{"a"}, {"b"}, {"a", "c"}, {"z"}]
        for r in (1, 2, 3):
            for extracted in combinations(universe, r):
                for gold in gold_options:
                    for n in (1, 2, 3):
                        result = evaluate_at_n(list(extracted), gold, n)
                        assert (result.f1 == 0.0) == (result.tp == 0)


# (extracted, gold, n, precision, recall, f1) computed by hand.
HAND_CASES = [
    (["a"], {"a"}, 1, 1.0, 1.0, 1.0),
    (["a"], {"b"}, 1, 0.0, 0.0, 0.0),
    (["a", "b"], {"a"}, 1, 1.0, 1.0, 1.0),
    (["b", "a"], {"a"}, 1, 0.0, 0.0, 0.0),
    (["a", "b"], {"a"}, 2, 0.5, 1.0, 2 * 0.5 / 1.5),
    (["a", "b", "c"], {"a", "b"}, 3, 2 / 3, 1.0, 2 * (2 / 3) / (2 / 3 + 1.0)),
    (["a", "b", "c"], {"a", "b", "c", "d"}, 3, 1.0, 0.75, 2 * 0.75 / 1.75),
    (["x", "y", "z"], {"a", "b"}, 3, 0.0, 0.0, 0.0),
    (["a", "x"], {"a", "b", "c"}, 2, 0.5, 1 / 3, 2 * 0.5 * (1 / 3) / (0.5 + 1 / 3)),
    (["a"], {"a", "b"}, 5, 1.0, 0.5, 2 * 0.5 / 1.5),
    (["a", "b", "c", "d", "e"], {"a", "e"}, 5, 0.4, 1.0, 2 * 0.4 / 1.4),
    (["a", "b", "c", "d", "e"], {"a", "e"}, 3, 1 / 3, 0.5, 2 * (1 / 3) * 0.5 / (1 / 3 + 0.5)),
    (["g", "g2", "x"], {"g", "g2"}, 2, 1.0, 1.0, 1.0),
    (["x", "g", "g2"], {"g", "g2"}, 2, 0.5, 0.5, 0.5),
    (["p", "q", "r", "s"], {"q", "s"}, 4, 0.5, 1.0, 2 * 0.5 / 1.5),
    (["p", "q", "r", "s"], {"q", "s"}, 1, 0.0, 0.0, 0.0),
    (["p", "q"], {"p", "q", "r", "s", "t"}, 10, 1.0, 0.4, 2 * 0.4 / 1.4),
    (["m", "n", "o"], {"m"}, 2, 0.5, 1.0, 2 * 0.5 / 1.5),
    (["u", "v", "w", "m"], {"m", "u"}, 4, 0.5, 1.0, 2 * 0.5 / 1.5),
    (["u", "v"], {"u", "v", "w"}, 2, 1.0, 2 / 3, 2 * (2 / 3) / (1 + 2 / 3)),
]


def test_hand_computed_table():
    for extracted, gold, n, precision, recall, f1 in HAND_CASES:
        result = evaluate_at_n(extracted, gold, n)
        assert result.precision == pytest.approx(precision, abs=1e-12)
        assert result.recall == pytest.approx(recall, abs=1e-12)
        assert result.f1 == pytest.approx(f1, abs=1e-12)


class TestEvaluateCorpus:
    def test_macro_average_of_two_docs(self):
        pairs = [
            (["a"], {"a", "b"}),  # P=1, R=0.5
            (["x", "b"], {"b"}),  # at n=2: P=0.5, R=1
        ]
        (row,) = evaluate_corpus(pairs, n_values=[2])
        assert row.precision == 0.75
        assert row.recall == 0.75
        assert row.doc_count == 2

    def test_single_doc_equals_per_doc(self):
        pairs = [(["a", "b"], {"a"})]
        (row,) = evaluate_corpus(pairs, n_values=[2])
        single = evaluate_at_n(["a", "b"], {"a"}, 2)
        assert row.precision == single.precision
        assert row.recall == single.recall
        assert row.f1 == single.f1

    def test_rows_sorted_by_n_with_defaults(self):
        pairs = [(["a"], {"a"})]
        rows = evaluate_corpus(pairs)
        assert [r.n for r in rows] == [1, 3, 5, 10]

    def test_short_extraction_evaluated_on_available(self):
        pairs = [(["a", "b", "c", "d"], {"a", "q"})]
        (row,) = evaluate_corpus(pairs, n_values=[10])
        single = evaluate_at_n(["a", "b", "c", "d"], {"a", "q"}, 10)
        assert single.fp == 4 - single.tp
        assert row.precision == single.precision

    def test_no_documents_is_error(self):
        with pytest.raises(ValueError, match="no documents"):
            evaluate_corpus([])

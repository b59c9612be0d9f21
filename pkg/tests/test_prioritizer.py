import pytest
from hypothesis import given, settings, strategies as st

from in2test.model import Combinator, Direction, MetricSpec, PercentOfMax, SelectionRule, TopN
from in2test.prioritizer import RuleNotApplicableError, prioritize, rank_parts

from .helpers import make_run

DC = MetricSpec.inspection()


def rule(cond, m1=DC, d1=Direction.LARGE, m2=None, d2=None, comb=Combinator.NONE):
    return SelectionRule("r", "a", m1, d1, cond, m2, d2, comb)


class TestRankParts:
    def test_run2_content(self, run2):
        assert rank_parts(DC, Direction.LARGE, run2).order == ("VI", "VII", "V", "VIII")

    def test_ties_by_id(self):
        run = make_run({"c": 5, "a": 5, "b": 5})
        assert rank_parts(DC, Direction.LARGE, run).order == ("a", "b", "c")
        assert rank_parts(DC, Direction.SMALL, run).order == ("a", "b", "c")

    def test_run1_mccabe(self, run1):
        assert rank_parts(MetricSpec.product("mccabe"), Direction.LARGE, run1).order == ("IV", "II", "I", "III")

    def test_small_is_ascending(self, run1):
        assert rank_parts(DC, Direction.SMALL, run1).order == ("II", "IV", "I", "III")

    def test_undefined_rank_last_and_flagged(self):
        run = make_run({"a": 1, "b": 4, "z": 9}, loc={"z": 0})
        r = rank_parts(MetricSpec.inspection("density"), Direction.LARGE, run)
        assert r.order == ("b", "a", "z")
        assert [pid for pid, _ in r.undefined] == ["z"]


class TestPrioritize:
    def test_run1_content_large(self, run1):
        p = prioritize(rule(PercentOfMax(0.8)), run1)
        assert p.selected == {"I", "III"}
        assert p.thresholds_used == (("dc.all:large", 21.0),)

    def test_run2_content_large(self, run2):
        p = prioritize(rule(PercentOfMax(0.8)), run2)
        assert p.selected == {"VI", "VII"}
        assert p.thresholds_used[0][1] == 32

    def test_threshold_eleven(self):
        run = make_run({"a": 14, "b": 12, "c": 11, "d": 3})
        p = prioritize(rule(PercentOfMax(0.8)), run)
        assert p.thresholds_used[0][1] == 11
        assert p.selected == {"a", "b"}  # strictly higher than 11

    def test_conjunction_intersects(self, run1):
        # content large: {I, III}; mccabe small (t = ceil(0.2*44) = 9): {I, II, III}
        r = rule(PercentOfMax(0.8), DC, Direction.LARGE, MetricSpec.product("mccabe"), Direction.SMALL,
                 Combinator.CONJUNCTION)
        p = prioritize(r, run1)
        assert p.selected == {"I", "III"}
        assert dict(p.thresholds_used) == {"dc.all:large": 21, "mccabe:small": 9}

    def test_topn(self, run2):
        assert prioritize(rule(TopN(3)), run2).selected == {"VI", "VII", "V"}
        assert prioritize(rule(TopN(10)), run2).selected == {"V", "VI", "VII", "VIII"}
        assert prioritize(rule(TopN(3)), run2).thresholds_used == ()

    def test_topn_tie_at_cut(self):
        run = make_run({"a": 5, "b": 3, "c": 3, "d": 3})
        assert prioritize(rule(TopN(2)), run).selected == {"a", "b"}

    def test_union_of_overlapping_top3(self):
        # top-3 by inspection: a, b, c; top-3 by size: b, c, d -> union of four parts
        run = make_run({"a": 9, "b": 8, "c": 7, "d": 1, "e": 0},
                       loc={"a": 10, "b": 500, "c": 400, "d": 300, "e": 20})
        r = rule(TopN(3), DC, Direction.LARGE, MetricSpec.product("class_length"), Direction.LARGE,
                 Combinator.UNION)
        assert prioritize(r, run).selected == {"a", "b", "c", "d"}

    def test_undefined_parts_never_selected(self):
        run = make_run({"a": 1, "b": 4, "z": 9}, loc={"z": 0})
        p = prioritize(rule(TopN(3), MetricSpec.inspection("density")), run)
        assert p.selected == {"a", "b"}
        assert [pid for pid, _ in p.undefined] == ["z"]

    def test_all_undefined_is_unusable(self, run1):
        with pytest.raises(RuleNotApplicableError):
            prioritize(rule(TopN(3), MetricSpec.product("waste_per_line")), run1)

    def test_p_one_selects_nothing(self, run1):
        assert prioritize(rule(PercentOfMax(1.0)), run1).selected == frozenset()

    def test_tiny_p_selects_all_positive(self):
        run = make_run({"a": 0, "b": 1, "c": 5})
        assert prioritize(rule(PercentOfMax(1e-9)), run).selected == {"b", "c"}

    def test_pure(self, run1):
        r = rule(PercentOfMax(0.5))
        assert prioritize(r, run1) == prioritize(r, run1)


_runs = st.dictionaries(
    st.sampled_from("ABCDEFGHIJ"), st.tuples(st.integers(0, 30), st.integers(1, 900)), min_size=1
)


@settings(max_examples=200)
@given(_runs, st.integers(1, 10), st.integers(1, 10))
def test_topn_monotone_and_union_dominates(data, n, m):
    run = make_run({k: v[0] for k, v in data.items()}, loc={k: v[1] for k, v in data.items()})
    lo, hi = sorted((n, m))
    assert prioritize(rule(TopN(lo)), run).selected <= prioritize(rule(TopN(hi)), run).selected
    size = MetricSpec.product("class_length")
    union = prioritize(rule(TopN(n), DC, Direction.LARGE, size, Direction.LARGE, Combinator.UNION), run)
    assert prioritize(rule(TopN(n)), run).selected <= union.selected
    assert prioritize(rule(TopN(n), size), run).selected <= union.selected

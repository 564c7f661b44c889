from hypothesis import given, settings

from abaprefs.analysis import analyze_all, common_preferences, unique_preferences
from abaprefs.core import AtomicPreference, preference_set
from abaprefs.elicitation import compute_all_preferences
from abaprefs.semantics import enumerate_extensions

from conftest import frameworks

P = AtomicPreference.parse


def pset(*rows):
    return {preference_set(r.split(",")) for r in rows}


def atoms(text):
    return {P(x).canonical() for x in text.split(",")}


class TestSetOperations:
    def test_unique(self):
        target = pset("b<a,c=a")
        assert unique_preferences(target, [pset("a<b,c=b")]) == atoms("b<a,a=c")
        assert unique_preferences(target, [pset("b<a")]) == atoms("a=c")

    def test_common(self):
        target = pset("b<a,c=a", "b=c")
        assert common_preferences(target, [pset("a=c", "c=b")]) == atoms("a=c,b=c")

    def test_equalities_match_either_way_round(self):
        assert common_preferences(pset("c=a"), [pset("a=c")]) == atoms("a=c")
        assert unique_preferences(pset("c=a"), [pset("a=c")]) == set()

    def test_no_others(self):
        target = pset("b<a", "a=c")
        assert unique_preferences(target, []) == atoms("b<a,a=c")
        assert common_preferences(target, []) == atoms("b<a,a=c")

    def test_disjoint_vocabularies(self):
        assert common_preferences(pset("a<b"), [pset("c<d")]) == set()
        assert unique_preferences(pset("a<b"), [pset("c<d")]) == atoms("a<b")


class TestAnalyzeAll:
    def test_two_preferred_extensions(self, f0):
        report = analyze_all(f0, "prf")
        assert [set(r.extension) for r in report.rows] == [{"a", "c"}, {"b", "c"}]
        ac, bc = report.rows
        assert ac.unique == atoms("b<a,b<c,c<a")
        assert bc.unique == atoms("a<b,a<c,c<b")
        assert ac.common == bc.common == atoms("a=b,a=c,b=c")
        assert ac.pset == compute_all_preferences(f0, "ac")

    def test_grounded_single_row(self, f0):
        report = analyze_all(f0, "grd")
        assert len(report.rows) == 1
        row = report.rows[0]
        assert row.extension == {"c"}
        assert row.unique == row.common == {p for s in row.pset for p in s}

    @settings(max_examples=80, deadline=None)
    @given(frameworks())
    def test_unique_and_common_disjoint(self, f):
        report = analyze_all(f, "com")
        for row in report.rows:
            assert row.unique <= {p for s in row.pset for p in s}
            if len(report.rows) > 1:
                assert not row.unique & row.common
        assert len(report.rows) == len(enumerate_extensions(f, None, "com"))

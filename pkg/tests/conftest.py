from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import strategies as st

from abaprefs.core import Framework, Rule

FIXTURES = Path(__file__).parent / "fixtures"
JOURNEY_PATH = str(FIXTURES / "journey.aba")


def journey() -> Framework:
    return Framework.build("abc", {"a": "e", "b": "d", "c": "f"}, [("d", "ac"), ("e", "bc")])


def defended_framework() -> Framework:
    # b attacks a, g attacks b, nothing attacks g.
    return Framework.build("abg", {"a": "na", "b": "nb", "g": "ng"}, [("na", "b"), ("nb", "g")])


@pytest.fixture
def f0() -> Framework:
    return journey()


@pytest.fixture
def f1() -> Framework:
    return defended_framework()


@st.composite
def frameworks(draw, max_assumptions: int = 4, max_rules: int = 6) -> Framework:
    n = draw(st.integers(1, max_assumptions))
    assumptions = list("abcde"[:n])
    others = ["p", "q", "r"][: draw(st.integers(1, 3))]
    contrary = {a: draw(st.sampled_from(others + assumptions)) for a in assumptions}
    rules = draw(
        st.lists(
            st.tuples(
                st.sampled_from(others),
                st.lists(st.sampled_from(assumptions + others), max_size=3, unique=True),
            ),
            max_size=max_rules,
        )
    )
    return Framework.build(assumptions, contrary, [Rule(h, tuple(b)) for h, b in rules], others)


# -- acceptance summary ----------------------------------------------------------

_acceptance: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    label = dict(report.user_properties).get("acceptance")
    if label:
        _acceptance.append((label, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {label}")


@pytest.fixture
def acceptance(request, record_property):
    marker = request.node.get_closest_marker("acceptance")
    if marker:
        record_property("acceptance", marker.args[0])

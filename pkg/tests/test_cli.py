import json
import subprocess
import sys

import pytest
from hypothesis import given, settings

from abaprefs.cli import main
from abaprefs.core import AtomicPreference
from abaprefs.errors import ParseError
from abaprefs.parsing import dump, parse

from conftest import FIXTURES, journey, frameworks

JOURNEY = str(FIXTURES / "journey.aba")
JOURNEY_PREFS = str(FIXTURES / "journey_prefs.aba")
P = AtomicPreference.parse


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestParse:
    def test_journey(self):
        doc = parse((FIXTURES / "journey.aba").read_text())
        assert doc.framework == journey()
        assert len(doc.framework.language) == 6
        assert doc.preferences == ()
        assert [w.message for w in doc.warnings] == ["sentence f occurs only as a contrary; added to the language"]

    def test_journey_preferences(self):
        doc = parse((FIXTURES / "journey_prefs.aba").read_bytes())
        assert doc.preferences == (P("a<b"),)

    def test_flatness(self):
        with pytest.raises(ParseError) as info:
            parse("assumption a\nassumption b\ncontrary a x\ncontrary b y\nrule a <- b\n", "t.aba")
        (d,) = info.value.diagnostics
        assert (d.line, d.source) == (5, "t.aba")
        assert "flatness violated" in d.message

    def test_errors_are_collected(self):
        text = "assumption a\ncontrary z q\nprefer a < w\nbogus line\n"
        with pytest.raises(ParseError) as info:
            parse(text)
        lines = [d.line for d in info.value.diagnostics]
        assert lines == sorted(lines) and len(lines) == 4

    @pytest.mark.parametrize(
        "text, fragment",
        [
            ("assumption a\ncontrary a x\ncontrary a y\n", "second contrary"),
            ("assumption a\nassumption b\ncontrary a x\ncontrary b y\nprefer a < b\nprefer b < a\n", "conflicts"),
            ("# nothing\n", "no assumptions"),
        ],
    )
    def test_semantic_errors(self, text, fragment):
        with pytest.raises(ParseError) as info:
            parse(text)
        assert any(fragment in d.message for d in info.value.diagnostics)

    def test_comments_and_blank_lines(self):
        doc = parse("\n  # header\nassumption a  # first\ncontrary a x\n\n")
        assert doc.framework.assumptions == {"a"}

    def test_round_trip(self):
        doc = parse((FIXTURES / "journey_prefs.aba").read_text())
        again = parse(dump(doc.framework, doc.preferences))
        assert again.framework == doc.framework
        assert again.preferences == doc.preferences

    @settings(max_examples=100)
    @given(frameworks())
    def test_round_trip_random(self, f):
        # sentences mentioned by no declaration have no textual form
        g = parse(dump(f)).framework
        assert (g.assumptions, g.rules, dict(g.contrary)) == (f.assumptions, f.rules, dict(f.contrary))
        used = set(f.assumptions) | set(f.contrary.values()) | {s for r in f.rules for s in (r.head, *r.body)}
        assert g.language == used


class TestExtensionsCommand:
    def test_text(self, capsys):
        code, out, err = run(capsys, "extensions", "--semantics", "prf", JOURNEY)
        assert code == 0
        assert out.splitlines() == ["{a,c}", "{b,c}"]
        assert "occurs only as a contrary" in err

    def test_preferences_apply(self, capsys):
        code, out, _ = run(capsys, "extensions", "--semantics", "grd", "--conclusions", JOURNEY_PREFS)
        assert out.splitlines() == ["{b,c}  Cn={b,c,e}"]

    def test_attacks_text(self, capsys):
        _, out, _ = run(capsys, "extensions", "--semantics", "prf", "--attacks", JOURNEY_PREFS)
        assert "attack {b} -> {a,c} reverse" in out.splitlines()

    def test_json(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "extensions", "--semantics", "prf", JOURNEY_PREFS)
        data = json.loads(out)
        assert code == 0
        assert data["extensions"] == [{"assumptions": ["b", "c"]}]
        assert data["preferences"] == [{"left": "a", "rel": "<", "right": "b"}]
        assert {"from": ["b", "c"], "to": ["a", "c"], "kind": "both"} in data["attacks"]

    def test_json_flag_after_subcommand(self, capsys):
        _, out, _ = run(capsys, "extensions", "--format", "json", "--semantics", "grd", JOURNEY)
        assert json.loads(out)["extensions"] == [{"assumptions": ["c"]}]

    def test_json_is_stable(self, capsys):
        first = run(capsys, "--format", "json", "analyze", "--semantics", "prf", JOURNEY)[1]
        second = run(capsys, "--format", "json", "analyze", "--semantics", "prf", JOURNEY)[1]
        assert first == second

    def test_cap_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("ABA_PREFS_MAX_ASSUMPTIONS", "2")
        code, _, err = run(capsys, "extensions", "--semantics", "prf", JOURNEY)
        assert code == 2 and "error:" in err
        code, _, _ = run(capsys, "extensions", "--max-assumptions", "3", "--semantics", "prf", JOURNEY)
        assert code == 0

    def test_bad_environment_value(self, capsys, monkeypatch):
        monkeypatch.setenv("ABA_PREFS_MAX_ASSUMPTIONS", "many")
        code, _, err = run(capsys, "extensions", "--semantics", "prf", JOURNEY)
        assert code == 2 and "must be an integer" in err


class TestElicitCommand:
    def test_extension_ac(self, capsys):
        code, out, _ = run(capsys, "elicit", "--semantics", "prf", "--extension", "a,c", "--stage", "1", JOURNEY)
        assert code == 0
        assert out.splitlines() == ["{a=b, c<a}", "{a=c, b<a}", "{b<a, c<a}"]

    def test_verify(self, capsys):
        code, out, _ = run(capsys, "elicit", "--semantics", "stb", "--extension", "a,c", "--verify", JOURNEY)
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 6 and all("PASS" in x for x in lines)
        assert sum("closure inconsistent" in x for x in lines) == 3

    def test_prefs_ignored_warning(self, capsys):
        _, _, err = run(capsys, "elicit", "--semantics", "prf", "--extension", "b,c", JOURNEY_PREFS)
        assert "ignored" in err

    def test_json(self, capsys):
        _, out, _ = run(capsys, "--format", "json", "elicit", "--semantics", "grd", "--extension", "c", JOURNEY)
        data = json.loads(out)
        assert data["extension"] == ["c"]
        assert len(data["preference_sets"]) == 4
        assert data["preference_sets"][0] == [
            {"left": "a", "rel": "<", "right": "c"},
            {"left": "b", "rel": "<", "right": "c"},
        ]

    def test_not_conflict_free(self, capsys):
        code, _, err = run(capsys, "elicit", "--semantics", "prf", "--extension", "a,b,c", JOURNEY)
        assert code == 1 and "conflict-free" in err

    def test_unknown_extension_member(self, capsys):
        code, _, _ = run(capsys, "elicit", "--semantics", "prf", "--extension", "a,z", JOURNEY)
        assert code == 2


class TestOtherCommands:
    def test_analyze(self, capsys):
        code, out, _ = run(capsys, "analyze", "--semantics", "prf", JOURNEY)
        assert code == 0
        assert "  unique: {b<a, b<c, c<a}" in out.splitlines()
        assert out.count("  common: {a=b, a=c, b=c}") == 2

    def test_verify_pass_and_fail(self, capsys):
        code, out, _ = run(capsys, "verify", "--semantics", "prf", "--extension", "b,c", "--prefs", "a<b", JOURNEY)
        assert code == 0 and "PASS" in out
        code, out, _ = run(capsys, "verify", "--semantics", "prf", "--extension", "a,c", "--prefs", "a<b", JOURNEY)
        assert code == 1 and "FAIL" in out and "{b,c}" in out

    def test_verify_bad_prefs(self, capsys):
        code, _, _ = run(capsys, "verify", "--semantics", "prf", "--extension", "a,c", "--prefs", "a<q", JOURNEY)
        assert code == 2

    def test_oracle(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "oracle", "--semantics", "prf", "--extension", "b,c", JOURNEY)
        data = json.loads(out)
        assert code == 0
        assert data["yielding_preorders"] == 17
        assert len(data["covered"]) + len(data["uncovered"]) == 17
        assert all(c["passed"] for c in data["soundness"])

    def test_parse_error_exit(self, capsys, tmp_path):
        bad = tmp_path / "bad.aba"
        bad.write_text("assumption a\nassumption b\ncontrary a x\ncontrary b y\nrule a <- b\n")
        code, _, err = run(capsys, "extensions", "--semantics", "prf", str(bad))
        assert code == 2
        assert f"{bad}:5:" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "extensions", "--semantics", "prf", "/nonexistent.aba")
        assert code == 2 and "cannot read" in err

    def test_usage_error(self):
        with pytest.raises(SystemExit) as info:
            main(["extensions", "--semantics", "ideal", JOURNEY])
        assert info.value.code == 2

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "abaprefs", "extensions", "--semantics", "com", JOURNEY],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.splitlines() == ["{c}", "{a,c}", "{b,c}"]

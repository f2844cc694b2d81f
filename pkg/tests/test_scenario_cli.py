import pytest

from orbkit import cli
from orbkit.scenario import (
    ParseError,
    Scenario,
    ScriptOp,
    SeifertRequest,
    emit_scenario,
    parse_scenario,
)

BUILTIN_TEXT = """\
scenario v1

[builtin]
name = glued_Z
p = 3

[seifert]
c1B = search
spin_target = spin
"""

EXPLICIT_TEXT = """\
scenario v1

[config]
b1 = 0
b2 = 1
euler = 3

[surface C]
genus = 1
self = 9

[script]
blow_up through=C id=E
blow_down sphere=E   # fails at run time (E is a -1 sphere), parses fine
"""


class TestParse:
    def test_builtin(self):
        scn = parse_scenario(BUILTIN_TEXT)
        assert scn.builtin == ("glued_Z", 3)
        assert scn.seifert == SeifertRequest("auto", "search", "spin", None)

    def test_explicit_config_and_script(self):
        scn = parse_scenario(EXPLICIT_TEXT)
        assert scn.builtin is None
        assert scn.config.b2 == 1
        assert scn.config.surface("C").self_intersection == 9
        assert scn.script == (
            ScriptOp("blow_up", (("through", "C"), ("id", "E"))),
            ScriptOp("blow_down", (("sphere", "E"),)))

    def test_missing_magic_line(self):
        with pytest.raises(ParseError) as exc:
            parse_scenario("[builtin]\nname = block_Y\n")
        assert exc.value.line_no == 1

    def test_unknown_key_reports_line(self):
        text = BUILTIN_TEXT.replace("p = 3", "prime = 3")
        with pytest.raises(ParseError) as exc:
            parse_scenario(text)
        assert exc.value.line_no == 5
        assert "prime" in str(exc.value)

    def test_unknown_builtin(self):
        with pytest.raises(ParseError):
            parse_scenario("scenario v1\n[builtin]\nname = nothing\n")

    def test_glued_Z_requires_p(self):
        with pytest.raises(ParseError):
            parse_scenario("scenario v1\n[builtin]\nname = glued_Z\n")

    def test_script_rejects_undefined_surface(self):
        text = EXPLICIT_TEXT.replace("sphere=E", "sphere=Q")
        with pytest.raises(ParseError) as exc:
            parse_scenario(text)
        assert "Q" in str(exc.value)

    def test_script_tracks_renames(self):
        text = EXPLICIT_TEXT.replace(
            "blow_down sphere=E   # fails at run time (E is a -1 sphere), parses fine",
            "rename old=E new=F\ndiscard id=F")
        scn = parse_scenario(text)
        assert scn.script[-1] == ScriptOp("discard", (("id", "F"),))

    def test_unknown_section(self):
        with pytest.raises(ParseError):
            parse_scenario(BUILTIN_TEXT + "\n[bogus]\nx = 1\n")

    def test_conflicting_build_sections(self):
        with pytest.raises(ParseError):
            parse_scenario(BUILTIN_TEXT + "\n[config]\nb1 = 0\n"
                           "b2 = 0\neuler = 0\n")

    def test_bad_spin_target(self):
        with pytest.raises(ParseError):
            parse_scenario(BUILTIN_TEXT.replace("spin_target = spin",
                                                "spin_target = maybe"))

    def test_explicit_c1B_vector(self):
        scn = parse_scenario(BUILTIN_TEXT.replace(
            "c1B = search", "c1B = " + " ".join(["0"] * 16)))
        assert scn.seifert.c1B == (0,) * 16

    def test_spin_unknowns(self):
        scn = parse_scenario(BUILTIN_TEXT
                             + "spin_unknowns = a1=1 a2=0\n")
        assert scn.seifert.spin_unknowns == {"a1": 1, "a2": 0}


class TestRoundTrip:
    def _check(self, text):
        scn = parse_scenario(text)
        emitted = emit_scenario(scn)
        assert parse_scenario(emitted) == scn
        # emit is a fixed point
        assert emit_scenario(parse_scenario(emitted)) == emitted

    def test_builtin_round_trip(self):
        self._check(BUILTIN_TEXT)

    def test_explicit_round_trip(self):
        self._check(EXPLICIT_TEXT)

    def test_full_featured_round_trip(self):
        text = """\
scenario v1

[config]
b1 = 0
b2 = 2
euler = 4

[surface A]
genus = 1
multiplicity = 3
j = 1
self = 1/2

[surface B]
genus = 0
self = -1

[point s]
order = 2
exponents = 1 1
incident = A

[event e]
between = A B

[seifert]
c1B = 1 0
spin_target = nonspin
spin_unknowns = a1=1
"""
        self._check(text)


class TestCli:
    def test_verify_builtin_glued(self, capsys):
        rc = cli.main(["verify", "--builtin", "glued_Z", "--prime", "3"])
        out = capsys.readouterr().out
        assert rc == cli.EXIT_OK
        assert "simply_connected: pass" in out
        assert "fail" not in out

    def test_verify_scenario_file(self, tmp_path, capsys):
        f = tmp_path / "s.scn"
        f.write_text(BUILTIN_TEXT)
        assert cli.main(["verify", str(f)]) == cli.EXIT_OK

    def test_build_block_W(self, capsys):
        rc = cli.main(["build", "--builtin", "block_W"])
        out = capsys.readouterr().out
        assert rc == cli.EXIT_OK
        assert "euler = 12" in out and "b2 = 10" in out

    def test_missing_file_is_input_error(self, capsys):
        rc = cli.main(["verify", "/nonexistent/path.scn"])
        assert rc == cli.EXIT_INPUT
        assert "input error" in capsys.readouterr().err

    def test_malformed_scenario_is_input_error(self, tmp_path, capsys):
        f = tmp_path / "bad.scn"
        f.write_text("not a scenario\n")
        assert cli.main(["verify", str(f)]) == cli.EXIT_INPUT

    def test_file_and_builtin_conflict(self, tmp_path):
        f = tmp_path / "s.scn"
        f.write_text(BUILTIN_TEXT)
        assert cli.main(["verify", str(f), "--builtin", "glued_Z"]) \
            == cli.EXIT_INPUT

    def test_enumerate(self, capsys):
        rc = cli.main(["enumerate", "--prime", "3"])
        out = capsys.readouterr().out
        assert rc == cli.EXIT_OK
        assert "Complete(index=4)" in out
        assert "Z_2 + Z_2" in out

    def test_enumerate_exhaustion(self, capsys):
        rc = cli.main(["enumerate", "--prime", "3", "--coset-bound", "2"])
        assert rc == cli.EXIT_INCONCLUSIVE

    def test_structured_report_is_deterministic(self, capsys):
        cli.main(["report", "--builtin", "glued_Z", "--prime", "3",
                  "--format", "structured"])
        first = capsys.readouterr().out
        cli.main(["report", "--builtin", "glued_Z", "--prime", "3",
                  "--format", "structured"])
        second = capsys.readouterr().out
        assert first == second
        assert first.startswith("orbkit-report v1")

    def test_spin_target_flag(self, capsys):
        rc = cli.main(["verify", "--builtin", "glued_Z", "--prime", "3",
                       "--spin-target", "spin"])
        assert rc == cli.EXIT_OK

    def test_report_human_p2(self, capsys):
        # at p=2 the orbifold group has order 8, so the small-index
        # shortcut cannot certify simple connectivity: honest failure
        rc = cli.main(["report", "--builtin", "glued_Z", "--prime", "2"])
        out = capsys.readouterr().out
        assert rc == cli.EXIT_FAIL
        assert "b2 16" in out
        assert "pi1_index_divides_4: fail" in out
        # every spin entry at p=2 is spin
        assert "non-spin" not in out

    def test_report_human_p3(self, capsys):
        rc = cli.main(["report", "--builtin", "glued_Z", "--prime", "3"])
        out = capsys.readouterr().out
        assert rc == cli.EXIT_OK
        assert "b2(M)=15, t_max=16, c_max=2" in out
        assert "Total space simply connected: True" in out

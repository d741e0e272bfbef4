"""Tests for the command-line surface."""

import json

import pytest

import app
from errors import InvariantViolation


def test_cover_open_gap(capsys):
    assert app.main(["cover", "--d", "14", "--prime", "3"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "OpenGap"
    assert "witness: p=" in out
    assert "covering_radius_sq: 135/28" in out


def test_cover_covered(capsys):
    assert app.main(["cover", "--d", "5", "--prime", "2"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "Covered"
    assert "witness" not in out


def test_classify_json(capsys):
    assert app.main(["classify", "--dmax", "40", "--json"]) == 0
    records = json.loads(capsys.readouterr().out)
    found = [r["D"] for r in records if r["conclusion"] == "HasEuclideanIdeal"]
    assert found == [1, 2, 3, 5, 7, 11, 15]
    assert all(r["norm_euclidean"] for r in records if r["D"] in found)


def test_classify_text_single(capsys):
    assert app.main(["classify", "--d", "15"]) == 0
    assert "2: 15" in capsys.readouterr().out


def test_motzkin_zero_budget(capsys):
    assert app.main(["motzkin", "--d", "5", "--prime", "2", "--max-levels", "0", "--max-norm", "5"]) == 0
    out = capsys.readouterr().out
    assert "status=BudgetExhausted" in out
    assert "levels=0" in out


def test_motzkin_save_and_resume(tmp_path, capsys):
    state = tmp_path / "run.state"
    argv = ["motzkin", "--d", "5", "--prime", "2", "--max-levels", "2", "--max-norm", "10", "--save", str(state)]
    assert app.main(argv) == 0
    assert state.exists()
    assert app.main(["motzkin", "--resume", str(state), "--max-levels", "30", "--max-norm", "10"]) == 0
    out = capsys.readouterr().out
    assert "union contains every E-member up to norm 10" in out


def test_motzkin_resume_keeps_saved_budget(tmp_path, capsys):
    state = tmp_path / "run.state"
    argv = ["motzkin", "--d", "5", "--prime", "2", "--max-levels", "2", "--max-norm", "9", "--save", str(state)]
    assert app.main(argv) == 0
    capsys.readouterr()
    assert app.main(["motzkin", "--resume", str(state)]) == 0
    out = capsys.readouterr().out
    assert "norm <= 9 reached" in out
    assert "levels=2" in out


def test_motzkin_needs_field(capsys):
    assert app.main(["motzkin", "--max-levels", "3"]) == 1
    assert "--d and --prime" in capsys.readouterr().err


def test_figure(tmp_path, capsys):
    out = tmp_path / "d23.svg"
    assert app.main(["figure", "--d", "23", "--prime", "2", "-o", str(out)]) == 0
    assert out.read_text(encoding="utf-8").startswith("<?xml")


def test_classgroup(capsys):
    assert app.main(["classgroup", "--d", "23"]) == 0
    out = capsys.readouterr().out
    assert "h=3" in out
    assert "(2, 1, 3)  order 3" in out


def test_ring(capsys):
    assert app.main(["ring", "--dmax", "100"]) == 0
    assert "[1, 2, 3, 7, 11]" in capsys.readouterr().out


def test_usage_errors(capsys):
    assert app.main([]) == 1
    assert app.main(["bogus"]) == 1
    assert app.main(["cover", "--d", "5", "--prime", "5"]) == 1
    assert app.main(["classify", "--dmax", "0"]) == 1
    assert app.main(["--log-level", "LOUD", "ring", "--dmax", "5"]) == 1
    capsys.readouterr()


def test_input_errors(capsys):
    assert app.main(["cover", "--d", "12", "--prime", "2"]) == 1
    assert "12" in capsys.readouterr().err
    assert app.main(["cover", "--d", "19", "--prime", "2"]) == 1
    assert "inert" in capsys.readouterr().err


def test_help_exits_zero(capsys):
    assert app.main(["--help"]) == 0


def test_invariant_violation_exit_code(monkeypatch, capsys):
    def broken(C):
        raise InvariantViolation("forced")

    monkeypatch.setattr(app, "covering_verdict", broken)
    assert app.main(["cover", "--d", "5", "--prime", "2"]) == 2
    assert "forced" in capsys.readouterr().err


class TestRunConfig:
    def test_defaults_from_args(self):
        args = app.build_parser().parse_args(["motzkin", "--d", "5", "--prime", "2"])
        cfg = app.RunConfig.from_args(args)
        assert cfg.command is app.Command.MOTZKIN
        assert (cfg.D, cfg.prime_over) == (5, 2)
        assert cfg.max_levels is None
        assert cfg.max_inverse_norm is None
        cfg.validate()

    def test_json_and_output(self):
        args = app.build_parser().parse_args(["classify", "--dmax", "10", "--json"])
        cfg = app.RunConfig.from_args(args)
        assert cfg.fmt is app.ReportFormat.JSON
        assert cfg.output_path is None

    @pytest.mark.parametrize(
        "cfg",
        [
            app.RunConfig(app.Command.CLASSIFY),
            app.RunConfig(app.Command.FIGURE, D=13, prime_over=2),
            app.RunConfig(app.Command.MOTZKIN, D=5),
            app.RunConfig(app.Command.COVER, D=5, prime_over=2, max_inverse_norm=0),
            app.RunConfig(app.Command.COVER, D=5, prime_over=2, max_levels=-1),
        ],
    )
    def test_invalid(self, cfg):
        with pytest.raises(ValueError):
            cfg.validate()

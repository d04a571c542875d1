import json

import pytest

from beta_arena import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_expand_real(capsys):
    code, out, _ = run_cli(capsys, "expand", "--real", "golden",
                           "--x", "0.854102", "--n", "6")
    assert code == 0
    assert out.splitlines()[0] == "digits: 1 0 1 0 0 0"


def test_expand_real_json(capsys):
    code, out, _ = run_cli(capsys, "expand", "--real", "2.5", "--x", "0.5",
                           "--n", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["digits"] == [1, 0, 1, 1]
    assert doc["reconstruction_error"] < 2.5 ** -4


def test_expand_complex_pretty_digits(capsys):
    code, out, _ = run_cli(capsys, "expand", "--complex", "1.618033988749895",
                           "1.5707963267948966", "--z", "0", "0.27639320225",
                           "--n", "5", "--on-ambiguous", "nudge")
    assert code == 0
    assert out.splitlines()[0] == "digits: -1, 0, -2, 0, -2"


def test_expand_quat(capsys):
    code, out, _ = run_cli(capsys, "expand", "--quat", "0", "1.618033988749895",
                           "0", "0", "--z", "0.5", "0", "0.5", "0",
                           "--n", "6", "--on-ambiguous", "nudge")
    assert code == 0
    assert out.splitlines()[0] == "digits: 0, -2-2j, i+k, -1-j, i+k, -1-j"


def test_expand_ambiguous_input_exits_3(capsys):
    # orbit of this point hits a digit boundary under the default policy
    code, _, err = run_cli(capsys, "expand", "--quat", "0", "1.618033988749895",
                           "0", "0", "--z", "0.5", "0", "0.5", "0", "--n", "6")
    assert code == 3
    assert "ambiguous" in err


def test_admissible_listing(capsys):
    code, out, _ = run_cli(capsys, "admissible", "--real", "golden", "--n", "3")
    assert code == 0
    assert out.splitlines() == ["0 0 0", "0 0 1", "0 1 0", "1 0 0", "1 0 1"]


def test_regions_curve_A_csv_shape(capsys):
    code, out, _ = run_cli(capsys, "regions", "--curve", "A", "--b", "silver",
                           "--alpha", "0.1:0.5:0.1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "alpha,beta_threshold"
    assert len(lines) == 1 + 5  # header plus grid cardinality
    assert "nan" not in out.lower()


def test_regions_curve_F(capsys):
    code, out, _ = run_cli(capsys, "regions", "--curve", "F", "--r", "4.5",
                           "--alpha", "0.6:0.6:0.1")
    assert code == 0
    beta = float(out.strip().splitlines()[1].split(",")[1])
    assert beta == pytest.approx(0.6924158943595363, abs=1e-10)


def test_regions_curve_G_empty_above_gamma2(capsys):
    code, out, _ = run_cli(capsys, "regions", "--curve", "G", "--theta", "0.2")
    assert code == 0
    assert out.strip() == "N,interval_lo,interval_hi"


def test_regions_classify_ambiguous_flag(capsys):
    code, out, _ = run_cli(capsys, "regions", "--curve", "classify",
                           "--r", "3.0", "--theta", "0.0")
    assert code == 0
    doc = json.loads(out)
    assert doc["ambiguous"] is True and doc["N"] is None


def test_game_winning_preset_exit_0(capsys, tmp_path):
    out_path = tmp_path / "trace.json"
    code, _, err = run_cli(capsys, "game", "--preset", "dwinning-golden",
                           "--out", str(out_path))
    assert code == 0
    assert "verdict: verified" in err
    doc = json.loads(out_path.read_text())
    assert doc["verdict"] == "verified"
    assert doc["audit_violations"] == []
    assert doc["trace"]["moves"][0]["radius"] == 0.4


def test_game_losing_preset_exit_0(capsys):
    code, out, err = run_cli(capsys, "game", "--preset", "notwinning-lipschitz")
    assert code == 0
    doc = json.loads(out)
    assert doc["claim"]["kind"] == "avoids"
    assert doc["verdict"] == "verified"


def test_game_broken_alpha_never_crashes(capsys):
    # beta = 1/(alpha |q|) leaves (0, 1): reported as an error, exit 3
    code, _, err = run_cli(capsys, "game", "--preset", "notwinning-lipschitz",
                           "--alpha", "0.1")
    assert code == 3
    assert "error" in err or "strategy" in err


def test_game_illegal_move_exit_4(capsys, monkeypatch):
    from beta_arena.game import IllegalMoveError

    def boom(preset, overrides, seed, max_rounds):
        raise IllegalMoveError("bob", 2, "test hook")

    monkeypatch.setattr(cli, "_run_game", boom)
    code, _, err = run_cli(capsys, "game", "--preset", "dwinning-golden")
    assert code == 4
    assert "bob" in err


def test_game_output_is_deterministic(capsys):
    args = ("game", "--preset", "cwinning-nine-halves", "--seed", "7")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert (code1, out1) == (code2, out2)
    assert code1 == 0


def test_scan_deterministic_and_complete(capsys):
    args = ("scan", "--preset", "dwinning-golden",
            "--alpha", "0.03:0.07:0.02", "--seeds", "2")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert out1 == out2
    lines = out1.strip().splitlines()
    assert lines[0] == "alpha,beta,seed,rounds,status,verdict"
    assert len(lines) == 1 + 3 * 2
    assert all(line.split(",")[5] == "verified" for line in lines[1:])


def test_eps_env_override(capsys, monkeypatch):
    monkeypatch.setenv("BETA_ARENA_EPS", "0.2")
    # a huge ambiguity band makes almost every floor ambiguous
    code, _, err = run_cli(capsys, "expand", "--real", "golden",
                           "--x", "0.854102", "--n", "6")
    assert code == 3
    assert "ambiguous" in err


def test_grid_parse():
    assert cli.parse_grid("0.1:0.3:0.1") == pytest.approx([0.1, 0.2, 0.3])
    with pytest.raises(ValueError):
        cli.parse_grid("0.1:0.3:0")


def test_base_parse():
    import math
    assert cli.parse_base("golden") == pytest.approx((1 + math.sqrt(5)) / 2)
    assert cli.parse_base("metallic:3") == pytest.approx((3 + math.sqrt(13)) / 2)
    assert cli.parse_base("2.5") == 2.5

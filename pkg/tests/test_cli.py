from vortexemission.cli import main
from vortexemission.exporters import read_map_csv


def run(*argv):
    return main(list(argv))


def test_map_builtin_writes_three_files(tmp_path, capsys):
    code = run("map", "--builtin", "fig2a-l1", "--set", "resolution=32",
               "--out", str(tmp_path))
    assert code == 0
    for suffix in (".csv", ".pgm", ".range.txt"):
        assert (tmp_path / f"fig2a-l1{suffix}").exists()
    out = capsys.readouterr().out
    assert "fig2a-l1:" in out
    assert "masked 0" in out
    values, mask, meta = read_map_csv(tmp_path / "fig2a-l1.csv")
    assert values.shape == (32, 32)
    assert not mask.any()
    assert meta["resolution"] == 32


def test_map_runs_are_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run("map", "--builtin", "fig6b-l2", "--set", "resolution=24",
               "--workers", "3", "--out", str(a)) == 0
    assert run("map", "--builtin", "fig6b-l2", "--set", "resolution=24",
               "--out", str(b)) == 0
    for name in ("fig6b-l2.csv", "fig6b-l2.pgm", "fig6b-l2.range.txt"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_out_env_fallback(tmp_path, monkeypatch):
    target = tmp_path / "envout"
    monkeypatch.setenv("VORTEXEMISSION_OUT", str(target))
    assert run("map", "--builtin", "fig3a-l1", "--set", "resolution=16") == 0
    assert (target / "fig3a-l1.csv").exists()


def test_config_file_and_overrides(tmp_path):
    cfg = tmp_path / "case.txt"
    cfg.write_text("label = mycase\nwinding = 2\ndelta1 = -1.0\n"
                   "delta2 = 1.0\nresolution = 16\n")
    assert run("map", "--config", str(cfg), "--set", "winding=3",
               "--out", str(tmp_path)) == 0
    values, _, meta = read_map_csv(tmp_path / "mycase.csv")
    assert meta["label"] == "mycase"
    assert values.shape == (16, 16)


def test_bad_inputs_map_to_exit_codes(tmp_path, capsys):
    garbage = tmp_path / "broken.txt"
    garbage.write_text("this line has no equals sign\n")
    assert run("map", "--config", str(garbage), "--out", str(tmp_path)) == 2

    assert run("map", "--builtin", "fig2a-l1", "--set", "winding=2.5",
               "--out", str(tmp_path)) == 3
    assert run("map", "--builtin", "no-such-label", "--out", str(tmp_path)) == 3
    assert run("map", "--config", str(tmp_path / "absent.txt"),
               "--out", str(tmp_path)) == 5
    err = capsys.readouterr().err
    assert "error:" in err


def test_reproduce_family(tmp_path, capsys):
    code = run("reproduce", "fig7a", "--out", str(tmp_path))
    assert code == 0
    out = capsys.readouterr().out
    for combo in ("i", "ii", "iii", "iv"):
        assert (tmp_path / f"fig7a-{combo}.csv").exists()
    # the interfering panels sit on the determinant zero everywhere
    assert out.count("fully masked") == 2
    _, mask_ii, _ = read_map_csv(tmp_path / "fig7a-ii.csv")
    assert mask_ii.all()
    _, mask_i, _ = read_map_csv(tmp_path / "fig7a-i.csv")
    assert not mask_i.any()


def test_reproduce_rejects_unknown_family(tmp_path, capsys):
    assert run("reproduce", "fig9", "--out", str(tmp_path)) == 2
    assert "invalid choice" in capsys.readouterr().err


def test_spectrum_command(tmp_path, capsys):
    code = run("spectrum", "--builtin", "fig2a-l1", "--r", "0.5",
               "--dk-min", "-2", "--dk-max", "2", "--dk-points", "11",
               "--out", str(tmp_path))
    assert code == 0
    path = tmp_path / "fig2a-l1_spectrum.csv"
    lines = path.read_text().splitlines()
    assert lines[1] == "delta_k,value"
    assert len(lines) == 13
    first = [float(tok) for tok in lines[2].split(",")]
    assert first[0] == -2.0
    assert first[1] > 0.0
    assert "peak" in capsys.readouterr().out


def test_spectrum_argument_validation(tmp_path):
    assert run("spectrum", "--builtin", "fig2a-l1", "--dk-points", "1",
               "--out", str(tmp_path)) == 3
    assert run("spectrum", "--builtin", "fig2a-l1", "--dk-min", "2",
               "--dk-max", "-2", "--out", str(tmp_path)) == 3


def test_profile_command(tmp_path, capsys):
    code = run("profile", "--builtin", "fig2a-l2", "--n-phi", "90",
               "--out", str(tmp_path))
    assert code == 0
    out = capsys.readouterr().out
    assert "2 peak(s)" in out
    lines = (tmp_path / "fig2a-l2_profile.csv").read_text().splitlines()
    assert len(lines) == 92


def test_sweep_command(tmp_path):
    code = run("sweep", "--builtin", "fig2a-l1", "--param", "winding",
               "--values", "1,2,3", "--set", "resolution=24",
               "--out", str(tmp_path))
    assert code == 0
    for w in (1, 2, 3):
        assert (tmp_path / f"fig2a-l1-winding-{w}.csv").exists()
    lines = (tmp_path / "fig2a-l1_sweep.csv").read_text().splitlines()
    assert lines[1] == "winding,max,peaks,masked"
    peaks = [int(float(ln.split(",")[2])) for ln in lines[2:]]
    assert peaks == [1, 2, 3]


def test_sweep_rejects_empty_values(tmp_path):
    assert run("sweep", "--builtin", "fig2a-l1", "--param", "winding",
               "--values", ", ,", "--out", str(tmp_path)) == 3


def test_verify_command(capsys):
    code = run("verify", "--suite", "peaks", "--suite", "scaling", "--seed", "7")
    assert code == 0
    out = capsys.readouterr().out
    assert out.startswith("seed 7")
    assert "all 2 suites passed" in out
    assert "FAIL" not in out


def test_verify_rejects_unknown_suite(capsys):
    assert run("verify", "--suite", "nonsense") == 2
    assert "invalid choice" in capsys.readouterr().err


def test_version_and_usage_exits():
    assert run("--version") == 0
    assert run() == 2
    assert run("map") == 2   # a scenario source is required

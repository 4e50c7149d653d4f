import numpy as np
import pytest

from vortexemission import (GridSpec, ParseError, SpectrumMap,
                            azimuthal_profile, evaluate_map, get_builtin)
from vortexemission.exporters import (MASK_BYTE, UNIFORM_BYTE, atomic_write,
                                      map_to_csv, map_to_pgm, parse_meta,
                                      profile_to_csv, read_map_csv,
                                      safe_basename, table_to_csv, write_map,
                                      write_profile)


@pytest.fixture(scope="module")
def small_map():
    s = get_builtin("fig2b-l1")
    return evaluate_map(s.atom, s.fields, s.init, delta_k=s.delta_k,
                        grid=GridSpec(resolution=12), label=s.label)


@pytest.fixture(scope="module")
def masked_map():
    s = get_builtin("fig7a-ii")
    return evaluate_map(s.atom, s.fields, s.init, delta_k=0.0,
                        grid=GridSpec(resolution=8), label=s.label)


def test_map_csv_round_trip(small_map):
    text = map_to_csv(small_map)
    values, mask, meta = read_map_csv(text)
    assert np.array_equal(values, small_map.values, equal_nan=True)
    assert np.array_equal(mask, small_map.pole_mask)
    assert meta["label"] == "fig2b-l1"
    assert meta["resolution"] == 12
    assert meta["masked"] == 0
    assert meta["rows"] == "top-first"
    assert isinstance(meta["half_extent"], float)


def test_map_csv_round_trip_with_nan(masked_map):
    values, mask, meta = read_map_csv(map_to_csv(masked_map))
    assert mask.all()
    assert np.isnan(values).all()
    assert meta["masked"] == 64


def test_meta_parsing():
    meta = parse_meta("# label='odd, name', r=0.5, samples=360, rows=top-first")
    assert meta == {"label": "odd, name", "r": 0.5, "samples": 360,
                    "rows": "top-first"}
    with pytest.raises(ParseError):
        parse_meta("label='x'")


def test_pgm_bytes(small_map):
    img, sidecar = map_to_pgm(small_map)
    header = f"P5\n12 12\n255\n".encode("ascii")
    assert img.startswith(header)
    pixels = np.frombuffer(img[len(header):], dtype=np.uint8).reshape(12, 12)
    finite = small_map.finite_values()
    lo, hi = finite.min(), finite.max()
    i, j = np.unravel_index(np.argmin(small_map.values), (12, 12))
    assert pixels[i, j] == 0
    i, j = np.unravel_index(np.argmax(small_map.values), (12, 12))
    assert pixels[i, j] == 255
    assert f"min = {float(lo)!r}" in sidecar
    assert f"max = {float(hi)!r}" in sidecar
    assert "uniform = false" in sidecar
    assert "masked = 0" in sidecar


def test_pgm_fully_masked(masked_map):
    img, sidecar = map_to_pgm(masked_map)
    pixels = np.frombuffer(img[len(b"P5\n8 8\n255\n"):], dtype=np.uint8)
    assert (pixels == MASK_BYTE).all()
    assert "masked = 64" in sidecar
    assert "min = nan" in sidecar


def test_pgm_uniform():
    flat = SpectrumMap(values=np.full((4, 4), 3.7),
                       pole_mask=np.zeros((4, 4), bool),
                       grid=GridSpec(resolution=4), waist=1.0, delta_k=0.0,
                       label="flat")
    img, sidecar = map_to_pgm(flat)
    pixels = np.frombuffer(img[len(b"P5\n4 4\n255\n"):], dtype=np.uint8)
    assert (pixels == UNIFORM_BYTE).all()
    assert "uniform = true" in sidecar


def test_profile_csv():
    s = get_builtin("fig2a-l2")
    p = azimuthal_profile(s.atom, s.fields, s.init, r=1.0, n_phi=8)
    text = profile_to_csv(p)
    lines = text.splitlines()
    assert lines[1] == "phi,value"
    assert len(lines) == 10
    phi0, val0 = lines[2].split(",")
    assert float(phi0) == 0.0
    assert float(val0) == p.values[0]
    meta = parse_meta(lines[0])
    assert meta["samples"] == 8
    assert meta["r"] == 1.0


def test_table_to_csv():
    text = table_to_csv({"label": "sweep"}, ["winding", "peaks"],
                        [np.array([1.0, 2.0]), np.array([1.0, 2.0])])
    assert text.splitlines()[1] == "winding,peaks"
    with pytest.raises(ValueError):
        table_to_csv({}, ["a", "b"], [np.array([1.0])])
    with pytest.raises(ValueError):
        table_to_csv({}, ["a"], [np.array([1.0]), np.array([2.0])])


def test_atomic_write_no_droppings(tmp_path):
    target = tmp_path / "out.txt"
    atomic_write(target, "hello\n")
    atomic_write(target, b"raw bytes")
    assert target.read_bytes() == b"raw bytes"
    assert list(tmp_path.iterdir()) == [target]


def test_write_map_paths(tmp_path, small_map):
    paths = write_map(small_map, tmp_path / "deep" / "dir")
    names = sorted(p.name for p in paths)
    assert names == ["fig2b-l1.csv", "fig2b-l1.pgm", "fig2b-l1.range.txt"]
    for p in paths:
        assert p.exists()
    only_csv = write_map(small_map, tmp_path, basename="alt", formats=("csv",))
    assert [p.name for p in only_csv] == ["alt.csv"]
    values, _, _ = read_map_csv(only_csv[0])
    assert np.array_equal(values, small_map.values, equal_nan=True)


def test_write_profile(tmp_path):
    s = get_builtin("fig4a-l1")
    p = azimuthal_profile(s.atom, s.fields, s.init, r=0.7, n_phi=16)
    path = write_profile(p, tmp_path, "ring")
    assert path.name == "ring.csv"
    assert path.read_text().startswith("#")


def test_safe_basename():
    assert safe_basename("fig2a-l1") == "fig2a-l1"
    assert safe_basename("weird label/with:stuff") == "weird_label_with_stuff"
    assert safe_basename("***") == "map"

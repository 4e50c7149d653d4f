import math

import pytest

from vortexemission import (FAMILIES, InitialState, ParseError,
                            ValidationError, apply_overrides,
                            builtin_scenarios, figure_panels, get_builtin,
                            parse_scenario, serialize_scenario, with_label)


def test_catalog_size_and_ids():
    catalog = builtin_scenarios()
    assert len(catalog) == 48
    assert len(FAMILIES) == 12
    for label, scenario in catalog.items():
        assert scenario.label == label


def test_catalog_spot_checks():
    s = get_builtin("fig2a-l3")
    assert s.atom.p == 1.0
    assert (s.atom.delta1, s.atom.delta2) == (0.0, 0.0)
    assert s.fields.winding == 3
    assert s.fields.coupling_profile == "constant"
    assert s.init == InitialState.ground()

    s = get_builtin("fig5b-l2")
    assert s.atom.p == 0.0
    assert (s.atom.delta1, s.atom.delta2) == (-1.0, 1.0)
    assert s.init == InitialState.uniform()

    s = get_builtin("fig7b-iv")
    assert s.fields.winding == 0
    assert s.fields.coupling_profile == "gaussian"
    assert s.atom.p == 1.0
    assert s.init == InitialState.excited_pair()
    assert s.init.b1 == pytest.approx(1 / math.sqrt(2))


def test_get_builtin_unknown():
    with pytest.raises(ValidationError, match="unknown builtin"):
        get_builtin("fig2a-l9")


def test_figure_panels():
    assert figure_panels("fig2a") == ["fig2a-l1", "fig2a-l2", "fig2a-l3", "fig2a-l4"]
    assert figure_panels("fig7b") == ["fig7b-i", "fig7b-ii", "fig7b-iii", "fig7b-iv"]
    with pytest.raises(ValidationError, match="unknown family"):
        figure_panels("fig9a")


def test_parse_defaults():
    s = parse_scenario("# nothing set\n\n")
    assert s.label == "custom"
    assert s.delta_k == 0.0
    assert s.atom.gamma1 == 1.0
    assert s.fields.winding == 1
    assert s.init == InitialState.ground()
    assert s.grid.resolution == 256


def test_parse_full_file():
    text = """
    # emitter
    gamma1 = 1.3
    gamma2 = 0.8   # uneven decay
    p = 0.6
    delta1 = -0.4

    o01 = 1.1
    winding = 2
    coupling_profile = gaussian

    b0 = 0
    b1 = [0.6, 0.0]
    b2 = [0.0, 0.8]

    delta_k = 0.25
    resolution = 64
    label = hotcase
    """
    s = parse_scenario(text)
    assert s.atom.gamma1 == 1.3
    assert s.atom.gamma2 == 0.8
    assert s.atom.delta2 == 0.0
    assert s.fields.winding == 2
    assert s.fields.coupling_profile == "gaussian"
    assert s.init.as_tuple() == (0.0j, 0.6 + 0.0j, 0.8j)
    assert s.delta_k == 0.25
    assert s.grid.resolution == 64
    assert s.label == "hotcase"


def test_parse_round_trip_exact():
    for label in ("fig2a-l1", "fig6b-l4", "fig7a-iii"):
        s = get_builtin(label)
        assert parse_scenario(serialize_scenario(s)) == s
    custom = parse_scenario("p = 0.37\nb0 = [0.5, 0.5]\nb1 = [0.5, 0]\n"
                            "b2 = [0, 0.5]\ndelta_k = -1.75")
    assert parse_scenario(serialize_scenario(custom)) == custom


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 2"):
        parse_scenario("gamma1 = 1.0\nthis is not an assignment\n")
    with pytest.raises(ParseError, match="line 3: duplicate key 'p'"):
        parse_scenario("p = 1.0\ngamma1 = 2.0\np = 0.5\n")
    with pytest.raises(ParseError, match="line 1"):
        parse_scenario("o01 = @@\n")


def test_validation_errors():
    with pytest.raises(ValidationError, match="unknown keys: omega01, strength"):
        parse_scenario("omega01 = 1.0\nstrength = 2.0\n")
    with pytest.raises(ValidationError, match="winding"):
        parse_scenario("winding = 2.5\n")
    with pytest.raises(ValidationError, match="norm"):
        parse_scenario("b0 = 1.0\nb1 = 1.0\nb2 = 0.0\n")
    with pytest.raises(ValidationError, match="coupling_profile"):
        parse_scenario("coupling_profile = donut\n")
    with pytest.raises(ValidationError, match="label"):
        parse_scenario("label = ''\n")
    with pytest.raises(ValidationError, match="gamma1 must be a number"):
        parse_scenario("gamma1 = strong\n")


def test_integer_coercion():
    assert parse_scenario("winding = 2.0\n").fields.winding == 2
    assert parse_scenario("winding = -3\n").fields.winding == -3
    with pytest.raises(ValidationError):
        parse_scenario("winding = True\n")


def test_apply_overrides():
    base = get_builtin("fig2a-l1")
    s = apply_overrides(base, ["winding=3", "delta_k=0.5"])
    assert s.fields.winding == 3
    assert s.delta_k == 0.5
    assert s.label == base.label
    assert s.atom == base.atom
    with pytest.raises(ParseError, match="override"):
        apply_overrides(base, ["winding"])
    with pytest.raises(ValidationError):
        apply_overrides(base, ["bogus=1"])


def test_with_label():
    s = with_label(get_builtin("fig3a-l1"), "renamed")
    assert s.label == "renamed"
    assert s.atom == get_builtin("fig3a-l1").atom

"""Scenario files, overrides, and the built-in catalog.

A scenario file is plain text, one `key = value` per line, `#` comments.
Values use Python literal syntax; bare words are taken as strings, so
`coupling_profile = gaussian` works unquoted.  Amplitudes are written as
`[re, im]` pairs.
"""

from __future__ import annotations

import ast
import math
from dataclasses import dataclass, replace

from .errors import ConfigError, ParseError, ValidationError
from .params import AtomParams, FieldConfig, GridSpec, InitialState

_ATOM_KEYS = ("gamma1", "gamma2", "p", "delta1", "delta2")
_FIELD_KEYS = ("o01", "omega02", "waist", "winding", "coupling_profile")
_INIT_KEYS = ("b0", "b1", "b2")
_GRID_KEYS = ("half_extent", "resolution")
_OTHER_KEYS = ("delta_k", "label")
KNOWN_KEYS = _ATOM_KEYS + _FIELD_KEYS + _INIT_KEYS + _GRID_KEYS + _OTHER_KEYS


@dataclass(frozen=True)
class Scenario:
    """One fully specified run: emitter, drive, start state, and framing."""

    atom: AtomParams
    fields: FieldConfig
    init: InitialState
    delta_k: float = 0.0
    grid: GridSpec = GridSpec()
    label: str = "custom"


def _real_number(key, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{key} must be a number, got {value!r}")
    return float(value)


def _amplitude(key, value):
    # complex shows up when overriding a scenario that is already built
    if isinstance(value, (int, float, complex)) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 \
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
        return complex(value[0], value[1])
    raise ValidationError(f"{key} must be a number or a [re, im] pair, got {value!r}")


def _integer(key, value):
    if isinstance(value, bool):
        raise ValidationError(f"{key} must be an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and math.isfinite(value) and value == int(value):
        return int(value)
    raise ValidationError(f"{key} must be an integer, got {value!r}")


def _assignments(text: str):
    """Yield (key, raw_value) pairs; line numbers drive the error messages."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not sep or not key or not value:
            raise ParseError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        yield lineno, key, value


def _literal(where, key, token):
    try:
        return ast.literal_eval(token)
    except (ValueError, SyntaxError):
        # bare words are strings; quoting is only needed for exotic labels
        if all(ch.isalnum() or ch in "_-." for ch in token):
            return token
        raise ParseError(f"{where}: cannot parse value {token!r} for {key}") from None


def _build(raw: dict) -> Scenario:
    unknown = sorted(set(raw) - set(KNOWN_KEYS))
    if unknown:
        raise ValidationError(f"unknown keys: {', '.join(unknown)}")

    atom_kwargs = {k: _real_number(k, raw[k]) for k in _ATOM_KEYS if k in raw}
    field_kwargs = {}
    for k in ("o01", "omega02", "waist"):
        if k in raw:
            field_kwargs[k] = _real_number(k, raw[k])
    if "winding" in raw:
        field_kwargs["winding"] = _integer("winding", raw["winding"])
    if "coupling_profile" in raw:
        value = raw["coupling_profile"]
        if not isinstance(value, str):
            raise ValidationError(f"coupling_profile must be a string, got {value!r}")
        field_kwargs["coupling_profile"] = value
    init_kwargs = {k: _amplitude(k, raw[k]) for k in _INIT_KEYS if k in raw}
    grid_kwargs = {}
    if "half_extent" in raw:
        grid_kwargs["half_extent"] = _real_number("half_extent", raw["half_extent"])
    if "resolution" in raw:
        grid_kwargs["resolution"] = _integer("resolution", raw["resolution"])

    label = raw.get("label", "custom")
    if not isinstance(label, str) or not label:
        raise ValidationError(f"label must be a nonempty string, got {label!r}")
    delta_k = _real_number("delta_k", raw["delta_k"]) if "delta_k" in raw else 0.0

    try:
        return Scenario(atom=AtomParams(**atom_kwargs),
                        fields=FieldConfig(**field_kwargs),
                        init=InitialState(**init_kwargs) if init_kwargs else InitialState.ground(),
                        delta_k=delta_k,
                        grid=GridSpec(**grid_kwargs),
                        label=label)
    except ConfigError as err:
        raise ValidationError(str(err)) from err


def parse_scenario(text: str) -> Scenario:
    """Parse a scenario file; unset keys fall back to their defaults."""
    raw = {}
    for lineno, key, token in _assignments(text):
        if key in raw:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = _literal(f"line {lineno}", key, token)
    return _build(raw)


def apply_overrides(scenario: Scenario, assignments: list[str]) -> Scenario:
    """Apply `key=value` strings (CLI --set) on top of an existing scenario."""
    raw = _scenario_dict(scenario)
    for text in assignments:
        key, sep, token = text.partition("=")
        key, token = key.strip(), token.strip()
        if not sep or not key or not token:
            raise ParseError(f"override {text!r}: expected key=value")
        raw[key] = _literal(f"override {key}", key, token)
    return _build(raw)


def _scenario_dict(s: Scenario) -> dict:
    return {
        "label": s.label,
        "gamma1": s.atom.gamma1, "gamma2": s.atom.gamma2, "p": s.atom.p,
        "delta1": s.atom.delta1, "delta2": s.atom.delta2,
        "o01": s.fields.o01, "omega02": s.fields.omega02, "waist": s.fields.waist,
        "winding": s.fields.winding, "coupling_profile": s.fields.coupling_profile,
        "b0": s.init.b0, "b1": s.init.b1, "b2": s.init.b2,
        "delta_k": s.delta_k,
        "half_extent": s.grid.half_extent, "resolution": s.grid.resolution,
    }


def serialize_scenario(s: Scenario) -> str:
    """Write a scenario back to file text; parse(serialize(s)) reproduces s."""
    raw = _scenario_dict(s)
    lines = []
    for key, value in raw.items():
        if key in _INIT_KEYS:
            c = complex(value)
            lines.append(f"{key} = [{c.real!r}, {c.imag!r}]")
        elif isinstance(value, str):
            lines.append(f"{key} = {value!r}")
        elif isinstance(value, int):
            lines.append(f"{key} = {value}")
        else:
            lines.append(f"{key} = {float(value)!r}")
    return "\n".join(lines) + "\n"


_PAIR_VARIANTS = {"a": (0.0, 0.0), "b": (-1.0, 1.0)}
_SEVEN_COMBOS = {"i": (0.0, "ground"), "ii": (1.0, "ground"),
                 "iii": (0.0, "pair"), "iv": (1.0, "pair")}
_FAMILY_P = {2: 1.0, 3: 0.0, 4: 1.0, 5: 0.0, 6: 1.0}
_FAMILY_INIT = {2: "ground", 3: "pair", 4: "pair", 5: "uniform", 6: "uniform"}
_INIT_BUILDERS = {"ground": InitialState.ground,
                  "pair": InitialState.excited_pair,
                  "uniform": InitialState.uniform}

FAMILIES = tuple(f"fig{n}{v}" for n in range(2, 8) for v in ("a", "b"))


def builtin_scenarios() -> dict[str, Scenario]:
    """The full catalog keyed by label: vortex families fig2..fig6, Gaussian fig7."""
    catalog = {}
    for fig in range(2, 7):
        for variant, (d1, d2) in _PAIR_VARIANTS.items():
            atom = AtomParams(p=_FAMILY_P[fig], delta1=d1, delta2=d2)
            init = _INIT_BUILDERS[_FAMILY_INIT[fig]]()
            for winding in range(1, 5):
                label = f"fig{fig}{variant}-l{winding}"
                catalog[label] = Scenario(atom=atom,
                                          fields=FieldConfig(winding=winding),
                                          init=init, label=label)
    for variant, (d1, d2) in _PAIR_VARIANTS.items():
        for combo, (p, init_name) in _SEVEN_COMBOS.items():
            label = f"fig7{variant}-{combo}"
            catalog[label] = Scenario(
                atom=AtomParams(p=p, delta1=d1, delta2=d2),
                fields=FieldConfig(winding=0, coupling_profile="gaussian"),
                init=_INIT_BUILDERS[init_name](), label=label)
    return catalog


def get_builtin(label: str) -> Scenario:
    catalog = builtin_scenarios()
    if label not in catalog:
        raise ValidationError(f"unknown builtin {label!r}; labels look like "
                              f"fig2a-l1 .. fig6b-l4 and fig7a-i .. fig7b-iv "
                              f"({len(catalog)} total)")
    return catalog[label]


def figure_panels(family: str) -> list[str]:
    """Labels of the four panels belonging to one figure family id."""
    if family not in FAMILIES:
        raise ValidationError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if family.startswith("fig7"):
        return [f"{family}-{c}" for c in _SEVEN_COMBOS]
    return [f"{family}-l{w}" for w in range(1, 5)]


def with_label(scenario: Scenario, label: str) -> Scenario:
    return replace(scenario, label=label)

"""Config grammar, validation messages, recipes, bundled scenarios."""

import math

import numpy as np
import pytest

from preytaxis import (
    ConfigError,
    ParseError,
    TaxisScheme,
    ValidationError,
    build_config,
    initial_state,
    parse_config,
    parse_items,
    scenario_items,
)
from preytaxis.config import DEFAULTS, SWEEPABLE_KEYS


def test_empty_text_gives_default_run():
    cfg = parse_config("")
    assert cfg.grid.n == (64,)
    assert cfg.grid.length == (1.0,)
    assert cfg.params.m2 == 2.0
    assert cfg.scheme.taxis_scheme is TaxisScheme.UPWIND
    assert cfg.t_end == 1.0
    assert cfg.sample_every == 0.1
    assert cfg.seed == 0
    assert cfg.svg is False
    assert cfg.out_dir == "out"


def test_comments_and_blank_lines():
    items = parse_items(
        """
        # full-line comment
        params.chi = 2.5   # trailing comment

        run.t_end = 4
        """
    )
    assert items == {"params.chi": "2.5", "run.t_end": "4"}
    cfg = build_config(items)
    assert cfg.params.chi == 2.5
    assert cfg.items["params.chi"] == "2.5"  # raw echo kept


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 1.*key = value"):
        parse_items("junk")
    with pytest.raises(ParseError, match="line 2.*unknown key"):
        parse_items("params.chi = 1\nparams.zeta = 2")
    with pytest.raises(ParseError, match="line 3.*duplicate"):
        parse_items("params.chi = 1\n\nparams.chi = 2")
    with pytest.raises(ParseError, match="line 1.*empty value"):
        parse_items("params.chi =")


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("params.chi = -1", "params:"),
        ("params.d1 = abc", "must be a number"),
        ("params.m2 = inf", "finite"),
        ("grid.dim = 3", "grid.dim"),
        ("grid.n = 2", "grid:"),
        ("grid.dim = 2\ngrid.n = 8,8,8", "entries"),
        ("scheme.taxis = hybrid", "scheme.taxis"),
        ("scheme.cfl_safety = 0", "scheme:"),
        ("initial.kind = cosine\ninitial.u_base = 1\ninitial.u_amp = 1", "positive cosine"),
        ("initial.u_base = 0", "u_base"),
        ("initial.kind = two_bump\ninitial.width = 0", "width"),
        ("run.t_end = 0", "t_end"),
        ("run.sample_every = -0.1", "sample_every"),
        ("output.svg = maybe", "boolean"),
        ("run.seed = 1.5", "integer"),
    ],
)
def test_validation_errors(text, fragment):
    with pytest.raises(ValidationError, match=fragment):
        parse_config(text)


def test_scalar_broadcast_to_both_axes():
    cfg = parse_config("grid.dim = 2\ngrid.n = 32\ngrid.length = 4.0")
    assert cfg.grid.n == (32, 32)
    assert cfg.grid.length == (4.0, 4.0)
    cfg = parse_config("grid.dim = 2\ngrid.n = 32, 16\ngrid.length = 4.0, 2.0")
    assert cfg.grid.n == (32, 16)
    assert cfg.grid.length == (4.0, 2.0)


def test_bool_grammar():
    for raw, expected in [("true", True), ("ON", True), ("yes", True), ("1", True),
                          ("false", False), ("off", False), ("No", False), ("0", False)]:
        assert parse_config(f"output.svg = {raw}").svg is expected


def test_sweepable_keys_are_numeric_scalars():
    assert "params.chi" in SWEEPABLE_KEYS
    assert "params.eps" in SWEEPABLE_KEYS
    assert "run.t_end" in SWEEPABLE_KEYS
    assert "scheme.cfl_safety" in SWEEPABLE_KEYS
    for frozen in ("grid.n", "grid.dim", "scheme.taxis", "initial.kind",
                   "output.dir", "output.svg", "run.seed"):
        assert frozen not in SWEEPABLE_KEYS
    assert SWEEPABLE_KEYS <= set(DEFAULTS)


def test_constant_recipe():
    cfg = parse_config("initial.u_base = 0.7\ninitial.v_base = 1.3")
    s = initial_state(cfg)
    assert np.all(s.u.values == 0.7)
    assert np.all(s.v.values == 1.3)
    assert s.t == 0.0


def test_cosine_recipe_1d():
    cfg = parse_config(
        "initial.kind = cosine\ninitial.u_base = 1.0\ninitial.u_amp = 0.5\n"
        "initial.v_base = 2.0\ninitial.v_amp = 0.25\ngrid.length = 2.0"
    )
    s = initial_state(cfg)
    x = cfg.grid.centers(0)
    assert np.allclose(s.u.values, 1.0 + 0.5 * np.cos(np.pi * x / 2.0), rtol=1e-15)
    assert np.allclose(s.v.values, 2.0 + 0.25 * np.cos(np.pi * x / 2.0), rtol=1e-15)
    assert s.u.values.min() > 0


def test_cosine_recipe_2d_uses_product_mode():
    cfg = parse_config(
        "grid.dim = 2\ngrid.n = 8\ninitial.kind = cosine\n"
        "initial.v_base = 1.0\ninitial.v_amp = 0.5"
    )
    s = initial_state(cfg)
    X, Y = cfg.grid.meshcenters()
    expected = 1.0 + 0.5 * np.cos(np.pi * X) * np.cos(np.pi * Y)
    assert np.allclose(s.v.values, expected, rtol=1e-15)


def test_two_bump_recipe_separates_species():
    cfg = parse_config(
        "initial.kind = two_bump\ninitial.u_base = 0.5\ninitial.u_amp = 1.0\n"
        "initial.v_base = 0.5\ninitial.v_amp = 1.0\ninitial.width = 0.05\ngrid.n = 128"
    )
    s = initial_state(cfg)
    x = cfg.grid.centers(0)
    assert abs(x[np.argmax(s.u.values)] - 0.25) < 0.02
    assert abs(x[np.argmax(s.v.values)] - 0.75) < 0.02
    assert s.u.values.min() >= 0.5


def test_bundled_scenarios_build():
    for name in ("coexistence_64", "extinction_64", "max_principle_64",
                 "eps_family_1d", "order_1d"):
        cfg = build_config(scenario_items(name))
        assert cfg.t_end > 0
    assert build_config(scenario_items("coexistence_64")).grid.dim == 2
    assert build_config(scenario_items("order_1d")).scheme.taxis_scheme is TaxisScheme.CENTRAL


def test_unknown_scenario_lists_available():
    with pytest.raises(ConfigError, match="coexistence_64"):
        scenario_items("nope")


def test_build_config_rejects_unknown_items():
    with pytest.raises(ParseError, match="unknown keys"):
        build_config({"params.zeta": "1"})

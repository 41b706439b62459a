import math

import pytest

from ringqed import RingParams, ValidationError
from ringqed.config import parse_config
from ringqed.errors import ConfigParseError


def test_direct_field_mapping():
    p, sweep = parse_config("kappa_a = 1.0\ng1 = 1.0\ng2 = 1.0\ntheta_a = 3.141592653589793")
    assert p == RingParams(kappa_a=1.0, g1=1.0, g2=1.0, theta_a=math.pi)
    assert sweep is None


def test_defaults():
    cfg = parse_config("")
    assert cfg.params == RingParams()
    assert cfg.options["quad_tol"] == 1e-8 and cfg.options["tau_d"] == 0.0


@pytest.mark.parametrize("text", ["kappa_a = 0", "g1 = -1", "epsilon = -2"])
def test_invariant_violations(text):
    with pytest.raises(ValidationError):
        parse_config(text)


def test_comments_blank_lines_and_complex():
    cfg = parse_config("# header\n\nzeta = 0.5+0.25j  # coupling\nchi=4\n")
    assert cfg.params.zeta == 0.5 + 0.25j and cfg.params.chi == 4.0


@pytest.mark.parametrize("text,line", [
    ("g1 = 1\nbogus = 2", 2),
    ("g1 = 1\n\ng1 = 2", 3),
    ("g1 1", 1),
    ("g1 = abc", 1),
    ("g1 =", 1),
    ("axis1 = g1 0 1", 1),
    ("axis1 = g1 0 1 2.5", 1),
    ("axis1 = g1 1 0 3", 1),
    ("axis1 = nope 0 1 3", 1),
    ("exact_kernel = maybe", 1),
    ("max_intervals = 10.5", 1),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ConfigParseError) as exc:
        parse_config(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_sweep_and_options():
    text = """
    g1 = 1
    g2 = 1
    axis1 = phase 0 6.283185307179586 5
    axis2 = detuning1 -2 2 3
    observable = t_minus_one_abs
    quad_tol = 1e-9
    exact_kernel = yes
    probes = 0, 1.5 2
    """
    cfg = parse_config(text)
    assert cfg.sweep.axis1.name == "phase" and cfg.sweep.axis2.count == 3
    assert cfg.options["quad_tol"] == 1e-9 and cfg.options["exact_kernel"] is True
    assert cfg.options["probes"] == (0.0, 1.5, 2.0)


def test_sweep_needs_axis1():
    with pytest.raises(ValidationError):
        parse_config("observable = ln_g2_scatter")


def test_unknown_observable():
    with pytest.raises(ValidationError):
        parse_config("axis1 = g1 0 1 3\nobservable = nope")

"""Line-oriented ``key = value`` configuration files.

Blank lines and ``#`` comments are ignored. Keys are the RingParams fields,
the sweep keys ``axis1``/``axis2`` (``name min max count``) and
``observable``, and the run options listed in :data:`OPTION_KEYS`.
Unknown or repeated keys are rejected with the offending line number.
"""
from dataclasses import dataclass, field, fields

from .core import RingParams
from .errors import ConfigParseError, ValidationError
from .sweep import Axis, SweepSpec

PARAM_KEYS = tuple(f.name for f in fields(RingParams))
SWEEP_KEYS = ("axis1", "axis2", "observable")

_BOOL = {"true": True, "yes": True, "on": True, "1": True,
         "false": False, "no": False, "off": False, "0": False}


def _float(text):
    return float(text)


def _int(text):
    value = float(text)
    if value != int(value):
        raise ValueError(f"expected an integer, got {text!r}")
    return int(value)


def _bool(text):
    try:
        return _BOOL[text.lower()]
    except KeyError:
        raise ValueError(f"expected true/false, got {text!r}") from None


def _floats(text):
    return tuple(float(x) for x in text.replace(",", " ").split())


def _word(text):
    return text


OPTION_KEYS = {
    "quad_tol": _float,
    "quad_window": _float,
    "max_intervals": _int,
    "exact_kernel": _bool,
    "backend": _word,
    "workers": _int,
    "omega1": _float,
    "omega2": _float,
    "t_end": _float,
    "dt": _float,
    "n_modes": _int,
    "bandwidth": _float,
    "sigma": _float,
    "linewidth": _word,
    "probes": _floats,
}

DEFAULTS = {"quad_tol": 1e-8, "tau_d": 0.0}


@dataclass
class ParsedConfig:
    params: RingParams
    sweep: SweepSpec = None
    options: dict = field(default_factory=dict)

    def __iter__(self):
        # allows ``params, sweep = parse_config(text)``
        return iter((self.params, self.sweep))


def _parse_axis(text, line):
    parts = text.split()
    if len(parts) != 4:
        raise ConfigParseError("axis needs 'name min max count'", line)
    name, lo, hi, count = parts
    try:
        return Axis(name, float(lo), float(hi), _int(count))
    except ValueError as exc:
        if isinstance(exc, ValidationError):
            raise ConfigParseError(str(exc), line) from None
        raise ConfigParseError(f"bad axis value: {exc}", line) from None


def parse_config(text):
    """Parse configuration text into parameters, an optional sweep and options.

    Raises
    ------
    ConfigParseError
        Syntax errors, unknown or repeated keys, unparsable values.
    ValidationError
        Values that parse but violate a parameter invariant.
    """
    seen = {}
    params = {}
    sweep = {}
    options = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigParseError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value = (s.strip() for s in body.split("=", 1))
        if not key or not value:
            raise ConfigParseError(f"empty key or value in {raw.strip()!r}", lineno)
        if key in seen:
            raise ConfigParseError(f"key {key!r} repeated (first on line {seen[key]})", lineno)
        seen[key] = lineno
        if key in PARAM_KEYS:
            try:
                params[key] = complex(value.replace(" ", "")) if key == "zeta" else float(value)
            except ValueError:
                raise ConfigParseError(f"{key}: cannot parse {value!r} as a number", lineno) from None
        elif key in ("axis1", "axis2"):
            sweep[key] = _parse_axis(value, lineno)
        elif key == "observable":
            sweep[key] = value
        elif key in OPTION_KEYS:
            try:
                options[key] = OPTION_KEYS[key](value)
            except ValueError as exc:
                raise ConfigParseError(f"{key}: {exc}", lineno) from None
        else:
            raise ConfigParseError(f"unknown key {key!r}", lineno)
    p = RingParams(**params)
    spec = None
    if sweep:
        if "axis1" not in sweep:
            raise ValidationError("a sweep needs axis1 (axis2 and observable are optional)")
        spec = SweepSpec(sweep["axis1"], sweep.get("axis2"), sweep.get("observable", "t_minus_one_abs"))
    merged = dict(DEFAULTS)
    merged.update(options)
    merged["tau_d"] = p.tau_d
    return ParsedConfig(p, spec, merged)

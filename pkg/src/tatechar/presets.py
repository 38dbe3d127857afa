"""Named curve presets for the CLI and the verification battery."""

from __future__ import annotations

from .errors import ConfigError
from .localring import LocalRing
from .curve import LocalCurve

PRESETS = {
    # good ordinary reduction at 5; the workhorse curve of the test suite
    "demo": {"p": 5, "a": 1, "b": 1, "cm": False},
    # j = 1728 with complex multiplication by i, ordinary at 5
    "cm": {"p": 5, "a": 1, "b": 0, "cm": True},
}


def preset_names():
    return sorted(PRESETS)


def curve_from_spec(spec, m: int, seed: int = 0) -> LocalCurve:
    """Build a base-ring curve from a preset name or {p, a, b} mapping."""
    if isinstance(spec, str):
        if spec not in PRESETS:
            raise ConfigError(f"unknown curve preset {spec!r}")
        data = PRESETS[spec]
    elif isinstance(spec, dict):
        data = spec
    else:
        raise ConfigError("curve spec must be a preset name or a mapping")
    try:
        p, a, b = int(data["p"]), int(data["a"]), int(data["b"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"curve spec needs integer p, a, b: {exc}") from exc
    ring = LocalRing.base(p, m)
    return LocalCurve(ring, a, b, seed=seed)


def is_cm(spec) -> bool:
    if isinstance(spec, str) and spec in PRESETS:
        return bool(PRESETS[spec]["cm"])
    if isinstance(spec, dict):
        return bool(spec.get("cm", False))
    return False

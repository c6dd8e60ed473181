"""Run-config parsing and validation.

Configs are JSON objects with schema_version 1.  Validation is total:
unknown keys are rejected, every physical parameter is range-checked, and
errors carry the dotted path to the offending field.  Numeric code never
sees an unvalidated value.
"""

from __future__ import annotations

import json
import math

from .errors import ConfigError
from .solutions import EigenMode, SeparableSolution, SteadyProfile
from .solver import DEFAULT_CFL_FACTOR, Grid1D
from .strain import StrainModel

SCHEMA_VERSION = 1


def _check_keys(block, path, allowed, required):
    if not isinstance(block, dict):
        raise ConfigError(path, f"expected an object, got {type(block).__name__}")
    for key in block:
        if key not in allowed:
            raise ConfigError(f"{path}.{key}", "unknown key")
    for key in required:
        if key not in block:
            raise ConfigError(f"{path}.{key}", "missing required key")


def _require_object(block, path):
    if not isinstance(block, dict):
        raise ConfigError(path, f"expected an object, got {type(block).__name__}")


def _number(block, path, key, default=None, positive=False, nonnegative=False):
    _require_object(block, path)
    if key not in block:
        if default is None:
            raise ConfigError(f"{path}.{key}", "missing required key")
        return default
    v = block[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{path}.{key}", f"expected a number, got {type(v).__name__}")
    v = float(v)
    if not math.isfinite(v):
        raise ConfigError(f"{path}.{key}", "must be finite")
    if positive and not v > 0:
        raise ConfigError(f"{path}.{key}", f"must be > 0, got {v}")
    if nonnegative and v < 0:
        raise ConfigError(f"{path}.{key}", f"must be >= 0, got {v}")
    return v


def _integer(block, path, key, default=None, minimum=None):
    _require_object(block, path)
    if key not in block:
        if default is None:
            raise ConfigError(f"{path}.{key}", "missing required key")
        return default
    v = block[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{path}.{key}", f"expected an integer, got {type(v).__name__}")
    if minimum is not None and v < minimum:
        raise ConfigError(f"{path}.{key}", f"must be >= {minimum}, got {v}")
    return v


def _string(block, path, key, choices=None, default=None):
    _require_object(block, path)
    if key not in block:
        if default is None:
            raise ConfigError(f"{path}.{key}", "missing required key")
        return default
    v = block[key]
    if not isinstance(v, str):
        raise ConfigError(f"{path}.{key}", f"expected a string, got {type(v).__name__}")
    if choices is not None and v not in choices:
        raise ConfigError(f"{path}.{key}", f"must be one of {sorted(choices)}, got {v!r}")
    return v


def parse_strain(block, path="strain") -> StrainModel:
    kind = _string(block, path, "kind", choices={"constant", "rational"})
    if kind == "constant":
        _check_keys(block, path, {"kind", "gamma0"}, {"kind", "gamma0"})
        return StrainModel.constant(_number(block, path, "gamma0", positive=True))
    _check_keys(block, path, {"kind", "c1", "c2"}, {"kind", "c1", "c2"})
    c1 = _number(block, path, "c1")
    c2 = _number(block, path, "c2")
    if not c2 < 0:
        raise ConfigError(f"{path}.c2", f"must be < 0 so gamma(0) > 0, got {c2}")
    return StrainModel.rational(c1, c2)


def parse_grid(block, path="grid") -> Grid1D:
    _check_keys(block, path, {"half_width", "num_points"}, {"half_width"})
    half_width = _number(block, path, "half_width", positive=True)
    num_points = _integer(block, path, "num_points", default=2001, minimum=3)
    if num_points % 2 == 0:
        raise ConfigError(f"{path}.num_points", f"must be odd, got {num_points}")
    return Grid1D(half_width, num_points)


def parse_solution(block, path="solution", allow_csv=False):
    """Returns a solution object, or ("csv", path-string) when allow_csv."""
    kind = _string(block, path, "type",
                   choices={"steady", "eigenmode", "superposition"} | ({"csv"} if allow_csv else set()))
    if kind == "steady":
        _check_keys(block, path, {"type", "alpha", "c_amp"}, {"type", "alpha"})
        return SteadyProfile(alpha=_number(block, path, "alpha", positive=True),
                             c_amp=_number(block, path, "c_amp", default=1.0))
    if kind == "eigenmode":
        _check_keys(block, path, {"type", "n", "alpha", "coeff"}, {"type", "n", "alpha"})
        mode = EigenMode(n=_integer(block, path, "n", minimum=0),
                         alpha=_number(block, path, "alpha", positive=True))
        coeff = _number(block, path, "coeff", default=1.0)
        return SeparableSolution([(coeff, mode)])
    if kind == "superposition":
        _check_keys(block, path, {"type", "alpha", "modes"}, {"type", "alpha", "modes"})
        alpha = _number(block, path, "alpha", positive=True)
        modes_block = block["modes"]
        if not isinstance(modes_block, list) or not modes_block:
            raise ConfigError(f"{path}.modes", "expected a nonempty array")
        pairs = []
        for i, mb in enumerate(modes_block):
            mp = f"{path}.modes[{i}]"
            _check_keys(mb, mp, {"n", "coeff"}, {"n", "coeff"})
            pairs.append((_number(mb, mp, "coeff"),
                          EigenMode(n=_integer(mb, mp, "n", minimum=0), alpha=alpha)))
        try:
            return SeparableSolution(pairs)
        except ValueError as exc:
            raise ConfigError(f"{path}.modes", str(exc)) from exc
    # csv initial data
    _check_keys(block, path, {"type", "path"}, {"type", "path"})
    return ("csv", _string(block, path, "path"))


def load_config(path) -> dict:
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(str(path), f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(str(path), f"invalid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("<root>", "top-level config must be an object")
    version = cfg.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ConfigError("schema_version", f"expected {SCHEMA_VERSION}, got {version!r}")
    return cfg


def parse_eval_config(cfg) -> dict:
    allowed = {"schema_version", "solution", "grid", "coords", "include_w", "strain", "nu", "t"}
    _check_keys(cfg, "<root>", allowed, {"schema_version", "solution", "grid"})
    solution = parse_solution(cfg["solution"])
    grid = parse_grid(cfg["grid"])
    coords = _string(cfg, "<root>", "coords", choices={"xi", "x"}, default="xi")
    include_w = cfg.get("include_w", False)
    if not isinstance(include_w, bool):
        raise ConfigError("include_w", "expected a boolean")
    strain = parse_strain(cfg["strain"]) if "strain" in cfg else StrainModel.constant(1.0)
    nu = _number(cfg, "<root>", "nu", default=1.0, positive=True)
    t = _number(cfg, "<root>", "t", default=0.0, nonnegative=True)
    if t >= strain.horizon():
        raise ConfigError("t", f"outside the strain model horizon {strain.horizon()}")
    if include_w and not isinstance(solution, SteadyProfile):
        raise ConfigError("include_w", "the w column is defined for steady solutions only")
    return {"solution": solution, "grid": grid, "coords": coords,
            "include_w": include_w, "strain": strain, "nu": nu, "t": t}


def parse_evolve_config(cfg) -> dict:
    allowed = {"schema_version", "equation", "alpha", "strain", "nu",
               "initial", "grid", "time", "snapshot_times"}
    _check_keys(cfg, "<root>", allowed, {"schema_version", "equation", "initial", "grid", "time"})
    equation = _string(cfg, "<root>", "equation", choices={"similarity", "physical"})
    grid = parse_grid(cfg["grid"])
    initial = parse_solution(cfg["initial"], path="initial", allow_csv=True)

    tb = cfg["time"]
    _check_keys(tb, "time", {"end", "scheme", "dt", "cfl_factor", "record_norms_every"}, {"end"})
    t_end = _number(tb, "time", "end", nonnegative=True)
    scheme = _string(tb, "time", "scheme", choices={"rk4", "trapezoidal"}, default="rk4")
    dt = _number(tb, "time", "dt", default=0.0, positive=True) if "dt" in tb else None
    cfl = _number(tb, "time", "cfl_factor", positive=True) if "cfl_factor" in tb else None
    if dt is not None and cfl is not None:
        raise ConfigError("time", "give either dt or cfl_factor, not both")
    if dt is None and cfl is None:
        cfl = DEFAULT_CFL_FACTOR
    if cfl is not None and cfl > 1.0:
        raise ConfigError("time.cfl_factor", f"must be <= 1, got {cfl}")
    record_every = _integer(tb, "time", "record_norms_every", default=1, minimum=1)

    alpha = None
    strain = None
    nu = None
    if equation == "similarity":
        if "strain" in cfg or "nu" in cfg:
            raise ConfigError("strain", "similarity runs take alpha, not strain/nu")
        alpha = _number(cfg, "<root>", "alpha", positive=True)
    else:
        if "alpha" in cfg:
            raise ConfigError("alpha", "physical runs derive alpha from the strain model")
        if "strain" not in cfg:
            raise ConfigError("strain", "missing required key")
        strain = parse_strain(cfg["strain"])
        nu = _number(cfg, "<root>", "nu", positive=True)
        if t_end >= strain.horizon():
            raise ConfigError("time.end", f"outside the strain model horizon {strain.horizon()}")

    snaps = cfg.get("snapshot_times", [t_end])
    if not isinstance(snaps, list):
        raise ConfigError("snapshot_times", "expected an array of times")
    for i, s in enumerate(snaps):
        if isinstance(s, bool) or not isinstance(s, (int, float)):
            raise ConfigError(f"snapshot_times[{i}]", "expected a number")
        if s < 0 or s > t_end:
            raise ConfigError(f"snapshot_times[{i}]", f"must lie in [0, {t_end}]")

    return {"equation": equation, "alpha": alpha, "strain": strain, "nu": nu,
            "initial": initial, "grid": grid, "t_end": t_end, "scheme": scheme,
            "dt": dt, "cfl_factor": cfl, "record_norms_every": record_every,
            "snapshot_times": [float(s) for s in snaps]}


def parse_spectrum_config(cfg) -> dict:
    allowed = {"schema_version", "alpha", "grid", "k", "threshold"}
    _check_keys(cfg, "<root>", allowed, {"schema_version", "alpha", "k"})
    alpha = _number(cfg, "<root>", "alpha", positive=True)
    k = _integer(cfg, "<root>", "k", minimum=0)
    if k > 12:
        raise ConfigError("k", f"at most 12 eigenvalues supported, got {k}")
    grid = parse_grid(cfg["grid"]) if "grid" in cfg else Grid1D(10.0, 2001)
    if grid.h > 0.05:
        raise ConfigError("grid", f"spectrum grid must have h <= 0.05, got {grid.h:.4g}")
    threshold = _number(cfg, "<root>", "threshold", default=1e-3, positive=True)
    return {"alpha": alpha, "grid": grid, "k": k, "threshold": threshold}


def parse_crosscheck_config(cfg) -> dict:
    allowed = {"schema_version", "c1", "c2", "nu", "modes", "t_end", "num_points", "dt"}
    _check_keys(cfg, "<root>", allowed, {"schema_version", "c1", "c2", "t_end"})
    c1 = _number(cfg, "<root>", "c1")
    c2 = _number(cfg, "<root>", "c2")
    if not c2 < 0:
        raise ConfigError("c2", f"must be < 0 so gamma(0) > 0, got {c2}")
    nu = _number(cfg, "<root>", "nu", default=1.0, positive=True)
    t_end = _number(cfg, "<root>", "t_end", positive=True)
    strain = StrainModel.rational(c1, c2)
    if t_end >= strain.horizon():
        raise ConfigError("t_end", f"outside the strain model horizon {strain.horizon()}")
    modes = cfg.get("modes", [0, 1])
    if not isinstance(modes, list) or not modes:
        raise ConfigError("modes", "expected a nonempty array of mode indices")
    for i, m in enumerate(modes):
        if isinstance(m, bool) or not isinstance(m, int) or m < 0:
            raise ConfigError(f"modes[{i}]", "expected a nonnegative integer")
    num_points = _integer(cfg, "<root>", "num_points", default=2001, minimum=3)
    if num_points % 2 == 0:
        raise ConfigError("num_points", f"must be odd, got {num_points}")
    dt = _number(cfg, "<root>", "dt", default=5e-4, positive=True)
    return {"c1": c1, "c2": c2, "nu": nu, "modes": modes, "t_end": t_end,
            "num_points": num_points, "dt": dt}

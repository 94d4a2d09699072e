"""Run configuration: a small strict key=value format (INI sections).

A config file fully describes a study: the model ([model]), the
replication run ([run]), the intensity sweep used by validation and
analytic tables ([sweep]), and reporting knobs ([histogram], [report]).
Unknown sections or keys are rejected rather than ignored so that typos
cannot silently change a study.  write_config emits a file that parses
back to an identical configuration (floats are written in shortest
round-trip form).
"""
from __future__ import annotations

import configparser
import math
import os
from dataclasses import dataclass, replace
from typing import IO

from .sampling import ModelSpec

__all__ = ["ConfigError", "RunConfig", "parse_config", "write_config"]


class ConfigError(ValueError):
    """A configuration file is malformed or inconsistent."""


_SCHEMA: dict[str, dict[str, bool]] = {
    # section -> {key: required}
    "model": {
        "a": True,
        "b": True,
        "gamma": True,
        "orientation": True,
        "boundary": True,
        "L": True,
        "margin": False,
    },
    "run": {
        "replications": True,
        "master_seed": True,
        "bootstrap": False,
        "bootstrap_seed": False,
    },
    "sweep": {"gammas": False},
    "histogram": {"bins": False, "lo": False, "hi": False},
    "report": {"z_threshold": False},
}


@dataclass(frozen=True)
class RunConfig:
    """Parsed and validated configuration."""

    a: float
    b: float
    gamma: float
    orientation: str
    boundary: str
    L: float
    margin: float | None
    replications: int
    master_seed: int
    bootstrap: int
    bootstrap_seed: int
    gammas: tuple[float, ...]
    bins: int
    lo: float
    hi: float
    z_threshold: float

    def spec(
        self,
        gamma: float | None = None,
        master_seed: int | None = None,
        replications: int | None = None,
    ) -> ModelSpec:
        """The ModelSpec this configuration describes, optionally with the
        intensity, seed or replication count overridden."""
        return ModelSpec(
            a=self.a,
            b=self.b,
            gamma=self.gamma if gamma is None else float(gamma),
            orientation=self.orientation,
            boundary=self.boundary,
            L=self.L,
            replications=self.replications if replications is None else int(replications),
            master_seed=self.master_seed if master_seed is None else int(master_seed),
            margin=self.margin,
        )

    def with_seed(self, master_seed: int) -> "RunConfig":
        return replace(self, master_seed=int(master_seed))


def _get_float(section: str, key: str, raw: str) -> float:
    try:
        v = float(raw)
    except ValueError as exc:
        raise ConfigError(f"[{section}] {key} = {raw!r} is not a number") from exc
    if not math.isfinite(v):
        raise ConfigError(f"[{section}] {key} must be finite")
    return v


def _get_int(section: str, key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"[{section}] {key} = {raw!r} is not an integer") from exc


def parse_config(source: str | os.PathLike | IO[str]) -> RunConfig:
    """Parse a configuration from a path or an open text stream."""
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str  # keys are case-sensitive
    try:
        if hasattr(source, "read"):
            cp.read_file(source)
        else:
            with open(source, "r", encoding="utf-8") as f:
                cp.read_file(f)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from exc

    for section in cp.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        for key in cp[section]:
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")
    for section, keys in _SCHEMA.items():
        required = [k for k, req in keys.items() if req]
        if required and section not in cp:
            raise ConfigError(f"missing section [{section}]")
        for k in required:
            if k not in cp[section]:
                raise ConfigError(f"missing key {k!r} in section [{section}]")

    model = cp["model"]
    runsec = cp["run"]
    gamma = _get_float("model", "gamma", model["gamma"])
    margin = None
    if "margin" in model and model["margin"].strip():
        margin = _get_float("model", "margin", model["margin"])

    if "sweep" in cp and "gammas" in cp["sweep"]:
        raw = cp["sweep"]["gammas"].replace(",", " ").split()
        gammas = tuple(_get_float("sweep", "gammas", tok) for tok in raw)
    else:
        gammas = (gamma,)

    hist = cp["histogram"] if "histogram" in cp else {}
    report = cp["report"] if "report" in cp else {}

    cfg = RunConfig(
        a=_get_float("model", "a", model["a"]),
        b=_get_float("model", "b", model["b"]),
        gamma=gamma,
        orientation=model["orientation"].strip(),
        boundary=model["boundary"].strip(),
        L=_get_float("model", "L", model["L"]),
        margin=margin,
        replications=_get_int("run", "replications", runsec["replications"]),
        master_seed=_get_int("run", "master_seed", runsec["master_seed"]),
        bootstrap=_get_int("run", "bootstrap", runsec.get("bootstrap", "1000")),
        bootstrap_seed=_get_int("run", "bootstrap_seed", runsec.get("bootstrap_seed", "0")),
        gammas=gammas,
        bins=_get_int("histogram", "bins", hist.get("bins", "40")),
        lo=_get_float("histogram", "lo", hist.get("lo", "-5.0")),
        hi=_get_float("histogram", "hi", hist.get("hi", "5.0")),
        z_threshold=_get_float("report", "z_threshold", report.get("z_threshold", "4.0")),
    )
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    if cfg.orientation not in ("aligned", "isotropic"):
        raise ConfigError(
            f"orientation must be 'aligned' or 'isotropic', got {cfg.orientation!r}"
        )
    if cfg.boundary not in ("torus", "minus"):
        raise ConfigError(f"boundary must be 'torus' or 'minus', got {cfg.boundary!r}")
    for name in ("a", "b", "gamma", "L"):
        if getattr(cfg, name) <= 0.0:
            raise ConfigError(f"{name} must be positive")
    if cfg.replications < 0:
        raise ConfigError("replications must be non-negative")
    if not 0 <= cfg.master_seed < 2**64:
        raise ConfigError("master_seed must be a 64-bit unsigned integer")
    if cfg.bootstrap < 2:
        raise ConfigError("bootstrap must be at least 2")
    if cfg.bins < 1:
        raise ConfigError("bins must be positive")
    if not cfg.hi > cfg.lo:
        raise ConfigError("histogram range needs hi > lo")
    if not cfg.z_threshold > 0.0:
        raise ConfigError("z_threshold must be positive")
    for g in cfg.gammas:
        if g <= 0.0:
            raise ConfigError("sweep gammas must be positive")


def write_config(cfg: RunConfig, path: str | os.PathLike) -> None:
    """Write a configuration file that parses back equal to ``cfg``."""
    lines = ["[model]"]
    lines.append(f"a = {cfg.a!r}")
    lines.append(f"b = {cfg.b!r}")
    lines.append(f"gamma = {cfg.gamma!r}")
    lines.append(f"orientation = {cfg.orientation}")
    lines.append(f"boundary = {cfg.boundary}")
    lines.append(f"L = {cfg.L!r}")
    if cfg.margin is not None:
        lines.append(f"margin = {cfg.margin!r}")
    lines += [
        "",
        "[run]",
        f"replications = {cfg.replications}",
        f"master_seed = {cfg.master_seed}",
        f"bootstrap = {cfg.bootstrap}",
        f"bootstrap_seed = {cfg.bootstrap_seed}",
        "",
        "[sweep]",
        "gammas = " + " ".join(repr(g) for g in cfg.gammas),
        "",
        "[histogram]",
        f"bins = {cfg.bins}",
        f"lo = {cfg.lo!r}",
        f"hi = {cfg.hi!r}",
        "",
        "[report]",
        f"z_threshold = {cfg.z_threshold!r}",
        "",
    ]
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(lines))

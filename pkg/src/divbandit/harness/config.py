"""Experiment configuration, read from and written to JSON.

A configuration document mirrors :class:`ExperimentConfig`::

    {
      "arm": {"joint_count": 20, "segment_length": 0.05, "joint_limit": 150},
      "strategies": [
        {"kind": "rmb", "name": "RMB"},
        {"kind": "rgb", "name": "RGB", "d": 0.05, "goal_bounds": [[-1, 1], [-1, 1]]}
      ],
      "selector": {"kind": "adapt", "alpha": 0.1, "window": 20, "fictitious_count": 1},
      "n_steps": 5000,
      "eval_tau": 0.02,
      "repetitions": 25,
      "master_seed": 0
    }

Other selectors are ``{"kind": "pure", "strategy": 0}`` and
``{"kind": "mixture", "p": 0.3}``. Optional keys: ``cell_size``,
``coverage_bounds``, ``p_grid``, ``d_values``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any

from ..adapt import AdaptConfig
from ..coverage import CoverageConfig
from ..environment import ArmSpec, MotorSpace
from ..errors import ConfigurationError
from ..strategies import GoalBabbling, MotorBabbling, RgbConfig

DEFAULT_P_GRID = tuple(round(0.1 * i, 1) for i in range(11))
ARM_D_VALUES = (0.001, 0.05, 0.5)


@dataclass(frozen=True)
class StrategySpec:
    kind: str  # "rmb" or "rgb"
    name: str = ""
    d: float | None = None
    goal_bounds: tuple[tuple[float, float], ...] = ((-1.0, 1.0), (-1.0, 1.0))

    def __post_init__(self):
        if self.kind not in ("rmb", "rgb"):
            raise ConfigurationError(f"unknown strategy kind {self.kind!r}")
        if not self.name:
            object.__setattr__(self, "name", self.kind.upper())
        if self.kind == "rgb":
            if self.d is None:
                raise ConfigurationError("rgb strategy needs a perturbation ratio d")
            RgbConfig(self.d, self.goal_bounds)  # validates
        object.__setattr__(self, "goal_bounds",
                           tuple((float(a), float(b)) for a, b in self.goal_bounds))

    def build(self, space: MotorSpace):
        if self.kind == "rmb":
            return MotorBabbling(space, self.name)
        return GoalBabbling(space, RgbConfig(self.d, self.goal_bounds), self.name)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind, "name": self.name}
        if self.kind == "rgb":
            out["d"] = self.d
            out["goal_bounds"] = [list(b) for b in self.goal_bounds]
        return out


@dataclass(frozen=True)
class SelectorSpec:
    kind: str = "adapt"  # "adapt", "pure" or "mixture"
    alpha: float = 0.1
    window: int = 20
    fictitious_count: int = 1
    tau: float | None = None  # diversity radius for adapt; defaults to eval_tau
    strategy: int | None = None
    p: float | None = None

    def __post_init__(self):
        if self.kind == "adapt":
            if not self.alpha > 0:
                raise ConfigurationError("ADAPT needs alpha > 0 so every strategy keeps being tried")
            AdaptConfig(self.alpha, self.window, self.fictitious_count, self.tau or 1.0)
        elif self.kind == "pure":
            if self.strategy is None or self.strategy < 0:
                raise ConfigurationError("pure selector needs a strategy index")
        elif self.kind == "mixture":
            if self.p is None or not 0 <= self.p <= 1:
                raise ConfigurationError(f"mixture p must lie in [0, 1], got {self.p}")
        else:
            raise ConfigurationError(f"unknown selector kind {self.kind!r}")

    @property
    def label(self) -> str:
        if self.kind == "pure":
            return f"pure{self.strategy}"
        return self.kind

    def to_dict(self) -> dict:
        if self.kind == "pure":
            return {"kind": "pure", "strategy": self.strategy}
        if self.kind == "mixture":
            return {"kind": "mixture", "p": self.p}
        out = {"kind": "adapt", "alpha": self.alpha, "window": self.window,
               "fictitious_count": self.fictitious_count}
        if self.tau is not None:
            out["tau"] = self.tau
        return out


def _default_strategies():
    return (StrategySpec("rmb", "RMB"), StrategySpec("rgb", "RGB", d=0.05))


@dataclass(frozen=True)
class ExperimentConfig:
    arm: ArmSpec = field(default_factory=ArmSpec)
    strategies: tuple[StrategySpec, ...] = field(default_factory=_default_strategies)
    selector: SelectorSpec = field(default_factory=SelectorSpec)
    n_steps: int = 5000
    eval_tau: float = 0.02
    repetitions: int = 25
    master_seed: int = 0
    cell_size: float | None = None
    coverage_bounds: tuple[tuple[float, float], ...] | None = None
    p_grid: tuple[float, ...] = DEFAULT_P_GRID
    d_values: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.n_steps < 1:
            raise ConfigurationError("n_steps must be >= 1")
        if self.repetitions < 1:
            raise ConfigurationError("repetitions must be >= 1")
        if not self.strategies:
            raise ConfigurationError("at least one strategy is required")
        if not 0 <= self.master_seed < 2**64:
            raise ConfigurationError("master_seed must be an unsigned 64-bit integer")
        if not self.eval_tau > 0:
            raise ConfigurationError("eval_tau must be positive")
        if any(not 0 <= p <= 1 for p in self.p_grid):
            raise ConfigurationError("p_grid values must lie in [0, 1]")
        sel = self.selector
        if sel.kind == "pure" and sel.strategy >= len(self.strategies):
            raise ConfigurationError(f"pure selector index {sel.strategy} out of range")
        if sel.kind == "mixture":
            self.mixture_indices()
        self.coverage_config(self.eval_tau)

    # -- derived objects -------------------------------------------------

    @property
    def diversity_tau(self) -> float:
        return self.selector.tau or self.eval_tau

    def adapt_config(self) -> AdaptConfig:
        s = self.selector
        if s.kind == "adapt":
            return AdaptConfig(s.alpha, s.window, s.fictitious_count, self.diversity_tau)
        return AdaptConfig(tau=self.diversity_tau)

    def coverage_config(self, tau: float) -> CoverageConfig:
        if self.coverage_bounds is not None:
            bounds = self.coverage_bounds
        else:
            r = self.arm.reach + 2.5 * max(self.eval_tau, self.diversity_tau)
            bounds = ((-r, r), (-r, r))
        return CoverageConfig(tau, bounds, None if self.cell_size is None else self.cell_size)

    def build_strategies(self, space: MotorSpace):
        return [s.build(space) for s in self.strategies]

    def mixture_indices(self) -> tuple[int, int]:
        """Indices of the first motor-babbling and first goal-babbling strategies."""
        kinds = [s.kind for s in self.strategies]
        if "rmb" not in kinds or "rgb" not in kinds:
            raise ConfigurationError("mixture selector needs one rmb and one rgb strategy")
        return kinds.index("rmb"), kinds.index("rgb")

    @property
    def rgb_d(self) -> float | None:
        for s in self.strategies:
            if s.kind == "rgb":
                return s.d
        return None

    def with_d(self, d: float) -> "ExperimentConfig":
        """Copy with every goal-babbling strategy using perturbation ratio ``d``."""
        strategies = tuple(replace(s, d=d) if s.kind == "rgb" else s for s in self.strategies)
        return replace(self, strategies=strategies)

    def with_selector(self, selector: SelectorSpec) -> "ExperimentConfig":
        return replace(self, selector=selector)

    # -- (de)serialisation -----------------------------------------------

    def to_dict(self) -> dict:
        out = {
            "arm": asdict(self.arm),
            "strategies": [s.to_dict() for s in self.strategies],
            "selector": self.selector.to_dict(),
            "n_steps": self.n_steps,
            "eval_tau": self.eval_tau,
            "repetitions": self.repetitions,
            "master_seed": self.master_seed,
            "p_grid": list(self.p_grid),
        }
        if self.cell_size is not None:
            out["cell_size"] = self.cell_size
        if self.coverage_bounds is not None:
            out["coverage_bounds"] = [list(b) for b in self.coverage_bounds]
        if self.d_values is not None:
            out["d_values"] = list(self.d_values)
        return out

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        known = {"arm", "strategies", "selector", "n_steps", "eval_tau", "repetitions",
                 "master_seed", "cell_size", "coverage_bounds", "p_grid", "d_values"}
        unknown = set(doc) - known
        if unknown:
            raise ConfigurationError(f"unknown configuration keys: {sorted(unknown)}")
        kw: dict[str, Any] = {}
        try:
            if "arm" in doc:
                kw["arm"] = ArmSpec(**doc["arm"])
            if "strategies" in doc:
                kw["strategies"] = tuple(
                    StrategySpec(**{**s, **({"goal_bounds": tuple(map(tuple, s["goal_bounds"]))}
                                            if "goal_bounds" in s else {})})
                    for s in doc["strategies"])
            if "selector" in doc:
                kw["selector"] = SelectorSpec(**doc["selector"])
        except TypeError as exc:
            raise ConfigurationError(str(exc)) from None
        for key in ("n_steps", "repetitions", "master_seed"):
            if key in doc:
                kw[key] = int(doc[key])
        for key in ("eval_tau", "cell_size"):
            if doc.get(key) is not None:
                kw[key] = float(doc[key])
        if doc.get("coverage_bounds") is not None:
            kw["coverage_bounds"] = tuple(tuple(map(float, b)) for b in doc["coverage_bounds"])
        if "p_grid" in doc:
            kw["p_grid"] = tuple(float(p) for p in doc["p_grid"])
        if doc.get("d_values") is not None:
            kw["d_values"] = tuple(float(d) for d in doc["d_values"])
        return cls(**kw)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def load_config(path: str | Path) -> ExperimentConfig:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise ConfigurationError(f"{path}: expected a JSON object")
    return ExperimentConfig.from_dict(doc)


def arm_config(d: float = 0.05, **overrides) -> ExperimentConfig:
    """The planar-arm experiment: 20 joints, +-150 deg, 5000 steps, tau = 0.02, 25 repetitions."""
    return replace(ExperimentConfig(d_values=ARM_D_VALUES), **overrides).with_d(d)

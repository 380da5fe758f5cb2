"""Exploration strategies and the observation store they share.

Two strategies are provided. Motor babbling draws commands uniformly from
the motor space. Goal babbling draws a goal uniformly in a goal box, looks up
the observation whose effect is nearest to it and returns a perturbed copy of
that observation's command.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

import numpy as np

from .environment import MotorSpace, sample_uniform_command
from .errors import ConfigurationError, EmptyStoreError
from .kdtree import KDTree


@dataclass(frozen=True)
class Observation:
    command: np.ndarray
    effect: tuple[float, ...]


class ObservationStore:
    """Append-only record of (command, effect) pairs with a nearest-effect index."""

    def __init__(self, sensory_dim: int = 2):
        self.sensory_dim = sensory_dim
        self.records: list[Observation] = []
        self._index = KDTree(sensory_dim)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def append(self, command, effect) -> Observation:
        obs = Observation(np.array(command, dtype=float), tuple(float(v) for v in effect))
        self._index.insert(obs.effect)
        self.records.append(obs)
        return obs

    def nearest(self, goal) -> Observation:
        if not self.records:
            raise EmptyStoreError("no observations to search")
        index, _ = self._index.nearest(goal)
        return self.records[index]

    def effects(self) -> np.ndarray:
        return np.array([o.effect for o in self.records]).reshape(-1, self.sensory_dim)


def nearest_observation(store: ObservationStore, goal) -> Observation:
    return store.nearest(goal)


def perturb(x, d: float, space: MotorSpace, rng: np.random.Generator) -> np.ndarray:
    """Redraw each coordinate uniformly within ``d`` times its range of ``x``, clipped to the space."""
    x = np.asarray(x, dtype=float)
    span = d * (space.high - space.low)
    lo = np.maximum(space.low, x - span)
    hi = np.minimum(x + span, space.high)
    out = rng.uniform(lo, hi)
    # lo + (hi - lo) * u may round past hi
    return np.minimum(np.maximum(out, lo), hi)


def rmb_propose(space: MotorSpace, rng: np.random.Generator) -> np.ndarray:
    return sample_uniform_command(space, rng)


@dataclass(frozen=True)
class RgbConfig:
    d: float
    goal_bounds: tuple[tuple[float, float], ...] = ((-1.0, 1.0), (-1.0, 1.0))

    def __post_init__(self):
        if not 0 <= self.d <= 1:
            raise ConfigurationError(f"perturbation ratio d must lie in [0, 1], got {self.d}")
        gb = tuple((float(a), float(b)) for a, b in self.goal_bounds)
        if not gb or any(not a < b for a, b in gb):
            raise ConfigurationError(f"degenerate goal bounds {self.goal_bounds!r}")
        object.__setattr__(self, "goal_bounds", gb)


def rgb_propose(store: ObservationStore, cfg: RgbConfig, space: MotorSpace,
                rng: np.random.Generator) -> np.ndarray:
    if not len(store):
        # nothing to invert yet: fall back to a motor sample
        return sample_uniform_command(space, rng)
    lo, hi = np.array(cfg.goal_bounds).T
    goal = rng.uniform(lo, hi)
    return perturb(store.nearest(goal).command, cfg.d, space, rng)


class Strategy(Protocol):
    name: str

    def propose(self, store: ObservationStore, rng: np.random.Generator) -> np.ndarray: ...


class MotorBabbling:
    kind = "rmb"

    def __init__(self, space: MotorSpace, name: str = "RMB"):
        self.space = space
        self.name = name

    def propose(self, store, rng):
        return rmb_propose(self.space, rng)

    def __repr__(self):
        return f"MotorBabbling(name={self.name!r})"


class GoalBabbling:
    kind = "rgb"

    def __init__(self, space: MotorSpace, cfg: RgbConfig, name: str = "RGB"):
        self.space = space
        self.cfg = cfg
        self.name = name

    def propose(self, store, rng):
        return rgb_propose(store, self.cfg, self.space, rng)

    def __repr__(self):
        return f"GoalBabbling(name={self.name!r}, d={self.cfg.d})"


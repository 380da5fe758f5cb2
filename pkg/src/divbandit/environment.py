"""Environments map motor commands to effects; the planar arm is the reference one.

Angles are in degrees at the interface. Joint angles are relative: each
joint rotates its segment with respect to the previous one, the base sits at
the origin and the zero posture points along +x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np

from .errors import ConfigurationError, DomainError


@dataclass(frozen=True)
class MotorSpace:
    """Closed hyperrectangle of motor commands, one ``(a, b)`` interval per joint."""

    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        ivs = tuple((float(a), float(b)) for a, b in self.intervals)
        if not ivs:
            raise ConfigurationError("motor space needs at least one dimension")
        for a, b in ivs:
            if not a <= b:
                raise ConfigurationError(f"bad interval [{a}, {b}]")
        object.__setattr__(self, "intervals", ivs)
        object.__setattr__(self, "low", np.array([a for a, _ in ivs]))
        object.__setattr__(self, "high", np.array([b for _, b in ivs]))

    @classmethod
    def symmetric(cls, dim: int, limit: float) -> "MotorSpace":
        return cls(((-limit, limit),) * dim)

    @property
    def dim(self) -> int:
        return len(self.intervals)

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return x.shape == (self.dim,) and bool(np.all((self.low <= x) & (x <= self.high)))

    def check(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise DomainError(f"command has shape {x.shape}, expected ({self.dim},)")
        if not np.all((self.low <= x) & (x <= self.high)):
            raise DomainError("command outside motor space")
        return x


class Environment(Protocol):
    motor_space: MotorSpace
    sensory_dim: int

    def evaluate(self, x) -> np.ndarray: ...


@dataclass(frozen=True)
class ArmSpec:
    joint_count: int = 20
    segment_length: float = 0.05
    joint_limit: float = 150.0

    def __post_init__(self):
        if self.joint_count < 1:
            raise ConfigurationError("joint_count must be >= 1")
        if not self.segment_length > 0:
            raise ConfigurationError("segment_length must be positive")
        if not 0 < self.joint_limit <= 180:
            raise ConfigurationError("joint_limit must lie in (0, 180]")

    @property
    def motor_space(self) -> MotorSpace:
        return MotorSpace.symmetric(self.joint_count, self.joint_limit)

    @property
    def reach(self) -> float:
        return self.joint_count * self.segment_length


def forward_kinematics(arm: ArmSpec, x) -> np.ndarray:
    """End-effector position of ``arm`` in posture ``x`` (degrees)."""
    x = np.asarray(x, dtype=float)
    if x.shape != (arm.joint_count,):
        raise DomainError(f"command has shape {x.shape}, expected ({arm.joint_count},)")
    if not (x.min() >= -arm.joint_limit and x.max() <= arm.joint_limit):  # NaN fails too
        raise DomainError("joint angle outside [-joint_limit, joint_limit]")
    cum = np.cumsum(np.radians(x))
    return arm.segment_length * np.array([np.cos(cum).sum(), np.sin(cum).sum()])


def sample_uniform_command(space: MotorSpace, rng: np.random.Generator) -> np.ndarray:
    """Each coordinate independently uniform on its interval."""
    return rng.uniform(space.low, space.high)


class PlanarArm:
    """Stateless environment wrapping :func:`forward_kinematics`."""

    sensory_dim = 2

    def __init__(self, spec: ArmSpec | None = None):
        self.spec = spec or ArmSpec()
        self.motor_space = self.spec.motor_space

    def evaluate(self, x) -> np.ndarray:
        return forward_kinematics(self.spec, x)

    def __repr__(self):
        return f"PlanarArm({self.spec!r})"


def joint_positions(arm: ArmSpec, x: Sequence[float]) -> list[tuple[float, float]]:
    """Positions of every joint plus the end effector, base first; for plotting postures."""
    pts = [(0.0, 0.0)]
    angle = 0.0
    px = py = 0.0
    for theta in x:
        angle += math.radians(theta)
        px += arm.segment_length * math.cos(angle)
        py += arm.segment_length * math.sin(angle)
        pts.append((px, py))
    return pts

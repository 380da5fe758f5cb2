"""Coverage of a set of effects: area of the union of radius-tau balls.

The union is rasterised on a regular occupancy grid. A cell counts as
covered when its centre lies within ``tau`` of some effect, so the covered
set after a sequence of insertions does not depend on their order. Adding an
effect returns the area of the cells it newly covers, which is the
diversity of that effect relative to everything added before it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import ConfigurationError, OutOfBoundsError

Bounds = Sequence[Sequence[float]]

#: Reachable disk of the default arm (radius 1 m) inflated by 2.5 * tau.
ARM_BOUNDS = ((-1.05, 1.05), (-1.05, 1.05))


def ball_volume(tau: float, dim: int) -> float:
    """Lebesgue measure of a ``dim``-dimensional ball of radius ``tau``."""
    return math.pi ** (dim / 2) / math.gamma(dim / 2 + 1) * tau**dim


def _check_bounds(bounds: Bounds) -> tuple[tuple[float, float], ...]:
    out = []
    for axis in bounds:
        lo, hi = (float(v) for v in axis)
        if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
            raise ConfigurationError(f"degenerate bounds axis {axis!r}")
        out.append((lo, hi))
    if not out:
        raise ConfigurationError("bounds must have at least one axis")
    return tuple(out)


@dataclass(frozen=True)
class CoverageConfig:
    tau: float
    bounds: Bounds = ARM_BOUNDS
    cell_size: float | None = None  # defaults to tau / 10

    def __post_init__(self):
        if not self.tau > 0:
            raise ConfigurationError(f"tau must be positive, got {self.tau}")
        if self.cell_size is None:
            object.__setattr__(self, "cell_size", self.tau / 10)
        if not self.cell_size > 0:
            raise ConfigurationError(f"cell_size must be positive, got {self.cell_size}")
        if self.cell_size > self.tau:
            raise ConfigurationError(
                f"cell_size ({self.cell_size}) must not exceed tau ({self.tau})")
        object.__setattr__(self, "bounds", _check_bounds(self.bounds))

    @property
    def dim(self) -> int:
        return len(self.bounds)


@dataclass
class CoverageGrid:
    """Occupancy bitmap over ``config.bounds``; bits only ever flip 0 -> 1."""

    config: CoverageConfig
    occupancy: np.ndarray = field(init=False, repr=False)
    covered_cells: int = field(init=False, default=0)

    def __post_init__(self):
        h = self.config.cell_size
        self._lo = tuple(lo for lo, _ in self.config.bounds)
        # tolerance keeps e.g. 1.0 / 0.05 from rounding up to 21 cells
        shape = tuple(int(math.ceil((hi - lo) / h - 1e-9)) for lo, hi in self.config.bounds)
        self.occupancy = np.zeros(shape, dtype=bool)
        self.cell_area = h**self.config.dim
        self._centres = [lo + (np.arange(n) + 0.5) * h for (lo, _), n in zip(self.config.bounds, shape)]

    @property
    def shape(self) -> tuple[int, ...]:
        return self.occupancy.shape

    def ball_mask(self, y) -> tuple[tuple[slice, ...], np.ndarray]:
        """Cells whose centre lies within tau of ``y``, as (window, mask)."""
        cfg = self.config
        h, tau = cfg.cell_size, cfg.tau
        window = []
        sq = None
        for c, lo, centres in zip(y, self._lo, self._centres):
            i0 = max(int(math.ceil((c - tau - lo) / h - 0.5)), 0)
            i1 = min(int(math.floor((c + tau - lo) / h - 0.5)), len(centres) - 1)
            if i1 < i0:
                return (), np.zeros(0, dtype=bool)
            window.append(slice(i0, i1 + 1))
            d2 = (centres[i0:i1 + 1] - c) ** 2
            if sq is None:
                sq = d2
            else:
                sq = sq[..., None] + d2
        return tuple(window), sq <= tau * tau

    def add_effect(self, y) -> float:
        """Insert effect ``y``; return the area it newly covers."""
        y = tuple(float(v) for v in y)
        if len(y) != self.config.dim:
            raise OutOfBoundsError(f"effect has dimension {len(y)}, grid has {self.config.dim}")
        for c, (lo, hi) in zip(y, self.config.bounds):
            if not lo <= c <= hi:  # also rejects NaN
                raise OutOfBoundsError(f"effect {y} outside bounds {self.config.bounds}")
        window, mask = self.ball_mask(y)
        if not mask.size:
            return 0.0
        sub = self.occupancy[window]
        new = int(np.count_nonzero(mask & ~sub))
        if new:
            sub |= mask
            self.covered_cells += new
        return new * self.cell_area

    def total_coverage(self) -> float:
        return self.covered_cells * self.cell_area


def new_grid(config: CoverageConfig) -> CoverageGrid:
    return CoverageGrid(config)


def add_effect(grid: CoverageGrid, y) -> float:
    return grid.add_effect(y)


def total_coverage(grid: CoverageGrid) -> float:
    return grid.total_coverage()


def mc_coverage_oracle(points, tau: float, bounds: Bounds, n_samples: int,
                       seed: int, chunk: int = 1 << 18) -> tuple[float, float]:
    """Monte-Carlo estimate of the union-of-balls area inside ``bounds``.

    Returns ``(estimate, stderr)`` where the estimate is the fraction of
    uniform samples lying within ``tau`` of some point times the volume of
    ``bounds``.
    """
    if n_samples <= 0:
        raise ConfigurationError("n_samples must be positive")
    bounds = _check_bounds(bounds)
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        return 0.0, 0.0
    pts = pts.reshape(-1, len(bounds))
    lo = np.array([b[0] for b in bounds])
    hi = np.array([b[1] for b in bounds])
    volume = float(np.prod(hi - lo))
    tree = cKDTree(pts)
    rng = np.random.default_rng(seed)
    hits = 0
    remaining = n_samples
    while remaining:
        m = min(chunk, remaining)
        samples = rng.uniform(lo, hi, size=(m, len(bounds)))
        dist, _ = tree.query(samples, k=1, distance_upper_bound=tau * (1 + 1e-12))
        hits += int(np.count_nonzero(dist <= tau))
        remaining -= m
    p = hits / n_samples
    return volume * p, volume * math.sqrt(p * (1 - p) / n_samples)

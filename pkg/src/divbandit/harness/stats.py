"""Aggregated results of repeated episodes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

USAGE_WINDOW = 100


@dataclass(frozen=True)
class FinalRow:
    selector: str
    p: float | None
    d: float | None
    repetition: int
    final_coverage: float


@dataclass(frozen=True)
class SummaryRow:
    selector: str
    p: float | None
    d: float | None
    n: int
    mean: float
    std: float
    warning: str = ""


@dataclass
class Curves:
    """Per-step curves averaged over repetitions of one selector."""

    strategy_names: list[str]
    usage: np.ndarray  # (n_strategies, n_steps), smoothed selection fractions
    diversity: np.ndarray  # (n_strategies, n_steps)
    coverage: np.ndarray  # (n_steps,)
    spread: np.ndarray | None = None  # (n_steps, 3): y0, y1, strategy of the first repetition
    chosen: np.ndarray | None = None  # (n_runs, n_steps) raw strategy indices

    def raw_usage(self, start: int = 0, stop: int | None = None) -> np.ndarray:
        """Unsmoothed fraction of steps ``start:stop`` given to each strategy, over all runs."""
        window = self.chosen[:, start:stop]
        return np.array([np.mean(window == j) for j in range(len(self.strategy_names))])


@dataclass
class SummaryStats:
    rows: list[FinalRow] = field(default_factory=list)
    curves: dict[str, Curves] = field(default_factory=dict)

    def summary(self) -> list[SummaryRow]:
        return summarize(self.rows)

    def finals(self, selector: str, p: float | None = None, d: float | None = None) -> np.ndarray:
        return np.array([r.final_coverage for r in self.rows
                         if r.selector == selector and r.p == p and (d is None or r.d == d)])


def summarize(rows: list[FinalRow]) -> list[SummaryRow]:
    """Mean and sample std of final coverage per (selector, p, d), in first-seen order."""
    groups: dict[tuple, list[float]] = {}
    for r in rows:
        groups.setdefault((r.selector, r.p, r.d), []).append(r.final_coverage)
    out = []
    for (sel, p, d), values in groups.items():
        n = len(values)
        mean = math.fsum(values) / n
        if n < 2:
            out.append(SummaryRow(sel, p, d, n, mean, 0.0, "single repetition: std set to 0"))
        else:
            var = math.fsum((v - mean) ** 2 for v in values) / (n - 1)
            out.append(SummaryRow(sel, p, d, n, mean, math.sqrt(var)))
    return out


def smoothed_usage(chosen, n_strategies: int, window: int = USAGE_WINDOW) -> np.ndarray:
    """Fraction of steps that used each strategy in a centred window.

    ``chosen`` is one run ``(n_steps,)`` or a stack ``(n_runs, n_steps)``.
    The window covers ``window // 2`` steps before ``t`` and the rest after,
    truncated at both ends of the run.
    """
    chosen = np.atleast_2d(np.asarray(chosen))
    n_steps = chosen.shape[1]
    counts = np.stack([(chosen == j).sum(axis=0) for j in range(n_strategies)]).astype(float)
    csum = np.concatenate([np.zeros((n_strategies, 1)), np.cumsum(counts, axis=1)], axis=1)
    t = np.arange(n_steps)
    lo = np.maximum(t - window // 2, 0)
    hi = np.minimum(t + (window - window // 2), n_steps)
    total = (hi - lo) * chosen.shape[0]
    return (csum[:, hi] - csum[:, lo]) / total

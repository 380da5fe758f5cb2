"""Diversity-proportional strategy selection.

Each strategy keeps a short window of the diversities of the effects it
produced. An untried strategy is credited with ``fictitious_count`` entries
worth a full, non-overlapping ball, so every strategy is tried early and the
first one picked does not gain an unfair head start. At every step a
strategy is picked uniformly with probability ``alpha``, otherwise with
probability proportional to its windowed diversity.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .coverage import CoverageGrid, ball_volume
from .errors import ConfigurationError
from .strategies import ObservationStore


@dataclass(frozen=True)
class AdaptConfig:
    alpha: float = 0.1
    window: int = 20
    fictitious_count: int = 1
    tau: float = 0.02
    sensory_dim: int = 2

    def __post_init__(self):
        # alpha = 0 is plain proportional selection; experiment configs require alpha > 0
        if not 0 <= self.alpha <= 1:
            raise ConfigurationError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.window < 1:
            raise ConfigurationError("window must be >= 1")
        if self.fictitious_count < 1:
            raise ConfigurationError("fictitious_count must be >= 1")
        if not self.tau > 0:
            raise ConfigurationError("tau must be positive")

    @property
    def fictitious_value(self) -> float:
        return ball_volume(self.tau, self.sensory_dim)


@dataclass
class StrategyCredit:
    strategy_id: int
    window: int
    history: deque = field(init=False)
    count: int = 0  # real entries ever recorded

    def __post_init__(self):
        self.history = deque(maxlen=self.window)

    def record(self, diversity: float):
        if diversity < 0:
            raise ValueError("diversity must be nonnegative")
        self.history.append(diversity)
        self.count += 1


def new_credits(n_strategies: int, cfg: AdaptConfig) -> list[StrategyCredit]:
    return [StrategyCredit(j, cfg.window) for j in range(n_strategies)]


def strategy_diversity(credit: StrategyCredit, cfg: AdaptConfig) -> float:
    """Windowed mean diversity, padded with fictitious full-ball entries while the window is not full."""
    n = credit.count
    w = cfg.window
    if n >= w:
        return sum(credit.history) / w
    k = min(cfg.fictitious_count, w - n)
    return (k * cfg.fictitious_value + sum(credit.history)) / (k + n)


def selection_probabilities(diversities: Sequence[float], alpha: float) -> np.ndarray:
    div = np.asarray(diversities, dtype=float)
    q = len(div)
    if q == 0:
        raise ConfigurationError("no strategies to select from")
    total = div.sum()
    greedy = div / total if total > 0 else np.full(q, 1.0 / q)
    return alpha / q + (1 - alpha) * greedy


def select_strategy(credits: Sequence[StrategyCredit], cfg: AdaptConfig,
                    rng: np.random.Generator) -> tuple[int, bool]:
    """Return ``(index, was_random)``."""
    q = len(credits)
    if q == 0:
        raise ConfigurationError("no strategies to select from")
    if rng.random() < cfg.alpha:
        return int(rng.integers(q)), True
    weights = [strategy_diversity(c, cfg) for c in credits]
    total = sum(weights)
    if total <= 0:
        return int(rng.integers(q)), False
    target = rng.random() * total
    acc = 0.0
    for j, w in enumerate(weights):
        acc += w
        if target < acc:
            return j, False
    # target rounded onto the total: last strategy with positive weight
    return max(j for j, w in enumerate(weights) if w > 0), False


@dataclass
class StepLog:
    t: int
    chosen: int
    was_random: bool
    command: np.ndarray
    effect: tuple[float, ...]
    diversity: float
    cumulative_coverage: float
    per_strategy_diversity: tuple[float, ...]


def execute_step(t: int, chosen: int, was_random: bool, env, strategies, store: ObservationStore,
                 grid: CoverageGrid, credits: Sequence[StrategyCredit], cfg: AdaptConfig,
                 rng: np.random.Generator) -> StepLog:
    """Run strategy ``chosen`` once and book the result; shared by every selector."""
    before = tuple(strategy_diversity(c, cfg) for c in credits)
    x = strategies[chosen].propose(store, rng)
    y = env.evaluate(x)
    div = grid.add_effect(y)
    credits[chosen].record(div)
    store.append(x, y)
    return StepLog(t, chosen, was_random, x, tuple(float(v) for v in y), div,
                   grid.total_coverage(), before)


def adapt_step(env, strategies, store: ObservationStore, grid: CoverageGrid,
               credits: Sequence[StrategyCredit], cfg: AdaptConfig,
               rng: np.random.Generator, proposal_rng: np.random.Generator | None = None,
               t: int | None = None) -> StepLog:
    """One ADAPT iteration: select, propose, evaluate, score, record.

    ``proposal_rng`` feeds the strategies; it defaults to ``rng``. The step
    index defaults to the store size.
    """
    chosen, was_random = select_strategy(credits, cfg, rng)
    return execute_step(len(store) if t is None else t, chosen, was_random, env, strategies,
                        store, grid, credits, cfg,
                        rng if proposal_rng is None else proposal_rng)

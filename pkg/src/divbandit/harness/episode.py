"""Single exploration episodes and their seeding."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..adapt import StepLog, execute_step, new_credits, select_strategy
from ..coverage import CoverageGrid
from ..environment import PlanarArm
from ..strategies import ObservationStore
from .config import ExperimentConfig

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """SplitMix64 output function: one full-avalanche 64-bit mix."""
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix64(*words: int) -> int:
    """Fold integers into one 64-bit seed, mixing after every word."""
    h = 0
    for w in words:
        h = splitmix64(h ^ (int(w) & MASK64))
    return h


def episode_seed(master_seed: int, selector_index: int, repetition: int) -> int:
    return mix64(master_seed, selector_index, repetition)


def episode_streams(seed: int) -> tuple[np.random.Generator, np.random.Generator]:
    """Independent (selection, proposal) generators for one episode.

    Keeping selection draws off the proposal stream means two selectors that
    end up choosing the same strategies see the same proposals.
    """
    sel, prop = np.random.SeedSequence(seed).spawn(2)
    return np.random.default_rng(sel), np.random.default_rng(prop)


@dataclass
class RunRecord:
    config: ExperimentConfig
    seed: int
    steps: list[StepLog] = field(default_factory=list)
    final_coverage: float = 0.0  # at config.eval_tau

    @property
    def chosen(self) -> np.ndarray:
        return np.array([s.chosen for s in self.steps], dtype=np.int64)

    @property
    def effects(self) -> np.ndarray:
        return np.array([s.effect for s in self.steps])

    @property
    def diversity(self) -> np.ndarray:
        return np.array([s.diversity for s in self.steps])

    @property
    def coverage_curve(self) -> np.ndarray:
        return np.array([s.cumulative_coverage for s in self.steps])

    @property
    def strategy_diversity(self) -> np.ndarray:
        """(n_steps, n_strategies) windowed diversity seen before each selection."""
        return np.array([s.per_strategy_diversity for s in self.steps])

    @property
    def strategy_names(self) -> list[str]:
        return [s.name for s in self.config.strategies]


def run_episode(config: ExperimentConfig, seed: int) -> RunRecord:
    env = PlanarArm(config.arm)
    strategies = config.build_strategies(env.motor_space)
    sel_rng, prop_rng = episode_streams(seed)
    adapt_cfg = config.adapt_config()
    grid = CoverageGrid(config.coverage_config(adapt_cfg.tau))
    eval_grid = grid
    if config.eval_tau != adapt_cfg.tau:
        eval_grid = CoverageGrid(config.coverage_config(config.eval_tau))
    store = ObservationStore(env.sensory_dim)
    credits = new_credits(len(strategies), adapt_cfg)

    selector = config.selector
    if selector.kind == "mixture":
        rmb, rgb = config.mixture_indices()

    record = RunRecord(config, seed)
    for t in range(config.n_steps):
        was_random = False
        if selector.kind == "adapt":
            chosen, was_random = select_strategy(credits, adapt_cfg, sel_rng)
        elif selector.kind == "mixture":
            chosen = rmb if sel_rng.random() < selector.p else rgb
        else:
            chosen = selector.strategy
        log = execute_step(t, chosen, was_random, env, strategies, store, grid, credits,
                           adapt_cfg, prop_rng)
        if eval_grid is not grid:
            eval_grid.add_effect(log.effect)
        record.steps.append(log)
    record.final_coverage = eval_grid.total_coverage()
    return record

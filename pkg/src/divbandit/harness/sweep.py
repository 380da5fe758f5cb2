"""Repeated episodes: single-selector runs and fixed-mixture sweeps."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

import numpy as np

from .config import ExperimentConfig, SelectorSpec
from .episode import RunRecord, episode_seed, run_episode
from .stats import Curves, FinalRow, SummaryStats, smoothed_usage

log = logging.getLogger(__name__)


def _job(args):
    doc, seed, keep_trace = args
    record = run_episode(ExperimentConfig.from_dict(doc), seed)
    if not keep_trace:
        return record.final_coverage, None
    return record.final_coverage, _trace(record)


def _trace(record: RunRecord):
    return (record.chosen.astype(np.int8), record.strategy_diversity,
            record.coverage_curve, record.effects)


def _map(jobs: Sequence, workers: int) -> list:
    if workers <= 1:
        return [_job(j) for j in jobs]
    # map preserves submission order, so output never depends on scheduling
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_job, jobs))


def _curves(config: ExperimentConfig, traces) -> Curves:
    names = [s.name for s in config.strategies]
    chosen = np.stack([t[0] for t in traces])
    diversity = np.mean(np.stack([t[1] for t in traces]), axis=0).T
    coverage = np.mean(np.stack([t[2] for t in traces]), axis=0)
    spread = np.column_stack([traces[0][3], traces[0][0]])
    return Curves(names, smoothed_usage(chosen, len(names)), diversity, coverage, spread, chosen)


def run_repetitions(config: ExperimentConfig, reps: int | None = None,
                    selector_index: int = 0) -> list[RunRecord]:
    """``reps`` episodes of the configured selector, seeded like sweep index ``selector_index``."""
    reps = config.repetitions if reps is None else reps
    return [run_episode(config, episode_seed(config.master_seed, selector_index, i))
            for i in range(reps)]


def records_stats(records: Sequence[RunRecord], tag: str = "run") -> SummaryStats:
    stats = SummaryStats()
    if not records:
        return stats
    config = records[0].config
    sel = config.selector
    for i, rec in enumerate(records):
        stats.rows.append(FinalRow(sel.label, sel.p, config.rgb_d, i, rec.final_coverage))
    stats.curves[tag] = _curves(config, [_trace(rec) for rec in records])
    return stats


def sweep(config: ExperimentConfig, p_grid: Sequence[float] | None = None,
          d_values: Sequence[float] | None = None, reps: int | None = None,
          adapt: SelectorSpec | None = None, workers: int = 1) -> SummaryStats:
    """ADAPT against fixed mixtures, for every perturbation ratio in ``d_values``.

    Selector indices used for seeding: ADAPT is 0, mixture ``p_grid[i]`` is
    ``i + 1``. The same seeds are reused for every ``d``.
    """
    p_grid = tuple(config.p_grid if p_grid is None else p_grid)
    if d_values is None:
        d_values = config.d_values or (config.rgb_d,)
    reps = config.repetitions if reps is None else reps
    if reps < 2:
        log.warning("sweep with %d repetition(s): standard deviations reported as 0", reps)
    if adapt is None:
        adapt = config.selector if config.selector.kind == "adapt" else SelectorSpec()
    selectors = [adapt] + [SelectorSpec("mixture", p=p) for p in p_grid]

    jobs, keys = [], []
    for d in d_values:
        base = config.with_d(d)
        for s_index, sel in enumerate(selectors):
            doc = base.with_selector(sel).to_dict()
            for i in range(reps):
                seed = episode_seed(config.master_seed, s_index, i)
                jobs.append((doc, seed, sel.kind == "adapt"))
                keys.append((d, sel, i))

    stats = SummaryStats()
    adapt_traces: dict[float, list] = {}
    for (d, sel, i), (final, trace) in zip(keys, _map(jobs, workers)):
        stats.rows.append(FinalRow(sel.label, sel.p, d, i, final))
        if trace is not None:
            adapt_traces.setdefault(d, []).append(trace)
    for d, traces in adapt_traces.items():
        stats.curves[f"adapt_d{d:g}"] = _curves(config.with_d(d), traces)
    return stats

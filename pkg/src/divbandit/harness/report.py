"""CSV / JSON / plot-data output and the ``report`` post-processing step.

Floats are written with ``repr`` so every value survives a round trip.
"""

from __future__ import annotations

import csv
import json
import re
from pathlib import Path
from typing import Sequence

import numpy as np

from ..adapt import new_credits, strategy_diversity
from .config import ExperimentConfig, load_config
from .episode import RunRecord
from .stats import Curves, FinalRow, SummaryStats, smoothed_usage, summarize

FINAL_COLUMNS = ("selector", "p", "d", "repetition", "final_coverage")
SUMMARY_COLUMNS = ("selector", "p", "d", "n", "mean", "std", "warning")
STEP_COLUMNS = ("t", "strategy", "was_random", "y0", "y1", "diversity", "cumulative_coverage")
FORMATS = ("csv", "json", "plotdata")


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _opt_float(s: str) -> float | None:
    return float(s) if s != "" else None


def _write_rows(path: Path, header: Sequence[str], rows) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
    return path


def write_final_csv(rows: Sequence[FinalRow], path) -> Path:
    return _write_rows(Path(path), FINAL_COLUMNS,
                       ((r.selector, r.p, r.d, r.repetition, r.final_coverage) for r in rows))


def read_final_csv(path) -> list[FinalRow]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != FINAL_COLUMNS:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        return [FinalRow(r["selector"], _opt_float(r["p"]), _opt_float(r["d"]),
                         int(r["repetition"]), float(r["final_coverage"])) for r in reader]


def write_summary_csv(rows: Sequence[FinalRow], path) -> Path:
    return _write_rows(Path(path), SUMMARY_COLUMNS,
                       ((s.selector, s.p, s.d, s.n, s.mean, s.std, s.warning)
                        for s in summarize(list(rows))))


def write_steps_csv(record: RunRecord, path) -> Path:
    names = record.strategy_names
    return _write_rows(Path(path), STEP_COLUMNS, (
        (s.t, names[s.chosen], int(s.was_random), s.effect[0], s.effect[1], s.diversity,
         s.cumulative_coverage) for s in record.steps))


def read_steps_csv(path) -> dict[str, list]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != STEP_COLUMNS:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        cols: dict[str, list] = {c: [] for c in STEP_COLUMNS}
        for r in reader:
            cols["t"].append(int(r["t"]))
            cols["strategy"].append(r["strategy"])
            cols["was_random"].append(r["was_random"] == "1")
            for c in ("y0", "y1", "diversity", "cumulative_coverage"):
                cols[c].append(float(r[c]))
    return cols


def _series(path: Path, values) -> None:
    _write_rows(path, ("t", "value"), enumerate(float(v) for v in values))


def _slug(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name)


def write_plotdata(curves: dict[str, Curves], out_dir) -> list[Path]:
    """One ``t,value`` file per curve, plus the effect scatter of the first run."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for tag, c in curves.items():
        for j, name in enumerate(c.strategy_names):
            for kind, arr in (("usage", c.usage), ("diversity", c.diversity)):
                p = out_dir / f"{_slug(tag)}_{kind}_{_slug(name)}.csv"
                _series(p, arr[j])
                written.append(p)
        p = out_dir / f"{_slug(tag)}_coverage.csv"
        _series(p, c.coverage)
        written.append(p)
        if c.spread is not None:
            p = out_dir / f"{_slug(tag)}_spread.csv"
            _write_rows(p, ("y0", "y1", "strategy"),
                        ((float(y0), float(y1), c.strategy_names[int(j)]) for y0, y1, j in c.spread))
            written.append(p)
    return written


def _curves_doc(c: Curves) -> dict:
    return {
        "strategies": c.strategy_names,
        "usage": {n: c.usage[j].tolist() for j, n in enumerate(c.strategy_names)},
        "diversity": {n: c.diversity[j].tolist() for j, n in enumerate(c.strategy_names)},
        "coverage": c.coverage.tolist(),
    }


def stats_document(stats: SummaryStats, config: ExperimentConfig | None = None) -> dict:
    doc = {
        "runs": [dict(zip(FINAL_COLUMNS, (r.selector, r.p, r.d, r.repetition, r.final_coverage)))
                 for r in stats.rows],
        "summary": [dict(zip(SUMMARY_COLUMNS, (s.selector, s.p, s.d, s.n, s.mean, s.std, s.warning)))
                    for s in stats.summary()],
        "curves": {tag: _curves_doc(c) for tag, c in stats.curves.items()},
    }
    if config is not None:
        doc["config"] = config.to_dict()
    return doc


def emit_report(stats: SummaryStats, fmt: str, path, config: ExperimentConfig | None = None,
                records: Sequence[RunRecord] = ()) -> list[Path]:
    """Write ``stats`` under directory ``path`` in format ``fmt``; returns the files written.

    ``csv`` writes ``final_coverage.csv``, ``summary.csv`` and, given
    ``records``, one ``steps/steps_repNNN.csv`` per run. ``json`` writes
    ``report.json``. ``plotdata`` writes ``plotdata/*.csv`` series.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if config is not None:
        (out / "config.json").write_text(config.dumps())
        written.append(out / "config.json")
    if fmt == "csv":
        written.append(write_final_csv(stats.rows, out / "final_coverage.csv"))
        written.append(write_summary_csv(stats.rows, out / "summary.csv"))
        for i, rec in enumerate(records):
            written.append(write_steps_csv(rec, out / "steps" / f"steps_rep{i:03d}.csv"))
    elif fmt == "json":
        p = out / "report.json"
        p.write_text(json.dumps(stats_document(stats, config), indent=1, sort_keys=True) + "\n")
        written.append(p)
    else:
        written.extend(write_plotdata(stats.curves, out / "plotdata"))
    return written


def curves_from_steps(step_files: Sequence, config: ExperimentConfig) -> Curves:
    """Rebuild usage, strategy-diversity and coverage curves from step CSVs."""
    names = [s.name for s in config.strategies]
    cfg = config.adapt_config()
    chosen, diversity, coverage = [], [], []
    spread = None
    for path in step_files:
        cols = read_steps_csv(path)
        idx = [names.index(s) for s in cols["strategy"]]
        credits = new_credits(len(names), cfg)
        div = np.empty((len(idx), len(names)))
        for t, (j, v) in enumerate(zip(idx, cols["diversity"])):
            div[t] = [strategy_diversity(c, cfg) for c in credits]
            credits[j].record(v)
        chosen.append(idx)
        diversity.append(div)
        coverage.append(cols["cumulative_coverage"])
        if spread is None:
            spread = np.column_stack([cols["y0"], cols["y1"], idx])
    chosen = np.array(chosen)
    return Curves(names, smoothed_usage(chosen, len(names)),
                  np.mean(diversity, axis=0).T, np.mean(coverage, axis=0), spread, chosen)


def report(in_dir, out_dir) -> list[Path]:
    """Summaries and plot data from a ``run`` or ``sweep`` output directory."""
    in_dir, out_dir = Path(in_dir), Path(out_dir)
    final = in_dir / "final_coverage.csv"
    if not final.exists():
        raise FileNotFoundError(f"{final} not found")
    rows = read_final_csv(final)
    stats = SummaryStats(rows)
    step_files = sorted((in_dir / "steps").glob("steps_rep*.csv"))
    if step_files and (in_dir / "config.json").exists():
        stats.curves["run"] = curves_from_steps(step_files, load_config(in_dir / "config.json"))
    out_dir.mkdir(parents=True, exist_ok=True)
    written = [write_summary_csv(rows, out_dir / "summary.csv")]
    p = out_dir / "summary.json"
    doc = stats_document(stats)
    doc.pop("curves")
    p.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
    written.append(p)
    if stats.curves:
        written.extend(write_plotdata(stats.curves, out_dir / "plotdata"))
    return written

"""Grid evaluation and table serialisation behind the ``sweep`` and ``prep-success`` commands."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from . import qec
from .config import PrepConfig, SweepConfig

CSV_COLUMNS = ("scenario", "param", "squeezing_db", "r", "sigma2", "s1x", "s1p", "s2x", "s2p", "p_fail")
PREP_COLUMNS = ("model", "N", "p", "success", "p_threshold")


def fmt(v) -> str:
    """17 significant digits: exact round trip for doubles."""
    if isinstance(v, str):
        return v
    if isinstance(v, int):
        return str(v)
    return format(v, ".17g")


def grid_points(cfg: SweepConfig) -> list[tuple[str, float, float]]:
    """Evaluation order: parameter-major, squeezing ascending within each parameter."""
    return [(cfg.scenario, p, db) for p in cfg.params() for db in sorted(cfg.db)]


def evaluate_point(point: tuple[str, float, float]) -> dict:
    scenario, param, db = point
    r = qec.db_to_r(db)
    if scenario == "proposed":
        tv = qec.proposed_trial_variances(qec.ProposedScenario(r, int(param)))
        param = int(param)
    else:
        tv = qec.conventional_trial_variances(qec.ConventionalScenario(r, float(param)))
    return {
        "scenario": scenario,
        "param": param,
        "squeezing_db": float(db),
        "r": r,
        "sigma2": qec.sigma2_from_r(r),
        "s1x": tv.s1x,
        "s1p": tv.s1p,
        "s2x": tv.s2x,
        "s2p": tv.s2p,
        "p_fail": qec.p_fail(tv),
    }


def run_grid(cfg: SweepConfig, jobs: int = 1) -> list[dict]:
    points = grid_points(cfg)
    if jobs <= 1 or len(points) < 2:
        return [evaluate_point(p) for p in points]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map preserves input order, so output order never depends on scheduling
        return list(pool.map(evaluate_point, points, chunksize=max(1, len(points) // (4 * jobs))))


def to_csv(rows: list[dict], columns=CSV_COLUMNS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(row[c]) for c in columns])
    return buf.getvalue()


def to_json(rows: list[dict], echo: dict) -> str:
    def clean(v):
        if isinstance(v, float) and not math.isfinite(v):
            return None
        return v

    doc = {
        "config_echo": echo,
        "rows": [{k: clean(v) for k, v in row.items()} for row in rows],
        "tool_version": __version__,
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def render_sweep(cfg: SweepConfig, rows: list[dict]) -> str:
    return to_csv(rows) if cfg.format == "csv" else to_json(rows, cfg.echo())


def prep_rows(cfg: PrepConfig) -> list[dict]:
    rows = []
    for n in cfg.n:
        thr = qec.prep_threshold(n, cfg.model, cfg.target)
        for p in cfg.p:
            rows.append(
                {
                    "model": cfg.model,
                    "N": n,
                    "p": p,
                    "success": qec.bell_prep_success(p, n, cfg.model),
                    "p_threshold": thr,
                }
            )
    return rows


def render_prep(cfg: PrepConfig, rows: list[dict]) -> str:
    if cfg.format == "csv":
        return to_csv(rows, PREP_COLUMNS)
    echo = {"p": cfg.p, "n": cfg.n, "model": cfg.model, "target": cfg.target}
    return to_json(rows, echo)

"""Benchmark harness: scenarios, metrics, CSV/JSON reporting.

Timing wraps only the planning call (never graph loading or classifier
fitting, but classifier queries made during planning are included). All
non-time columns are deterministic for fixed seeds.
"""

from __future__ import annotations

import csv
import json
import math
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .baselines import OracleLimitError, ma_star, oracle_optimal
from .classify import MajorityClassClassifier
from .hierarchy import hcoa_star
from .model import HSG
from .order import OrderMode
from .search import NoPathError, PathResult, coa_star, euclidean_heuristic

WEIGHT_RTOL = 1e-9

CSV_COLUMNS = [
    "scenario", "algorithm", "rep", "status", "expanded", "pushes",
    "weight", "top_class", "top_count", "optimal", "time_s",
]


@dataclass
class Scenario:
    scenario_id: str
    hsg: HSG
    start: str
    goal: str
    seed: int = 0


@dataclass
class MetricsRecord:
    scenario: str
    algorithm: str
    rep: int
    status: str                  # "ok" or "no-path"
    expanded: int
    pushes: int
    weight: float
    top_class: int
    top_count: int
    optimal: Optional[bool]      # None when the oracle is infeasible
    time_s: float

    def row(self) -> List[str]:
        return [
            self.scenario, self.algorithm, str(self.rep), self.status,
            str(self.expanded), str(self.pushes), f"{self.weight:.12g}",
            str(self.top_class), str(self.top_count),
            "" if self.optimal is None else str(int(self.optimal)),
            f"{self.time_s:.9f}",
        ]


def weights_match(a: float, b: float, rtol: float = WEIGHT_RTOL) -> bool:
    return math.isclose(a, b, rel_tol=rtol, abs_tol=rtol)


def make_algorithm(spec: str, mode: OrderMode = OrderMode.TOP_CLASS,
                   resources: Optional[dict] = None) -> Callable[[Scenario], Tuple[PathResult, int]]:
    """Build a runner from an algorithm spec string.

    Specs: "coa", "hcoa-mc", "hcoa-knn", "hcoa-table", "ma:ALPHA".
    `resources` provides fitted models: {"knn": KNNClassifier,
    "table": TableClassifier}. Runners return (layer-0 PathResult,
    total expanded including higher layers).
    """
    resources = resources or {}

    def run_coa(sc: Scenario):
        g = sc.hsg.layer_graph(0)
        res = coa_star(g, sc.start, sc.goal, g.node_class, sc.hsg.num_classes,
                       h=euclidean_heuristic(g, sc.goal), mode=mode)
        return res, res.expanded

    def make_hcoa(classifier):
        def run(sc: Scenario):
            res = hcoa_star(sc.hsg, sc.start, sc.goal, classifier, mode=mode)
            return res.result0, res.total_expanded
        return run

    if spec == "coa":
        return run_coa
    if spec == "hcoa-mc":
        return make_hcoa(MajorityClassClassifier())
    if spec == "hcoa-knn":
        if "knn" not in resources:
            raise ValueError("hcoa-knn requires a fitted kNN model")
        return make_hcoa(resources["knn"])
    if spec == "hcoa-table":
        if "table" not in resources:
            raise ValueError("hcoa-table requires a prediction table")
        return make_hcoa(resources["table"])
    if spec.startswith("ma:"):
        alpha = float(spec.split(":", 1)[1])

        def run_ma(sc: Scenario):
            g = sc.hsg.layer_graph(0)
            res = ma_star(g, sc.start, sc.goal, alpha, g.node_class,
                          sc.hsg.num_classes)
            return res, res.expanded
        return run_ma
    raise ValueError(f"unknown algorithm spec {spec!r}")


def run_suite(scenarios: Sequence[Scenario], algorithms: Sequence[str],
              repetitions: int = 1, mode: OrderMode = OrderMode.TOP_CLASS,
              resources: Optional[dict] = None,
              oracle_max_nodes: int = 14) -> Tuple[List[MetricsRecord], dict]:
    """Run every scenario x algorithm x repetition and aggregate.

    The optimality flag compares (top class, count, weight) against the
    brute-force oracle and is filled only on oracle-feasible instances.
    """
    runners = {spec: make_algorithm(spec, mode, resources) for spec in algorithms}

    oracle_cache: Dict[str, Optional[tuple]] = {}

    def oracle_key(sc: Scenario) -> Optional[tuple]:
        if sc.scenario_id not in oracle_cache:
            g = sc.hsg.layer_graph(0)
            try:
                res = oracle_optimal(g, sc.start, sc.goal, g.node_class,
                                     sc.hsg.num_classes, max_nodes=oracle_max_nodes)
                oracle_cache[sc.scenario_id] = (res.top_class, res.count, res.weight)
            except OracleLimitError:
                oracle_cache[sc.scenario_id] = None
        return oracle_cache[sc.scenario_id]

    records: List[MetricsRecord] = []
    for sc in scenarios:
        okey = oracle_key(sc)
        for spec in algorithms:
            runner = runners[spec]
            for rep in range(repetitions):
                t0 = time.perf_counter()
                try:
                    result, expanded = runner(sc)
                    elapsed = time.perf_counter() - t0
                    top, cnt = result.theta_key
                    optimal = None
                    if okey is not None:
                        optimal = (top, cnt) == okey[:2] and weights_match(result.g, okey[2])
                    records.append(MetricsRecord(sc.scenario_id, spec, rep, "ok",
                                                 expanded, result.pushes, result.g,
                                                 top, cnt, optimal, elapsed))
                except NoPathError:
                    elapsed = time.perf_counter() - t0
                    records.append(MetricsRecord(sc.scenario_id, spec, rep, "no-path",
                                                 0, 0, math.inf, 0, 0, None, elapsed))
    return records, summarize(records)


def summarize(records: Sequence[MetricsRecord]) -> dict:
    summary = {}
    for spec in sorted({r.algorithm for r in records}):
        rows = [r for r in records if r.algorithm == spec and r.status == "ok"]
        times = [r.time_s for r in rows]
        judged = [r for r in rows if r.optimal is not None]
        summary[spec] = {
            "runs": len(rows),
            "mean_expanded": statistics.fmean(r.expanded for r in rows) if rows else None,
            "mean_time_s": statistics.fmean(times) if times else None,
            "std_time_s": statistics.stdev(times) if len(times) > 1 else 0.0,
            "optimality_rate": (sum(r.optimal for r in judged) / len(judged)) if judged else None,
            "oracle_judged": len(judged),
        }
    return summary


def write_csv(path: str, records: Sequence[MetricsRecord]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow(rec.row())


def write_json(path: str, records: Sequence[MetricsRecord], summary: dict) -> None:
    doc = {
        "columns": CSV_COLUMNS,
        "records": [rec.row() for rec in records],
        "summary": summary,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)


def random_pairs(hsg: HSG, count: int, seed: int) -> List[Tuple[str, str]]:
    """Deterministic random start/goal pairs over layer-0 nodes."""
    import random as _random
    rng = _random.Random(seed)
    ids = sorted(hsg.layer_nodes(0))
    pairs = []
    for _ in range(count):
        start = rng.choice(ids)
        goal = rng.choice([i for i in ids if i != start]) if len(ids) > 1 else start
        pairs.append((start, goal))
    return pairs

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from coalflow.search import SearchStatus, TracePoint, solve
from coalflow.utils import LOGGER_MANAGER, SimpleProgressLogger

from .case_study import build_case_task, generate_network
from .config import ExperimentConfig, from_plain, to_plain

logger = LOGGER_MANAGER.get_logger("coalflow.harness.sweep")

SWEEP_HEADER = [
    "x",
    "trial",
    "status",
    "k",
    "coalition_size",
    "total_effort",
    "total_cost",
    "reward",
    "evaluations",
]
SUMMARY_HEADER = [
    "x",
    "trials",
    "found",
    "feasibility_rate",
    "mean_k",
    "std_k",
    "mean_coalition_size",
    "std_coalition_size",
]


@dataclass(frozen=True)
class SweepRecord:
    x: int
    trial: int
    status: SearchStatus
    k: Optional[int] = None
    coalition_size: Optional[int] = None
    total_effort: Optional[float] = None
    total_cost: Optional[float] = None
    reward: Optional[float] = None
    evaluations: int = 0

    @property
    def found(self) -> bool:
        return self.status == SearchStatus.FOUND

    def to_row(self) -> list[str]:
        return [
            str(self.x),
            str(self.trial),
            str(self.status),
            _fmt(self.k),
            _fmt(self.coalition_size),
            _fmt(self.total_effort),
            _fmt(self.total_cost),
            _fmt(self.reward),
            str(self.evaluations),
        ]

    @classmethod
    def from_row(cls, row: dict[str, str]) -> "SweepRecord":
        def parse(value: str, kind: type):
            return None if value == "" else kind(value)

        return cls(
            x=int(row["x"]),
            trial=int(row["trial"]),
            status=SearchStatus(row["status"]),
            k=parse(row["k"], int),
            coalition_size=parse(row["coalition_size"], int),
            total_effort=parse(row["total_effort"], float),
            total_cost=parse(row["total_cost"], float),
            reward=parse(row["reward"], float),
            evaluations=int(row["evaluations"]),
        )


@dataclass(frozen=True)
class SummaryRow:
    x: int
    trials: int
    found: int
    feasibility_rate: float
    mean_k: Optional[float] = None
    std_k: Optional[float] = None
    mean_coalition_size: Optional[float] = None
    std_coalition_size: Optional[float] = None

    def to_row(self) -> list[str]:
        return [_fmt(getattr(self, name)) for name in SUMMARY_HEADER]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def trial_seed(seed: int, x: int, trial: int) -> int:
    """Seed of one sweep trial, independent of every other (x, trial) pair."""
    return int(np.random.SeedSequence([seed, x, trial]).generate_state(1)[0])


def run_trial(cfg: ExperimentConfig, x: int, trial: int) -> SweepRecord:
    net = generate_network(cfg, trial_seed(cfg.seed, x, trial), max_caps=x)
    result = solve(net, build_case_task(cfg), cfg.search)
    if not result.found:
        return SweepRecord(
            x=x, trial=trial, status=result.status, evaluations=result.evaluations
        )
    return SweepRecord(
        x=x,
        trial=trial,
        status=result.status,
        k=result.radius,
        coalition_size=len(result.coalition),
        total_effort=result.total_effort,
        total_cost=result.total_cost,
        reward=result.reward,
        evaluations=result.evaluations,
    )


def _run_plain_trial(data: dict, x: int, trial: int) -> SweepRecord:
    return run_trial(from_plain(data), x, trial)


def run_breadth_sweep(
    cfg: ExperimentConfig,
    output_path: Optional[str] = None,
    summary_path: Optional[str] = None,
) -> list[SweepRecord]:
    """Monte-Carlo sweep of the per-agent capability breadth.

    For every ``x`` in ``cfg.max_caps_values`` and every trial a fresh network
    is generated from :func:`trial_seed` and the intake task is solved on it.
    Records come back in ``(x, trial)`` order whatever ``cfg.num_workers`` is.

    :param cfg: The experiment config.
    :type cfg: ExperimentConfig
    :param output_path: If given, the records are written there as CSV.
    :type output_path: str, optional
    :param summary_path: If given, the per-x summary is written there as CSV.
    :type summary_path: str, optional
    :return: One record per (x, trial).
    :rtype: list[SweepRecord]
    """
    jobs = [(x, trial) for x in cfg.max_caps_values for trial in range(cfg.trials)]
    p_logger = SimpleProgressLogger(logger, total=len(jobs), interval=cfg.log_interval)
    records: list[SweepRecord] = []
    if cfg.num_workers == 1:
        for x, trial in jobs:
            records.append(run_trial(cfg, x, trial))
            p_logger.update(desc="Sweep trials")
    else:
        data = to_plain(cfg)
        with ProcessPoolExecutor(max_workers=cfg.num_workers) as pool:
            futures = [pool.submit(_run_plain_trial, data, x, trial) for x, trial in jobs]
            for future in futures:
                records.append(future.result())
                p_logger.update(desc="Sweep trials")

    summary = summarize_sweep(records)
    for row in summary:
        logger.info(
            f"x={row.x}: {row.found}/{row.trials} found, "
            f"mean k {_fmt(row.mean_k)}, mean |C| {_fmt(row.mean_coalition_size)}"
        )
    if output_path is not None:
        write_sweep_csv(records, output_path)
    if summary_path is not None:
        write_summary_csv(summary, summary_path)
    return records


def write_sweep_csv(records: Iterable[SweepRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(SWEEP_HEADER)
        for record in records:
            writer.writerow(record.to_row())
    return


def read_sweep_csv(path: str) -> list[SweepRecord]:
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        assert reader.fieldnames == SWEEP_HEADER, f"Unexpected sweep header {reader.fieldnames}"
        return [SweepRecord.from_row(row) for row in reader]


def summarize_sweep(records: Iterable[SweepRecord]) -> list[SummaryRow]:
    """Per-x mean and population standard deviation of ``k`` and ``|C|``.

    Infeasible trials count towards ``trials`` and the feasibility rate only.
    """
    grouped: dict[int, list[SweepRecord]] = {}
    for record in records:
        grouped.setdefault(record.x, []).append(record)

    rows = []
    for x in sorted(grouped):
        group = grouped[x]
        found = [r for r in group if r.found]
        row = dict(x=x, trials=len(group), found=len(found), feasibility_rate=len(found) / len(group))
        if found:
            ks = np.array([r.k for r in found], dtype=float)
            sizes = np.array([r.coalition_size for r in found], dtype=float)
            row.update(
                mean_k=float(np.mean(ks)),
                std_k=float(np.std(ks)),
                mean_coalition_size=float(np.mean(sizes)),
                std_coalition_size=float(np.std(sizes)),
            )
        rows.append(SummaryRow(**row))
    return rows


def write_summary_csv(rows: Iterable[SummaryRow], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(SUMMARY_HEADER)
        for row in rows:
            writer.writerow(row.to_row())
    return


def trace_stabilization(trace: list[TracePoint]) -> Optional[float]:
    """Fraction of the evaluations spent before the final best cost was first reached.

    :return: ``n / len(trace)`` where ``n`` is the first evaluation index holding
        the final best cost, or None when no feasible coalition was seen.
    :rtype: Optional[float]
    """
    if not trace or trace[-1][1] is None:
        return None
    final = trace[-1][1]
    for n, cost in trace:
        if cost == final:
            return n / len(trace)
    return 1.0

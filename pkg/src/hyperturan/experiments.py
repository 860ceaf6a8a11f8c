"""Seeded parameter sweeps and the untouched-K4^- witness scan.

Each (n, p, trial) cell samples G^3(n, p) with seed ``trial_seed(master, trial)``,
so a given trial index reuses the same uniform draws at every p and the
samples are nested as p grows.
"""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, field, fields
from typing import Optional, Sequence

from .census import count_f5, untouched_k4minus_witness
from .errors import DomainError
from .partition import EXACT_LIMIT_N, decompose, is_tripartite, max_tripartite_exact, max_tripartite_local
from .sampling import SampleSpec, sample, trial_seed
from .solver import (ALL_OPTIMA_LIMIT, DEFAULT_BUDGET, ORACLE_LIMIT, all_max_f5free,
                     greedy_f5free, max_f5free_bnb, max_f5free_oracle)

CSV_HEADER = ("n,p,trial,trial_seed,edge_count,f5_copies,max_f5free_size,optimal,"
              "t_value,t_exact,opt_is_tripartite,gap")
MODES = ("oracle", "bnb", "heuristic")


@dataclass(frozen=True)
class SweepSpec:
    n_list: Sequence[int]
    p_grid: Sequence[float]
    trials: int = 1
    master_seed: int = 0
    mode: str = "bnb"
    out: Optional[str] = None
    budget: int = DEFAULT_BUDGET
    all_optima: bool = False
    local_restarts: int = 20

    def __post_init__(self):
        if self.trials < 1:
            raise DomainError("trials must be at least 1")
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got {self.mode!r}")
        for p in self.p_grid:
            if not 0.0 <= p <= 1.0:
                raise DomainError(f"p must lie in [0, 1], got {p}")
        for n in self.n_list:
            if n < 0:
                raise DomainError(f"n must be non-negative, got {n}")


@dataclass(frozen=True)
class SweepRow:
    n: int
    p: float
    trial: int
    trial_seed: int
    edge_count: int
    f5_copies: int
    max_f5free_size: int
    optimal: bool
    t_value: int
    t_exact: bool
    opt_is_tripartite: bool
    gap: int
    degraded: bool = field(default=False, compare=False)

    def csv_fields(self) -> list[str]:
        vals = astuple(self)[:12]
        out = []
        for f, v in zip(fields(self)[:12], vals):
            if f.name == "p":
                out.append(format(v, ".6g"))
            elif isinstance(v, bool):
                out.append("1" if v else "0")
            else:
                out.append(str(v))
        return out


def run_cell(n: int, p: float, trial: int, spec: SweepSpec) -> SweepRow:
    seed = trial_seed(spec.master_seed, trial)
    H = sample(SampleSpec(n, p, seed))
    degraded = False

    if n <= EXACT_LIMIT_N:
        part, t = max_tripartite_exact(H)
        t_exact = True
    else:
        part, t = max_tripartite_local(H, seed=seed, restarts=spec.local_restarts)
        t_exact = False
        degraded = True
    crossing = decompose(H, part).crossing

    mode = spec.mode
    if mode == "oracle" and len(H) > ORACLE_LIMIT:
        mode = "heuristic"
        degraded = True
    if mode == "oracle":
        chosen = max_f5free_oracle(H).chosen
        optimal = True
    elif mode == "bnb":
        res = max_f5free_bnb(H, budget=spec.budget, incumbent=crossing)
        chosen, optimal = res.chosen, res.optimal
        degraded = degraded or not optimal
    else:
        greedy = greedy_f5free(H)
        chosen = max(greedy.chosen, crossing, key=len)
        optimal = greedy.optimal
    size = len(chosen)

    if spec.all_optima and mode == "oracle" and len(H) <= ALL_OPTIMA_LIMIT:
        tri = all(is_tripartite(H.subhypergraph(s)) is not None for s in all_max_f5free(H))
    else:
        tri = is_tripartite(H.subhypergraph(chosen)) is not None

    return SweepRow(n, p, trial, seed, len(H), count_f5(H), size, optimal,
                    t, t_exact, tri, size - t, degraded)


def _cell_job(args):
    return run_cell(*args)


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list[SweepRow]:
    """Run every cell in (n, p, trial) order; writes the CSV when ``spec.out`` is set."""
    cells = [(n, p, t, spec) for n in spec.n_list for p in spec.p_grid for t in range(spec.trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_cell_job, cells))
    else:
        rows = [run_cell(*c) for c in cells]
    if spec.out is not None:
        with open(spec.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(rows_to_csv(rows))
    return rows


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER.split(","))
    for r in rows:
        w.writerow(r.csv_fields())
    return buf.getvalue()


def csv_to_rows(text: str) -> list[SweepRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if ",".join(header) != CSV_HEADER:
        raise ValueError(f"unexpected sweep header: {','.join(header)}")
    rows = []
    for rec in reader:
        (n, p, trial, seed, m, f5, size, opt, t, t_exact, tri, gap) = rec
        rows.append(SweepRow(int(n), float(p), int(trial), int(seed), int(m), int(f5), int(size),
                             opt == "1", int(t), t_exact == "1", tri == "1", int(gap)))
    return rows


@dataclass(frozen=True)
class WitnessTrial:
    trial: int
    trial_seed: int
    edge_count: int
    witness: Optional[tuple[int, int, int]]  # edge indices, None when absent


def witness_scan(n: int, p: float, trials: int, seed: int) -> dict:
    """Per trial, whether G^3(n, p) has a K4^- none of whose edges lies in an F5."""
    if trials < 1:
        raise DomainError("trials must be at least 1")
    out = []
    for i in range(trials):
        s = trial_seed(seed, i)
        H = sample(SampleSpec(n, p, s))
        w = untouched_k4minus_witness(H)
        out.append(WitnessTrial(i, s, len(H), None if w is None else w.edge_indices))
    found = sum(1 for t in out if t.witness is not None)
    return {
        "n": n,
        "p": p,
        "trials": trials,
        "seed": seed,
        "rows": [
            {"trial": t.trial, "trial_seed": t.trial_seed, "edge_count": t.edge_count,
             "witness": None if t.witness is None else list(t.witness)}
            for t in out
        ],
        "found": found,
        "fraction": found / trials,
    }

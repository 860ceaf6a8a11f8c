"""Maximum F5-free subhypergraphs.

The problem is a maximum independent set in the 3-uniform conflict hypergraph
whose vertices are edge indices and whose edges are the F5 constraints.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from . import _backend
from .census import conflict_constraints
from .core import Hypergraph3
from .errors import CapacityError, PreconditionError

ORACLE_LIMIT = 22
ALL_OPTIMA_LIMIT = 18
DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class SolveResult:
    chosen: tuple[int, ...]
    size: int
    optimal: bool
    nodes_explored: int
    wallclock: float = 0.0

    def to_json(self, timing: bool = True) -> dict:
        doc = {
            "size": self.size,
            "optimal": self.optimal,
            "nodes_explored": self.nodes_explored,
            "chosen": list(self.chosen),
        }
        if timing:
            doc["wallclock"] = self.wallclock
        return doc


def _constraint_masks(H: Hypergraph3) -> list[int]:
    return [(1 << x) | (1 << y) | (1 << z) for x, y, z in conflict_constraints(H)]


def _minimum_removals(H: Hypergraph3) -> list[tuple[int, ...]]:
    """All smallest edge sets meeting every F5 copy, by exhaustive search over sizes."""
    masks = _constraint_masks(H)
    if not masks:
        return [()]
    touched = sorted({i for i in range(len(H)) if any(mk >> i & 1 for mk in masks)})
    for k in range(1, len(touched) + 1):
        found = []
        for rem in combinations(touched, k):
            r = 0
            for i in rem:
                r |= 1 << i
            if all(r & mk for mk in masks):
                found.append(rem)
        if found:
            return found
    raise AssertionError("removing every constrained edge always works")


def _complement(m: int, removed) -> tuple[int, ...]:
    gone = set(removed)
    return tuple(i for i in range(m) if i not in gone)


def max_f5free_oracle(H: Hypergraph3) -> SolveResult:
    """Exhaustive reference solver; certificate is the lexicographically least optimum.

    Edges in no F5 copy belong to every optimum, so only subsets of the
    constrained edges are enumerated as removal candidates.
    """
    if len(H) > ORACLE_LIMIT:
        raise CapacityError(f"oracle is limited to {ORACLE_LIMIT} edges, got {len(H)}")
    t0 = time.perf_counter()
    best = min(_complement(len(H), rem) for rem in _minimum_removals(H))
    return SolveResult(best, len(best), True, 0, time.perf_counter() - t0)


def all_max_f5free(H: Hypergraph3) -> list[tuple[int, ...]]:
    """Every maximum F5-free edge subset, sorted; exhaustive, so capped at 18 edges."""
    if len(H) > ALL_OPTIMA_LIMIT:
        raise CapacityError(f"optimum enumeration is limited to {ALL_OPTIMA_LIMIT} edges, got {len(H)}")
    return sorted(_complement(len(H), rem) for rem in _minimum_removals(H))


def greedy_f5free(H: Hypergraph3) -> SolveResult:
    """Add edges in index order, skipping any that would complete an F5."""
    t0 = time.perf_counter()
    by_edge: dict[int, list[tuple[int, int, int]]] = {}
    for c in conflict_constraints(H):
        for i in c:
            by_edge.setdefault(i, []).append(c)
    keep = [False] * len(H)
    for i in range(len(H)):
        keep[i] = not any(all(keep[j] for j in c if j != i) for c in by_edge.get(i, ()))
    chosen = tuple(i for i, k in enumerate(keep) if k)
    return SolveResult(chosen, len(chosen), not by_edge, 0, time.perf_counter() - t0)


def max_f5free_bnb(H: Hypergraph3, budget: int = DEFAULT_BUDGET,
                   incumbent: Optional[Iterable[int]] = None) -> SolveResult:
    """Branch and bound over the F5 constraints.

    ``incumbent`` may supply a known F5-free edge subset (for instance the
    crossing edges of a good partition); the greedy solution is used when it
    is larger.  With ``optimal=False`` the result is the best subset found
    before the node budget ran out.
    """
    t0 = time.perf_counter()
    cons = conflict_constraints(H)
    start = greedy_f5free(H).chosen
    if incumbent is not None:
        inc = tuple(sorted(set(incumbent)))
        if any(not 0 <= i < len(H) for i in inc) or not is_feasible(H, inc):
            raise PreconditionError("incumbent is not an F5-free edge subset of H")
        if len(inc) > len(start):
            start = inc
    chosen, complete, nodes = _backend.kernels.bnb_f5free(len(H), cons, list(start), int(budget))
    chosen = tuple(chosen)
    return SolveResult(chosen, len(chosen), bool(complete), int(nodes), time.perf_counter() - t0)


def is_feasible(H: Hypergraph3, chosen: Iterable[int]) -> bool:
    """True iff no F5 constraint lies entirely inside ``chosen``."""
    s = set(chosen)
    return not any(x in s and y in s and z in s for x, y, z in conflict_constraints(H))

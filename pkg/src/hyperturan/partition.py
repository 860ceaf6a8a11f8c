"""3-partitions, crossing structure, low common-crossing-degree pairs and t(H).

A partition is stored as a class index in {0, 1, 2} per vertex; class 0 plays
the role of A1 wherever a statement singles out a first class (Q and the B1
split).  Relabelling classes is the caller's business.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _backend
from .core import Hypergraph3, PairGraph
from .errors import CapacityError, DimensionError, DomainError, ParseError
from .sampling import MASK64, mix64, trial_seed

GOLDEN = 0x9E3779B97F4A7C15
EXACT_LIMIT_N = 16


class TriPartition:
    """Ordered partition (A1, A2, A3) of ``range(n)`` given by a class per vertex."""

    __slots__ = ("_cls", "_sizes")

    def __init__(self, assignment: Iterable[int]):
        cls = tuple(int(c) for c in assignment)
        for v, c in enumerate(cls):
            if c not in (0, 1, 2):
                raise ParseError(f"vertex {v} has class {c}; classes are 0, 1, 2")
        self._cls = cls
        self._sizes = (cls.count(0), cls.count(1), cls.count(2))

    @classmethod
    def from_classes(cls, n: int, classes: Sequence[Iterable[int]]) -> "TriPartition":
        if len(classes) != 3:
            raise ParseError("a 3-partition needs exactly three classes")
        assignment = [-1] * n
        for i, members in enumerate(classes):
            for v in members:
                if not 0 <= v < n:
                    raise ParseError(f"vertex {v} outside [0, {n})")
                if assignment[v] != -1:
                    raise ParseError(f"vertex {v} assigned to two classes")
                assignment[v] = i
        missing = [v for v, c in enumerate(assignment) if c == -1]
        if missing:
            raise ParseError(f"vertices {missing} are not assigned to any class")
        return cls(assignment)

    @property
    def n(self) -> int:
        return len(self._cls)

    @property
    def assignment(self) -> tuple[int, ...]:
        return self._cls

    @property
    def sizes(self) -> tuple[int, int, int]:
        return self._sizes

    def classes(self) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
        out = ([], [], [])
        for v, c in enumerate(self._cls):
            out[c].append(v)
        return tuple(frozenset(x) for x in out)

    def __getitem__(self, v: int) -> int:
        return self._cls[v]

    def __eq__(self, other) -> bool:
        return isinstance(other, TriPartition) and self._cls == other._cls

    def __hash__(self) -> int:
        return hash(self._cls)

    def __repr__(self) -> str:
        return f"TriPartition({''.join(map(str, self._cls))})"

    def to_json(self) -> dict:
        return {"n": self.n, "assignment": list(self._cls)}

    @classmethod
    def from_json(cls, doc) -> "TriPartition":
        if isinstance(doc, dict) and "assignment" in doc:
            return cls(doc["assignment"])
        if isinstance(doc, dict) and "classes" in doc:
            return cls.from_classes(doc["n"], doc["classes"])
        raise ParseError('partition document needs "assignment" or "n" and "classes"')


def canonical_labels(assignment: Sequence[int]) -> tuple[int, ...]:
    """Relabel classes in order of first appearance (restricted growth form)."""
    relabel: dict[int, int] = {}
    out = []
    for c in assignment:
        if c not in relabel:
            relabel[c] = len(relabel)
        out.append(relabel[c])
    return tuple(out)


@dataclass(frozen=True)
class CrossingDecomposition:
    crossing: tuple[int, ...]
    b1: tuple[int, ...]
    b2: tuple[int, ...]
    b3: tuple[int, ...]

    @property
    def b(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        return (self.b1, self.b2, self.b3)


def _check_dims(H: Hypergraph3, P: TriPartition) -> None:
    if P.n != H.n:
        raise DimensionError(f"partition covers {P.n} vertices, hypergraph has {H.n}")


def decompose(H: Hypergraph3, P: TriPartition) -> CrossingDecomposition:
    _check_dims(H, P)
    cls = P.assignment
    parts: tuple[list[int], ...] = ([], [], [], [])
    for i, (a, b, c) in enumerate(H.edges):
        ca, cb, cc = cls[a], cls[b], cls[c]
        if ca != cb and ca != cc and cb != cc:
            parts[0].append(i)
        elif ca == cb or ca == cc:
            parts[1 + ca].append(i)
        else:
            parts[1 + cb].append(i)
    return CrossingDecomposition(*(tuple(x) for x in parts))


def crossing_count(H: Hypergraph3, P: TriPartition) -> int:
    _check_dims(H, P)
    cls = P.assignment
    return sum(1 for a, b, c in H.edges if len({cls[a], cls[b], cls[c]}) == 3)


def is_balanced(P: TriPartition, tolerance: float = 1) -> bool:
    """Every class size is within ``tolerance`` of n/3."""
    third = Fraction(P.n, 3)
    tol = Fraction(tolerance)
    return all(abs(s - third) <= tol for s in P.sizes)


def crossing_link(H: Hypergraph3, P: TriPartition, v: int) -> PairGraph:
    _check_dims(H, P)
    H.check_vertex(v)
    cls = P.assignment
    pairs = []
    for i in H.incidence[v]:
        x, y = (w for w in H.edges[i] if w != v)
        if len({cls[x], cls[y], cls[v]}) == 3:
            pairs.append((x, y))
    return PairGraph(H.n, pairs)


def crossing_degree(H: Hypergraph3, P: TriPartition, v: int) -> int:
    return len(crossing_link(H, P, v))


def common_crossing_degree(H: Hypergraph3, P: TriPartition, u: int, v: int) -> int:
    H.check_pair(u, v)
    return len(crossing_link(H, P, u).as_set() & crossing_link(H, P, v).as_set())


def q_threshold(n: int, p: float) -> float:
    return 0.8 * n * n * p * p / 9


def q_set(H: Hypergraph3, P: TriPartition, p: float) -> PairGraph:
    """Pairs inside class 0 whose common crossing degree is strictly below 0.8 n^2 p^2 / 9."""
    if not (0.0 < p <= 1.0):
        raise DomainError(f"p must lie in (0, 1], got {p}")
    _check_dims(H, P)
    thr = q_threshold(H.n, p)
    a1 = sorted(P.classes()[0])
    links = {v: crossing_link(H, P, v).as_set() for v in a1}
    return PairGraph(H.n, ((u, v) for u, v in combinations(a1, 2)
                           if len(links[u] & links[v]) < thr))


@dataclass(frozen=True)
class BadDegreeReport:
    degrees: tuple[int, ...]
    max_degree: int
    bound: float
    within_bound: bool


def bad_degree_report(H: Hypergraph3, P: TriPartition, p: float) -> BadDegreeReport:
    """Degrees in the Q graph compared against 0.001/p; nothing is asserted."""
    Q = q_set(H, P, p)
    deg = tuple(Q.degrees())
    mx = max(deg, default=0)
    bound = 0.001 / p
    return BadDegreeReport(deg, mx, bound, mx < bound)


def max_tripartite_exact(H: Hypergraph3, limit_n: int = EXACT_LIMIT_N) -> tuple[TriPartition, int]:
    """t(H) and the lexicographically least partition attaining it."""
    if H.n > limit_n:
        raise CapacityError(
            f"exact t(H) is limited to n <= {limit_n} (got n = {H.n}); "
            "use max_tripartite_local for larger instances")
    count, assignment = _backend.kernels.tripartite_exact(H.n, H.edges)
    return TriPartition(assignment), count


def _start_assignment(n: int, seed: int) -> np.ndarray:
    state = seed
    out = np.empty(n, dtype=np.int64)
    for v in range(n):
        state = (state + GOLDEN) & MASK64
        out[v] = mix64(state) % 3
    return out


def _local_ascent(E: np.ndarray, n: int, cls: np.ndarray) -> np.ndarray:
    """Steepest single-vertex moves until none improves the crossing count."""
    if len(E) == 0:
        return cls
    rot = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
    while True:
        gain = np.zeros((n, 3), dtype=np.int64)
        for j, k, l in rot:
            v = E[:, j]
            o1 = cls[E[:, k]]
            o2 = cls[E[:, l]]
            differ = o1 != o2
            now = differ & (cls[v] != o1) & (cls[v] != o2)
            for c in range(3):
                new = differ & (o1 != c) & (o2 != c)
                np.add.at(gain[:, c], v, new.astype(np.int64) - now)
        flat = int(np.argmax(gain))  # first maximum: lowest vertex, then lowest class
        if gain.flat[flat] <= 0:
            return cls
        cls[flat // 3] = flat % 3


def max_tripartite_local(H: Hypergraph3, seed: int = 0, restarts: int = 10) -> tuple[TriPartition, int]:
    """Best local optimum over seeded random starts; a lower bound on t(H)."""
    if restarts < 1:
        raise DomainError("restarts must be at least 1")
    E = np.asarray(H.edges, dtype=np.int64).reshape(-1, 3)
    best_key = None
    for r in range(restarts):
        cls = _local_ascent(E, H.n, _start_assignment(H.n, trial_seed(seed, r)))
        assignment = canonical_labels(cls.tolist())
        P = TriPartition(assignment)
        key = (-crossing_count(H, P), assignment)
        if best_key is None or key < best_key:
            best_key = key
    return TriPartition(best_key[1]), -best_key[0]


def is_tripartite(H: Hypergraph3) -> Optional[TriPartition]:
    """A partition making every edge crossing, or None.

    Equivalent to properly 3-colouring the shadow graph; vertices in no edge go
    to class 0.
    """
    n = H.n
    adj = [0] * n
    for (u, v) in H.pair_bits:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    support = [v for v in range(n) if adj[v]]
    cls = [0] * n
    assigned = 0

    def place(i: int, used: int) -> bool:
        nonlocal assigned
        if i == len(support):
            return True
        v = support[i]
        forbidden = 0
        nb = adj[v] & assigned
        while nb:
            low = nb & -nb
            forbidden |= 1 << cls[low.bit_length() - 1]
            nb ^= low
        for c in range(min(used + 1, 2) + 1):
            if forbidden >> c & 1:
                continue
            cls[v] = c
            assigned |= 1 << v
            if place(i + 1, max(used, c)):
                return True
            assigned &= ~(1 << v)
        cls[v] = 0
        return False

    if place(0, -1):
        return TriPartition(cls)
    return None

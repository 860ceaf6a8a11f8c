"""Instance-level reports on the structural quantities behind the stability argument.

Every inequality here is a large-n, high-probability statement.  Reports
record whether it holds on the given instance and never raise when it does
not; only genuine preconditions (F not F5-free, F not inside G) raise.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

from .census import is_f5_free
from .core import Hypergraph3, bits_to_list, shadow_graph
from .errors import ContainmentError, DomainError, PreconditionError
from .partition import (TriPartition, crossing_count, crossing_link, decompose,
                        max_tripartite_exact, q_set, EXACT_LIMIT_N)


@dataclass(frozen=True)
class ConstantsLedger:
    eps1: Fraction = Fraction(1, 960)
    eps2: Fraction = Fraction(1, 400)
    # constants of the stability argument
    eps: Fraction = Fraction(1, 10)
    zeta: Fraction = Fraction(1, 1000)
    gamma: Fraction = Fraction(1, 10)
    alpha: Fraction = Fraction(8, 9)
    phi: Fraction = Fraction(1, 1000)

    @property
    def delta(self) -> Fraction:
        return self.eps1 ** 2 * self.eps2 / (108 * 160)

    @property
    def eps3(self) -> Fraction:
        return 108 * self.delta / self.eps1

    def as_dict(self) -> dict[str, Fraction]:
        d = {k: v for k, v in asdict(self).items()}
        d["delta"] = self.delta
        d["eps3"] = self.eps3
        return d

    def to_json(self) -> dict:
        return {k: {"exact": str(v), "value": float(v)} for k, v in self.as_dict().items()}


CONSTANTS = ConstantsLedger()


def chernoff_constant(eps: float) -> float:
    """min((1+eps) ln(1+eps) - eps, eps^2 / 2)."""
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    return min((1 + eps) * math.log1p(eps) - eps, eps * eps / 2)


# -- concentration -----------------------------------------------------------

@dataclass(frozen=True)
class BandRow:
    quantity: str
    observed_min: Optional[float]
    observed_max: Optional[float]
    band_low: float
    band_high: float
    passes: bool


def _band_row(name: str, values: Sequence[float], centre: float, eps: float) -> BandRow:
    lo, hi = (1 - eps) * centre, (1 + eps) * centre
    if not values:
        return BandRow(name, None, None, lo, hi, True)
    vmin, vmax = min(values), max(values)
    return BandRow(name, vmin, vmax, lo, hi, lo <= vmin and vmax <= hi)


def _check_p(p: float) -> None:
    if not (0.0 < p <= 1.0):
        raise DomainError(f"p must lie in (0, 1], got {p}")


def concentration_report(H: Hypergraph3, p: float, eps: float,
                         P: Optional[TriPartition] = None) -> list[BandRow]:
    """Observed ranges of co-degree, common degree, degree (and crossing degree
    over the first class when a partition is given) against the (1 +- eps) bands."""
    _check_p(p)
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    n = H.n
    bits = H.pair_bits
    pairs = list(combinations(range(n), 2))
    codeg = [bin(bits.get(pr, 0)).count("1") for pr in pairs]
    links = []
    for v in range(n):
        links.append({tuple(w for w in H.edges[i] if w != v) for i in H.incidence[v]})
    common = [len(links[u] & links[v]) for u, v in pairs]
    degs = [len(H.incidence[v]) for v in range(n)]
    rows = [
        _band_row("codegree", codeg, p * n, eps),
        _band_row("common_degree", common, p * p * n * n / 2, eps),
        _band_row("degree", degs, p * n * n / 2, eps),
    ]
    if P is not None:
        a1 = sorted(P.classes()[0])
        s = P.sizes
        rows.append(_band_row("crossing_degree", [len(crossing_link(H, P, v)) for v in a1],
                              p * s[1] * s[2], eps))
    return rows


def heavy_pairs(H: Hypergraph3, A: Iterable[int], eps: float, p: float) -> list[tuple[int, int]]:
    """Pairs outside A whose co-neighbourhood meets A in more than 2 eps p n vertices."""
    _check_p(p)
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    amask = 0
    for v in A:
        H.check_vertex(v)
        amask |= 1 << v
    thr = 2 * eps * p * H.n
    out = []
    for (u, v), nb in sorted(H.pair_bits.items()):
        if (amask >> u) & 1 or (amask >> v) & 1:
            continue
        if bin(nb & amask).count("1") > thr:
            out.append((u, v))
    return out


# -- structure report ----------------------------------------------------------

@dataclass
class StructureReport:
    n: int
    p: float
    size_G: int
    size_F: int
    crossing_G: int
    crossing_F: int
    M: int
    B: tuple[int, int, int]
    J: int
    C: tuple[int, ...]
    C1: tuple[int, ...]
    C2: tuple[int, ...]
    D: tuple[int, ...]
    Q: int
    B1_split: tuple[int, int, int]
    J_prime: int
    J_prime_max_degree: int
    thresholds: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        d = asdict(self)
        for k in ("B", "C", "C1", "C2", "D", "B1_split"):
            d[k] = list(d[k])
        return d


def _edge_indices(G: Hypergraph3, F) -> list[int]:
    if isinstance(F, Hypergraph3):
        if F.n != G.n:
            raise ContainmentError(f"F has {F.n} vertices, G has {G.n}")
        try:
            return sorted(G.index(e) for e in F.edges)
        except KeyError as exc:
            raise ContainmentError(f"edge {list(exc.args[0])} of F is not an edge of G") from None
    idx = sorted(set(int(i) for i in F))
    bad = [i for i in idx if not 0 <= i < len(G)]
    if bad:
        raise ContainmentError(f"edge indices {bad} are not edges of G")
    return idx


def structure_report(G: Hypergraph3, F: Union[Hypergraph3, Iterable[int]],
                     P: TriPartition, p: float,
                     constants: ConstantsLedger = CONSTANTS) -> StructureReport:
    """Measure M, B_i, J, C, C1, C2, D, the B1 split and Q for (G, F, P) and
    evaluate each inequality of the stability argument on this instance.

    ``F`` is an F5-free subhypergraph of G, given either as edge indices of G
    or as a Hypergraph3.  For C1 the count of crossing edges of F containing x
    includes every crossing edge, which for x in A1 always meets A2 and A3.
    """
    _check_p(p)
    f_idx = _edge_indices(G, F)
    Fh = G.subhypergraph(f_idx)
    if not is_f5_free(Fh):
        raise PreconditionError("F contains a copy of F5")
    n = G.n
    cls = P.assignment
    in_F = set(f_idx)

    dec_G = decompose(G, P)
    dec_F = decompose(Fh, P)
    M = [i for i in dec_G.crossing if i not in in_F]
    B1 = [Fh.edges[i] for i in dec_F.b1]
    a1 = [v for v in range(n) if cls[v] == 0]

    J = set()
    for e in B1:
        for x, y in combinations(e, 2):
            if cls[x] == 0 and cls[y] == 0:
                J.add((x, y))
    dJ = [0] * n
    for x, y in J:
        dJ[x] += 1
        dJ[y] += 1

    eps1, eps2 = float(constants.eps1), float(constants.eps2)
    c_thr = eps1 * n
    c1_thr = eps2 * p * n * n
    cross_F_deg = [0] * n
    for i in dec_F.crossing:
        for v in Fh.edges[i]:
            cross_F_deg[v] += 1
    C = [x for x in a1 if dJ[x] >= c_thr]
    C1 = [x for x in C if cross_F_deg[x] >= c1_thr]
    C2 = [x for x in C if x not in set(C1)]
    D = [x for x in a1 if x not in set(C)]
    Cs, C1s, Ds = set(C), set(C1), set(D)

    split = ([], [], [])
    for e in B1:
        if sum(v in Cs for v in e) >= 2 or sum(v in Ds for v in e) >= 2:
            split[0].append(e)
        elif sum(v in C1s for v in e) == 1:
            split[1].append(e)
        else:
            split[2].append(e)

    Jp = [(x, y) for x, y in J if (x in Cs) == (y in Cs)]
    dJp = [0] * n
    for x, y in Jp:
        dJp[x] += 1
        dJp[y] += 1

    Q = q_set(G, P, p)
    shadow_B1 = shadow_graph(Hypergraph3(n, B1)).as_set()

    # exact identities, checked on every report
    if set(C1) | set(C2) != Cs or set(C1) & set(C2):
        raise AssertionError("C1 and C2 do not partition C")
    if Cs | Ds != set(a1) or Cs & Ds:
        raise AssertionError("C and D do not partition A1")
    if sum(len(s) for s in split) != len(B1):
        raise AssertionError("B1 split is not a partition of B1")
    if len(Fh) != len(dec_F.crossing) + sum(len(b) for b in dec_F.b):
        raise AssertionError("|F| != |F[Pi]| + sum |B_i|")

    b_sizes = tuple(len(b) for b in dec_F.b)
    nM, nB1, nC1, nC2 = len(M), b_sizes[0], len(C1), len(C2)
    delta, eps3 = float(constants.delta), float(constants.eps3)
    checks = {
        "cond_i_small_B": sum(b_sizes) <= delta * p * n ** 3,
        "cond_ii_shadow_B1_disjoint_Q": not (shadow_B1 & Q.as_set()),
        "B1_is_largest": nB1 >= max(b_sizes[1], b_sizes[2]),
        "crossing_plus_3B1_bound": len(dec_F.crossing) + 3 * nB1 <= len(dec_G.crossing),
        "M_exceeds_3B1": nB1 == 0 or nM > 3 * nB1,
        "bound_C_size": len(C) <= eps3 * n,
        "bound_M_from_C1": nM >= 20 * p * n * n * nC1,
        "J_prime_max_degree_ok": max(dJp, default=0) <= eps1 * n,
        "bound_M_from_J_prime": nM >= 20 * p * n * len(Jp),
        "bound_M_from_C2": nM >= p * n * n * nC2 / 20,
        "split1_third": 3 * len(split[0]) >= nB1,
        "split2_third": 3 * len(split[1]) >= nB1,
        "split3_third": 3 * len(split[2]) >= nB1,
    }
    thresholds = {
        "C_min_J_degree": c_thr,
        "C1_min_crossing_F_degree": c1_thr,
        "Q_common_crossing_degree": 0.8 * n * n * p * p / 9,
        "delta_p_n3": delta * p * n ** 3,
        "eps3_n": eps3 * n,
    }
    return StructureReport(
        n=n, p=p, size_G=len(G), size_F=len(Fh),
        crossing_G=len(dec_G.crossing), crossing_F=len(dec_F.crossing),
        M=nM, B=b_sizes, J=len(J), C=tuple(C), C1=tuple(C1), C2=tuple(C2), D=tuple(D),
        Q=len(Q), B1_split=tuple(len(s) for s in split),
        J_prime=len(Jp), J_prime_max_degree=max(dJp, default=0),
        thresholds=thresholds, checks=checks,
    )


def count_f5hat(G: Hypergraph3, B1: Iterable[int], P: TriPartition) -> int:
    """Number of 4-sets {w1, w2, y, z} such that some e in B1 contains w1, w2
    from the first class but neither y nor z, and w1yz, w2yz are crossing edges of G."""
    idx = _edge_indices(G, B1)
    cls = P.assignment
    thirds: dict[tuple[int, int], set[int]] = {}
    for i in idx:
        e = G.edges[i]
        inside = [v for v in e if cls[v] == 0]
        if len(inside) < 2:
            raise PreconditionError(f"edge {list(e)} has fewer than two vertices in the first class")
        for w1, w2 in combinations(inside, 2):
            (t,) = (v for v in e if v not in (w1, w2))
            thirds.setdefault((w1, w2), set()).add(t)
    total = 0
    links: dict[int, frozenset] = {}
    for (w1, w2), ts in thirds.items():
        for w in (w1, w2):
            if w not in links:
                links[w] = crossing_link(G, P, w).as_set()
        for y, z in links[w1] & links[w2]:
            if any(t != y and t != z for t in ts):
                total += 1
    return total


@dataclass(frozen=True)
class KeyLemmaGap:
    t: int
    crossing: int
    q_size: int
    delta: float
    n: int
    p: float

    @property
    def gap(self) -> float:
        return self.t - self.crossing - self.q_size * self.delta * self.n ** 2 * self.p ** 2


def key_lemma_gap(G: Hypergraph3, P: TriPartition, p: float,
                  delta: Optional[float] = None, limit_n: int = EXACT_LIMIT_N) -> KeyLemmaGap:
    """t(G) - |G[P]| - |Q(P)| delta n^2 p^2, with t computed exactly."""
    _check_p(p)
    if delta is None:
        delta = float(CONSTANTS.delta)
    _, t = max_tripartite_exact(G, limit_n)
    return KeyLemmaGap(t, crossing_count(G, P), len(q_set(G, P, p)), float(delta), G.n, p)

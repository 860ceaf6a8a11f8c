"""Census of F5 and K4^- copies, solver constraints and the untouched-K4^- witness.

F5 has edges abc, ade, bde.  Its two edges sharing a pair fix {d, e}, so an
edge triple carries at most one role assignment; with a<b and d<e it is unique.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from . import _backend
from .core import Hypergraph3, bits_to_list


@dataclass(frozen=True, order=True)
class F5Copy:
    a: int
    b: int
    c: int
    d: int
    e: int
    edge_indices: tuple[int, int, int]  # (abc, ade, bde)

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.a, self.b, self.c, self.d, self.e)

    def constraint(self) -> tuple[int, int, int]:
        return tuple(sorted(self.edge_indices))


@dataclass(frozen=True, order=True)
class K4MinusCopy:
    vertices: tuple[int, int, int, int]
    edge_indices: tuple[int, int, int]


def enumerate_f5(H: Hypergraph3) -> list[F5Copy]:
    """Every F5 copy once, ordered by its sorted edge-index triple."""
    raw = _backend.kernels.f5_copies(H.n, H.edges)
    copies = [F5Copy(a, b, c, d, e, (i1, i2, i3)) for a, b, c, d, e, i1, i2, i3 in raw]
    copies.sort(key=lambda f: (f.constraint(), f))
    return copies


def count_f5(H: Hypergraph3) -> int:
    return len(_backend.kernels.f5_copies(H.n, H.edges))


def is_f5_free(H: Hypergraph3) -> bool:
    # short-circuit search: some pair (d, e) with two co-neighbours a, b
    # such that ab lies in an edge avoiding d and e
    bits = H.pair_bits
    for (d, e), nb in bits.items():
        if nb & (nb - 1) == 0:
            continue
        avoid = (1 << d) | (1 << e)
        for a, b in combinations(bits_to_list(nb), 2):
            if bits.get((a, b), 0) & ~avoid:
                return False
    return True


def conflict_constraints(H: Hypergraph3) -> list[tuple[int, int, int]]:
    """Sorted, deduplicated edge-index triples of all F5 copies."""
    raw = _backend.kernels.f5_copies(H.n, H.edges)
    return sorted({tuple(sorted(r[5:])) for r in raw})


def f5_edge_mask(H: Hypergraph3) -> list[bool]:
    """``mask[i]`` is True iff edge i lies in some F5 copy."""
    mask = [False] * len(H)
    for r in _backend.kernels.f5_copies(H.n, H.edges):
        mask[r[5]] = mask[r[6]] = mask[r[7]] = True
    return mask


def enumerate_k4minus(H: Hypergraph3) -> list[K4MinusCopy]:
    """Every 3-edge subset spanning exactly 4 vertices, ordered by edge indices."""
    quads = set()
    for (u, v), nb in H.pair_bits.items():
        if nb & (nb - 1) == 0:
            continue
        for x, y in combinations(bits_to_list(nb), 2):
            quads.add(tuple(sorted((u, v, x, y))))
    index = H._index
    out = []
    for q in quads:
        present = [index[t] for t in combinations(q, 3) if t in index]
        for trio in combinations(sorted(present), 3):
            out.append(K4MinusCopy(q, trio))
    out.sort(key=lambda k: (k.edge_indices, k.vertices))
    return out


def untouched_k4minus_witness(H: Hypergraph3) -> Optional[K4MinusCopy]:
    """The K4^- copy with least edge indices none of whose edges is in an F5."""
    in_f5 = f5_edge_mask(H)
    for k in enumerate_k4minus(H):
        if not any(in_f5[i] for i in k.edge_indices):
            return k
    return None

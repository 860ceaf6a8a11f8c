"""Canonical 3-uniform hypergraphs, pair graphs and their link/shadow primitives.

Vertices are the integers ``0..n-1``.  Edges are stored as increasing triples
and the edge list is kept in lexicographic order, so an edge index is a stable
name for an edge of a given host.
"""
from __future__ import annotations

import json
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

from .errors import InvalidPairError, ParseError, VertexRangeError

Triple = tuple[int, int, int]
Pair = tuple[int, int]


class Hypergraph3:
    """Immutable 3-uniform hypergraph on ``n`` labelled vertices.

    The constructor accepts triples in any vertex order and any list order and
    canonicalizes them.  Repeated vertices, vertices outside ``[0, n)`` and
    duplicate triples raise :class:`ParseError` naming the offending edge.
    """

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        n = int(n)
        if n < 0:
            raise ParseError(f"vertex count must be non-negative, got {n}")
        canon = []
        for raw in edges:
            t = tuple(sorted(int(x) for x in raw))
            if len(t) != 3:
                raise ParseError(f"edge {list(raw)} does not have exactly 3 vertices")
            if t[0] == t[1] or t[1] == t[2]:
                raise ParseError(f"edge {list(raw)} repeats a vertex")
            if t[0] < 0 or t[2] >= n:
                raise ParseError(f"edge {list(raw)} has a vertex outside [0, {n})")
            canon.append(t)
        canon.sort()
        for prev, cur in zip(canon, canon[1:]):
            if prev == cur:
                raise ParseError(f"duplicate edge {list(cur)}")
        self._n = n
        self._edges: tuple[Triple, ...] = tuple(canon)

    @classmethod
    def complete(cls, n: int) -> "Hypergraph3":
        return cls(n, combinations(range(n), 3))

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> tuple[Triple, ...]:
        return self._edges

    def __len__(self) -> int:
        return len(self._edges)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._edges)

    def __contains__(self, triple) -> bool:
        return tuple(sorted(triple)) in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph3):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Hypergraph3(n={self._n}, edges={len(self._edges)})"

    def index(self, triple) -> int:
        """Position of ``triple`` in the canonical edge list (KeyError if absent)."""
        return self._index[tuple(sorted(triple))]

    def subhypergraph(self, edge_indices: Iterable[int]) -> "Hypergraph3":
        """The hypergraph on the same vertex set keeping only the given edges."""
        return Hypergraph3(self._n, (self._edges[i] for i in sorted(set(edge_indices))))

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self._n:
            raise VertexRangeError(f"vertex {v} outside [0, {self._n})")

    def check_pair(self, u: int, v: int) -> None:
        self.check_vertex(u)
        self.check_vertex(v)
        if u == v:
            raise InvalidPairError(f"pair needs two distinct vertices, got ({u}, {v})")

    @cached_property
    def _index(self) -> dict[Triple, int]:
        return {e: i for i, e in enumerate(self._edges)}

    @cached_property
    def incidence(self) -> list[list[int]]:
        """For each vertex, the indices of the edges containing it (increasing)."""
        inc: list[list[int]] = [[] for _ in range(self._n)]
        for i, (a, b, c) in enumerate(self._edges):
            inc[a].append(i)
            inc[b].append(i)
            inc[c].append(i)
        return inc

    @cached_property
    def pair_bits(self) -> dict[Pair, int]:
        """Co-neighbourhood bitsets: ``pair_bits[(u, v)]`` has bit ``x`` set iff uvx is an edge."""
        bits: dict[Pair, int] = {}
        for a, b, c in self._edges:
            bits[(a, b)] = bits.get((a, b), 0) | (1 << c)
            bits[(a, c)] = bits.get((a, c), 0) | (1 << b)
            bits[(b, c)] = bits.get((b, c), 0) | (1 << a)
        return bits

    def codegree_bits(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        return self.pair_bits.get((u, v), 0)


class PairGraph:
    """Immutable simple graph stored as a sorted tuple of pairs ``(u, v)`` with ``u < v``."""

    def __init__(self, n: int, pairs: Iterable[Iterable[int]] = ()):
        self._n = int(n)
        canon = set()
        for raw in pairs:
            u, v = sorted(int(x) for x in raw)
            if u == v:
                raise InvalidPairError(f"loop ({u}, {v}) is not a pair")
            if u < 0 or v >= self._n:
                raise VertexRangeError(f"pair ({u}, {v}) outside [0, {self._n})")
            canon.add((u, v))
        self._pairs: tuple[Pair, ...] = tuple(sorted(canon))

    @property
    def n(self) -> int:
        return self._n

    @property
    def pairs(self) -> tuple[Pair, ...]:
        return self._pairs

    def __len__(self) -> int:
        return len(self._pairs)

    def __iter__(self) -> Iterator[Pair]:
        return iter(self._pairs)

    def __contains__(self, pair) -> bool:
        return tuple(sorted(pair)) in self._set

    def __eq__(self, other) -> bool:
        if not isinstance(other, PairGraph):
            return NotImplemented
        return self._n == other._n and self._pairs == other._pairs

    def __hash__(self) -> int:
        return hash((self._n, self._pairs))

    def __repr__(self) -> str:
        return f"PairGraph(n={self._n}, pairs={list(self._pairs)})"

    @cached_property
    def _set(self) -> frozenset[Pair]:
        return frozenset(self._pairs)

    def as_set(self) -> frozenset[Pair]:
        return self._set

    def degrees(self) -> list[int]:
        deg = [0] * self._n
        for u, v in self._pairs:
            deg[u] += 1
            deg[v] += 1
        return deg

    def neighbors(self, v: int) -> set[int]:
        return {b if a == v else a for a, b in self._pairs if v in (a, b)}


def degree(H: Hypergraph3, v: int) -> int:
    H.check_vertex(v)
    return len(H.incidence[v])


def link_graph(H: Hypergraph3, v: int) -> PairGraph:
    H.check_vertex(v)
    return PairGraph(H.n, ([x for x in H.edges[i] if x != v] for i in H.incidence[v]))


def co_neighborhood(H: Hypergraph3, u: int, v: int) -> frozenset[int]:
    H.check_pair(u, v)
    return frozenset(bits_to_list(H.codegree_bits(u, v)))


def common_link(H: Hypergraph3, u: int, v: int) -> PairGraph:
    """Pairs ``xy`` such that both ``xyu`` and ``xyv`` are edges."""
    H.check_pair(u, v)
    lu = link_graph(H, u).as_set()
    lv = link_graph(H, v).as_set()
    return PairGraph(H.n, lu & lv)


def shadow_graph(H: Hypergraph3) -> PairGraph:
    return PairGraph(H.n, H.pair_bits.keys())


def bits_to_list(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


# -- JSON ---------------------------------------------------------------------

def encode(H: Hypergraph3) -> str:
    """Canonical JSON text; this exact layout is what golden files store."""
    return json.dumps({"n": H.n, "edges": [list(e) for e in H.edges]})


def decode(text: str) -> Hypergraph3:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise ParseError('expected an object with keys "n" and "edges"')
    n, edges = doc["n"], doc["edges"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ParseError(f'"n" must be an integer, got {n!r}')
    if not isinstance(edges, list):
        raise ParseError('"edges" must be a list')
    for e in edges:
        if not isinstance(e, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in e):
            raise ParseError(f"edge {e!r} is not a list of integers")
    return Hypergraph3(n, edges)


def load(path) -> Hypergraph3:
    with open(path, encoding="utf-8") as fh:
        return decode(fh.read())


def dump(H: Hypergraph3, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(encode(H) + "\n")

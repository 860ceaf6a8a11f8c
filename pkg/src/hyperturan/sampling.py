"""Bit-reproducible sampling of G^3(n, p) and the threshold helpers.

Draws use a splitmix64 stream: the state starts at the seed, advances by the
golden-ratio constant once per triple (triples in lexicographic order), and
each advanced state is passed through the splitmix64 finalizer.  A triple is
an edge iff ``z / 2**64 < p``.  Nothing here depends on a library RNG, so the
same seed gives the same hypergraph in any language.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import _backend
from .core import Hypergraph3
from .errors import DomainError

MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SampleSpec:
    n: int
    p: float
    seed: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"n must be non-negative, got {self.n}")
        if not (0.0 <= self.p <= 1.0):
            raise DomainError(f"p must lie in [0, 1], got {self.p}")
        if not 0 <= self.seed <= MASK64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


def mix64(z: int) -> int:
    """splitmix64 finalizer on a 64-bit word."""
    return _backend.kernels.mix64(z & MASK64)


def trial_seed(master_seed: int, trial_index: int) -> int:
    return mix64((master_seed ^ trial_index) & MASK64)


def sample(spec: SampleSpec) -> Hypergraph3:
    return Hypergraph3(spec.n, _backend.kernels.sample_edges(spec.n, float(spec.p), spec.seed))


def sample_gnp(n: int, p: float, seed: int = 0) -> Hypergraph3:
    return sample(SampleSpec(n, p, seed))


def threshold_p(kind: str, K: float, n: int) -> float:
    """``K ln n / n`` (upper) or ``K sqrt(ln n) / n`` (lower), clamped to [0, 1]."""
    if n < 2:
        raise DomainError(f"threshold needs n >= 2, got {n}")
    if kind == "upper":
        p = K * math.log(n) / n
    elif kind == "lower":
        p = K * math.sqrt(math.log(n)) / n
    else:
        raise DomainError(f"kind must be 'upper' or 'lower', got {kind!r}")
    return min(1.0, max(0.0, p))

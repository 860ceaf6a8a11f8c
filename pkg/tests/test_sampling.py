import math

import pytest

from hyperturan import Hypergraph3, SampleSpec, encode, sample, threshold_p
from hyperturan.errors import DomainError
from hyperturan.sampling import mix64, trial_seed

from oracles import naive_sample_edges, splitmix_draws


def test_reference_stream():
    # published splitmix64 outputs for seed 0
    assert splitmix_draws(0, 3) == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_complete_at_p1():
    H = sample(SampleSpec(5, 1.0, 123))
    assert H == Hypergraph3.complete(5) and len(H) == 10


def test_empty_at_p0():
    assert len(sample(SampleSpec(20, 0.0, 99))) == 0


def test_deterministic_bytes(backend):
    spec = SampleSpec(30, 0.5, 42)
    assert encode(sample(spec)) == encode(sample(spec))


@pytest.mark.parametrize("n,p,seed", [(7, 0.5, 0), (12, 0.3, 42), (15, 0.05, 2**64 - 1), (20, 0.9, 7)])
def test_matches_independent_draw_procedure(backend, n, p, seed):
    assert list(sample(SampleSpec(n, p, seed)).edges) == naive_sample_edges(n, p, seed)


def test_frozen_small_sample(backend):
    assert list(sample(SampleSpec(6, 0.5, 42)).edges) == [
        (0, 1, 3), (0, 1, 4), (0, 1, 5), (0, 2, 3), (0, 2, 5), (0, 3, 5),
        (1, 2, 3), (1, 2, 4), (1, 4, 5), (2, 3, 4), (2, 3, 5), (2, 4, 5)]


def test_trial_seed_is_mixed_xor():
    draws = splitmix_draws((5 ^ 3) - 0x9E3779B97F4A7C15 & (2**64 - 1), 1)
    assert trial_seed(5, 3) == draws[0] == mix64(5 ^ 3)


@pytest.mark.parametrize("p", [-0.1, 1.5])
def test_bad_probability(p):
    with pytest.raises(DomainError):
        SampleSpec(5, p, 0)


def test_mean_edge_count():
    n, p, seeds = 20, 0.3, 200
    m = math.comb(n, 3)
    counts = [len(sample(SampleSpec(n, p, s))) for s in range(seeds)]
    mean = sum(counts) / seeds
    sd_of_mean = math.sqrt(m * p * (1 - p) / seeds)
    assert abs(mean - p * m) < 5 * sd_of_mean


def test_pair_cooccurrence_is_independent():
    # chi-square smoke test on two fixed triples over many seeds
    n, p, seeds = 6, 0.5, 2000
    a, b = (0, 1, 2), (3, 4, 5)
    table = [[0, 0], [0, 0]]
    for s in range(seeds):
        H = sample(SampleSpec(n, p, s))
        table[a in H][b in H] += 1
    expected = seeds / 4
    chi2 = sum((table[i][j] - expected) ** 2 / expected for i in (0, 1) for j in (0, 1))
    assert chi2 < 16.27  # 3 dof, p = 0.001


class TestThreshold:
    def test_upper(self):
        assert threshold_p("upper", 1, 8) == pytest.approx(math.log(8) / 8, abs=1e-12)
        assert threshold_p("upper", 1, 8) == pytest.approx(0.2599, abs=5e-5)

    def test_lower(self):
        assert threshold_p("lower", 0.1, 100) == pytest.approx(0.002146, abs=5e-7)

    def test_clamped(self):
        assert threshold_p("upper", 1000, 10) == 1.0

    @pytest.mark.parametrize("n", [0, 1])
    def test_small_n(self, n):
        with pytest.raises(DomainError):
            threshold_p("upper", 1, n)

    def test_unknown_kind(self):
        with pytest.raises(DomainError):
            threshold_p("middle", 1, 10)

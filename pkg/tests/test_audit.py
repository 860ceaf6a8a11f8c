import math
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperturan import (CONSTANTS, Hypergraph3, SampleSpec, TriPartition, chernoff_constant,
                        concentration_report, count_f5hat, crossing_count, decompose, heavy_pairs,
                        key_lemma_gap, max_f5free_bnb, max_tripartite_exact, max_tripartite_local,
                        q_set, sample, structure_report)
from hyperturan.errors import CapacityError, ContainmentError, DomainError, PreconditionError

from conftest import random_tripartite

K4 = Hypergraph3.complete(4)
P_K4 = TriPartition([0, 0, 1, 2])


class TestConstants:
    def test_exact_rationals(self):
        c = CONSTANTS
        assert c.eps1 == Fraction(1, 960) and c.eps2 == Fraction(1, 400)
        assert c.delta == c.eps1 ** 2 * c.eps2 / 17280
        assert c.eps3 == 108 * c.delta / c.eps1
        assert (c.eps, c.zeta, c.gamma, c.alpha, c.phi) == (
            Fraction(1, 10), Fraction(1, 1000), Fraction(1, 10), Fraction(8, 9), Fraction(1, 1000))

    def test_ordering_and_sign(self):
        assert CONSTANTS.eps3 < CONSTANTS.eps1
        assert all(isinstance(v, Fraction) and v > 0 for v in CONSTANTS.as_dict().values())

    def test_json_is_exact(self):
        doc = CONSTANTS.to_json()
        assert Fraction(doc["delta"]["exact"]) == CONSTANTS.delta
        assert doc["eps3"]["exact"] == "1/61440000"


class TestChernoff:
    def test_one(self):
        assert chernoff_constant(1) == pytest.approx(2 * math.log(2) - 1, abs=1e-12)
        assert chernoff_constant(1) == pytest.approx(0.3862943611, abs=1e-10)

    def test_tenth(self):
        assert chernoff_constant(0.1) == pytest.approx(0.0048412, abs=1e-7)

    def test_near_zero(self):
        assert 0 < chernoff_constant(1e-6) < 1e-12

    @pytest.mark.parametrize("eps", [0, -1])
    def test_domain(self, eps):
        with pytest.raises(DomainError):
            chernoff_constant(eps)

    @given(st.floats(1e-4, 50))
    def test_below_half_square(self, eps):
        c = chernoff_constant(eps)
        assert c <= eps * eps / 2
        if c == eps * eps / 2:
            assert (1 + eps) * math.log1p(eps) - eps >= eps * eps / 2


def _row(rows, name):
    return next(r for r in rows if r.quantity == name)


class TestConcentration:
    def test_complete(self):
        n = 20
        rows = concentration_report(Hypergraph3.complete(n), 1.0, 0.1)
        r = _row(rows, "codegree")
        assert r.observed_min == r.observed_max == n - 2 and r.passes

    def test_empty_fails(self):
        rows = concentration_report(Hypergraph3(10), 0.5, 0.1, TriPartition([v % 3 for v in range(10)]))
        assert len(rows) == 4
        assert all(r.observed_max == 0 and not r.passes for r in rows)

    def test_sampled_codegree(self):
        rows = concentration_report(sample(SampleSpec(100, 0.5, 3)), 0.5, 0.5)
        r = _row(rows, "codegree")
        assert r.passes and r.band_low == 25 and r.band_high == 75

    def test_crossing_row_only_with_partition(self):
        H = Hypergraph3.complete(9)
        assert [r.quantity for r in concentration_report(H, 1.0, 0.1)] == [
            "codegree", "common_degree", "degree"]
        r = _row(concentration_report(H, 1.0, 0.1, TriPartition([v % 3 for v in range(9)])),
                 "crossing_degree")
        assert r.observed_min == r.observed_max == 9 and r.passes

    def test_domain(self):
        with pytest.raises(DomainError):
            concentration_report(K4, 0.0, 0.1)


class TestHeavyPairs:
    def test_empty(self):
        assert heavy_pairs(Hypergraph3(8), {0, 1}, 0.1, 0.5) == []

    def test_complete(self):
        n, A = 12, set(range(5))
        got = heavy_pairs(Hypergraph3.complete(n), A, 0.1, 1.0)  # 2 eps n = 2.4 < 5
        assert got == list(combinations(range(5, n), 2))

    def test_sampled_recount(self):
        n, p, eps = 50, 0.3, 0.2
        H = sample(SampleSpec(n, p, 11))
        A = set(range(10))
        edges = set(H.edges)
        expected = []
        for u, v in combinations(range(n), 2):
            if u in A or v in A:
                continue
            hits = sum(1 for a in A if tuple(sorted((u, v, a))) in edges)
            if hits > 2 * eps * p * n:
                expected.append((u, v))
        assert heavy_pairs(H, A, eps, p) == expected


class TestStructureReport:
    def test_tripartite_host(self):
        rng = np.random.default_rng(8)
        H, cls = random_tripartite(rng, 9, 0.7)
        rep = structure_report(H, range(len(H)), TriPartition(cls), 0.7)
        assert rep.B == (0, 0, 0) and rep.M == 0 and rep.C == () and rep.J == 0
        assert all(rep.checks[k] for k in ("crossing_plus_3B1_bound", "M_exceeds_3B1", "bound_C_size",
                                           "split1_third", "split2_third", "split3_third", "cond_ii_shadow_B1_disjoint_Q"))

    def test_complete4(self):
        rep = structure_report(K4, range(4), P_K4, 0.5)
        assert rep.B == (2, 0, 0) and rep.M == 0 and rep.J == 1
        assert rep.crossing_F == 2 and rep.crossing_G == 2
        assert rep.checks["crossing_plus_3B1_bound"] is False

    def test_sampled_identity(self):
        G = sample(SampleSpec(12, 0.8, 5))
        P, _ = max_tripartite_exact(G)
        # exact search is out of reach here; any F5-free F exercises the report
        F = max_f5free_bnb(G, budget=20_000, incumbent=decompose(G, P).crossing)
        rep = structure_report(G, F.chosen, P, 0.8)
        assert rep.crossing_F + sum(rep.B) == rep.size_F == F.size
        assert sorted(rep.C1 + rep.C2) == sorted(rep.C)
        assert sorted(rep.C + rep.D) == sorted(P.classes()[0])
        assert sum(rep.B1_split) == rep.B[0]
        assert rep.M == rep.crossing_G - rep.crossing_F

    def test_accepts_subhypergraph(self):
        F = Hypergraph3(4, [(0, 2, 3), (1, 2, 3)])
        assert structure_report(K4, F, P_K4, 0.5).size_F == 2

    def test_f5_in_f(self):
        with pytest.raises(PreconditionError):
            structure_report(Hypergraph3.complete(5), range(10), TriPartition([0, 0, 1, 1, 2]), 0.5)

    def test_not_contained(self):
        with pytest.raises(ContainmentError):
            structure_report(Hypergraph3(4, [(0, 1, 2)]), Hypergraph3(4, [(0, 1, 3)]), P_K4, 0.5)
        with pytest.raises(ContainmentError):
            structure_report(K4, [9], P_K4, 0.5)

    def test_json(self):
        doc = structure_report(K4, range(4), P_K4, 0.5).to_json()
        assert doc["B"] == [2, 0, 0] and isinstance(doc["checks"], dict)


def naive_f5hat(G, B1, P):
    cls = P.assignment
    edges = set(G.edges)
    crossing = {e for e in edges if len({cls[v] for v in e}) == 3}
    b1 = [G.edges[i] for i in B1]
    count = 0
    for quad in combinations(range(G.n), 4):
        ok = False
        for w1, w2, y, z in permutations(quad):
            if not (cls[w1] == cls[w2] == 0):
                continue
            if not any(w1 in e and w2 in e and y not in e and z not in e for e in b1):
                continue
            if tuple(sorted((w1, y, z))) in crossing and tuple(sorted((w2, y, z))) in crossing:
                ok = True
                break
        count += ok
    return count


class TestF5Hat:
    def test_tripartite_empty_b1(self):
        rng = np.random.default_rng(1)
        H, cls = random_tripartite(rng, 9, 0.8)
        assert count_f5hat(H, [], TriPartition(cls)) == 0

    def test_third_vertex_must_avoid_yz(self):
        # the only candidate pair yz = 23 meets the B1 edge 012 at vertex 2
        G = Hypergraph3(4, [(0, 1, 2), (0, 2, 3), (1, 2, 3)])
        assert count_f5hat(G, [0], P_K4) == 0 == naive_f5hat(G, [0], P_K4)

    def test_one_copy(self):
        G = Hypergraph3(5, [(0, 1, 4), (0, 2, 3), (1, 2, 3)])
        P = TriPartition([0, 0, 1, 2, 2])
        assert count_f5hat(G, [G.index((0, 1, 4))], P) == 1

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            count_f5hat(K4, [K4.index((0, 2, 3))], P_K4)

    def test_matches_naive_loop(self):
        rng = np.random.default_rng(50)
        done = 0
        while done < 50:
            n = int(rng.integers(5, 9))
            G = Hypergraph3(n, [t for t in combinations(range(n), 3) if rng.random() < 0.35])
            if len(G) > 20:
                continue
            P = TriPartition(rng.integers(0, 3, n))
            B1 = decompose(G, P).b1
            assert count_f5hat(G, B1, P) == naive_f5hat(G, B1, P)
            done += 1


class TestKeyLemmaGap:
    def test_optimal_partition(self):
        H = Hypergraph3.complete(9)
        P = TriPartition([v % 3 for v in range(9)])
        g = key_lemma_gap(H, P, 1.0)
        assert g.q_size == 0 and g.gap == 0

    def test_suboptimal_partition(self):
        H = Hypergraph3.complete(9)
        P = TriPartition([0, 0, 0, 1, 1, 1, 1, 2, 2])
        g = key_lemma_gap(H, P, 0.5)  # threshold 0.8*81*0.25/9 = 1.8 < 8 common links
        assert g.q_size == 0 and g.gap > 0

    def test_sampled_worst_balanced(self):
        n, p = 12, 0.9
        G = sample(SampleSpec(n, p, 2))
        # worst balanced partition among the seeded balanced candidates
        cands = []
        for r in range(30):
            perm = np.random.default_rng(r).permutation(n)
            cls = [0] * n
            for i, v in enumerate(perm):
                cls[int(v)] = i % 3
            cands.append(TriPartition(cls))
        P = min(cands, key=lambda Q: (crossing_count(G, Q), Q.assignment))
        g = key_lemma_gap(G, P, p)
        t = max_tripartite_exact(G)[1]
        q = len(q_set(G, P, p))
        expected = t - crossing_count(G, P) - q * float(CONSTANTS.delta) * n * n * p * p
        assert g.gap == expected and g.t == t and g.q_size == q
        assert g.gap >= 0

    def test_capacity(self):
        with pytest.raises(CapacityError):
            key_lemma_gap(Hypergraph3(17), TriPartition([0] * 17), 0.5)

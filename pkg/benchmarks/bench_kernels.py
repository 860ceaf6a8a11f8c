"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""
import argparse
import time

from hyperturan import Hypergraph3, SampleSpec, _backend, sample
from hyperturan.census import conflict_constraints


def _best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(quick):
    big = sample(SampleSpec(40, 0.3, 1))
    k = Hypergraph3.complete(7 if quick else 8)
    tri = Hypergraph3.complete(10 if quick else 12)
    cons = conflict_constraints(k)
    return [
        ("sample n=60 p=0.5", lambda kern: kern.sample_edges(60, 0.5, 7)),
        (f"f5 census n=40 m={len(big)}", lambda kern: kern.f5_copies(big.n, big.edges)),
        (f"exact t K{tri.n}", lambda kern: kern.tripartite_exact(tri.n, tri.edges)),
        (f"bnb K{k.n}", lambda kern: kern.bnb_f5free(len(k), cons, [], 10_000_000)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller instances")
    args = ap.parse_args()

    names = _backend.available()
    if "compiled" not in names:
        print("compiled extension not built; only the python backend is available")
    print(f"{'workload':<28}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for label, fn in workloads(args.quick):
        times = {n: _best_of(lambda: fn(_backend._BACKENDS[n]), args.repeat) for n in names}
        line = f"{label:<28}" + "".join(f"{times[n]:>11.4f}s" for n in names)
        if len(names) == 2:
            line += f"{times['python'] / times['compiled']:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()

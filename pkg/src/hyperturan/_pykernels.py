"""Pure-Python implementations of the hot kernels.

``_ckernels`` (Cython) implements the same functions with the same visiting
order, so both backends return identical results, including search-node
counts.  Inputs are plain sequences; callers canonicalize outputs.
"""
from itertools import combinations

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15
TWO_POW_M64 = 2.0 ** -64

UNDECIDED, IN, OUT = 0, 1, 2


def mix64(z):
    z &= MASK64
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & MASK64
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & MASK64
    z ^= z >> 31
    return z


def sample_edges(n, p, seed):
    """Triples of [n] in lexicographic order, each kept iff its draw is below p."""
    if p <= 0.0 or n < 3:
        return []
    if p >= 1.0:
        return list(combinations(range(n), 3))
    state = seed & MASK64
    out = []
    for a in range(n - 2):
        for b in range(a + 1, n - 1):
            for c in range(b + 1, n):
                state = (state + GOLDEN) & MASK64
                z = state
                z ^= z >> 30
                z = (z * 0xBF58476D1CE4E5B9) & MASK64
                z ^= z >> 27
                z = (z * 0x94D049BB133111EB) & MASK64
                z ^= z >> 31
                if float(z) * TWO_POW_M64 < p:
                    out.append((a, b, c))
    return out


def _pair_lists(edges):
    nbr = {}
    for i, (a, b, c) in enumerate(edges):
        nbr.setdefault((a, b), []).append((c, i))
        nbr.setdefault((a, c), []).append((b, i))
        nbr.setdefault((b, c), []).append((a, i))
    return nbr


def f5_copies(n, edges):
    """All F5 occurrences as ``(a, b, c, d, e, i_abc, i_ade, i_bde)`` with a<b, d<e.

    ``edges`` must be canonical (sorted triples, sorted list).  Output order is
    by (d, e), then (a, b), then c.
    """
    nbr = _pair_lists(edges)
    out = []
    for (d, e) in sorted(nbr):
        lst = nbr[(d, e)]
        if len(lst) < 2:
            continue
        for (a, ia), (b, ib) in combinations(lst, 2):
            for c, ic in nbr.get((a, b), ()):
                if c != d and c != e:
                    out.append((a, b, c, d, e, ic, ia, ib))
    return out


def tripartite_exact(n, edges):
    """Maximum number of crossing edges over all 3-partitions of [n].

    Depth-first over restricted-growth class strings in lexicographic order,
    keeping only strict improvements, so the returned assignment is the
    lexicographically least optimal one.
    """
    if n == 0:
        return 0, []
    by_max = [[] for _ in range(n)]
    for a, b, c in edges:
        by_max[c].append((a, b))
    # rem[v] = number of edges whose largest vertex is > v
    rem = [0] * n
    for v in range(n - 2, -1, -1):
        rem[v] = rem[v + 1] + len(by_max[v + 1])
    cls = [0] * n
    best = [-1, None]

    def dfs(v, cur, used):
        if cur + rem[v] <= best[0]:
            return
        if v == n - 1:
            best[0] = cur
            best[1] = cls[:]
            return
        w = v + 1
        top = used + 1 if used < 2 else 2
        for c in range(top + 1):
            gain = 0
            for x, y in by_max[w]:
                cx = cls[x]
                cy = cls[y]
                if cx != cy and cx != c and cy != c:
                    gain += 1
            cls[w] = c
            dfs(w, cur + gain, used if c <= used else c)
        cls[w] = 0

    dfs(0, 0, 0)
    return best[0], best[1]


def bnb_f5free(m, constraints, incumbent, budget):
    """Maximum subset of range(m) containing no constraint triple entirely.

    Returns ``(chosen, complete, nodes)``.  ``incumbent`` is a feasible subset
    used as the starting lower bound.  ``complete`` is False when the node
    budget ran out before the search tree was exhausted.
    """
    k_count = len(constraints)
    cons = [tuple(c) for c in constraints]
    edge_cons = [[] for _ in range(m)]
    for k, (x, y, z) in enumerate(cons):
        edge_cons[x].append(k)
        edge_cons[y].append(k)
        edge_cons[z].append(k)

    st = [UNDECIDED] * m
    n_in = [0] * k_count
    n_out = [0] * k_count
    trail = []
    stamp = [0] * m
    counters = {"out": 0, "nodes": 0, "stamp": 0, "aborted": False}
    best = {"size": len(incumbent), "chosen": sorted(incumbent)}

    def assign(e, val):
        queue = [(e, val)]
        while queue:
            e, val = queue.pop()
            s = st[e]
            if s == val:
                continue
            if s != UNDECIDED:
                return False
            st[e] = val
            trail.append(e)
            if val == OUT:
                counters["out"] += 1
                for k in edge_cons[e]:
                    n_out[k] += 1
            else:
                # counters must stay consistent with the trail even on conflict
                clash = False
                for k in edge_cons[e]:
                    n_in[k] += 1
                    if n_out[k] == 0:
                        if n_in[k] == 3:
                            clash = True
                        elif n_in[k] == 2:
                            for f in cons[k]:
                                if st[f] == UNDECIDED:
                                    queue.append((f, OUT))
                if clash:
                    return False
        return True

    def undo(mark):
        while len(trail) > mark:
            e = trail.pop()
            if st[e] == OUT:
                counters["out"] -= 1
                for k in edge_cons[e]:
                    n_out[k] -= 1
            else:
                for k in edge_cons[e]:
                    n_in[k] -= 1
            st[e] = UNDECIDED

    def dfs():
        counters["nodes"] += 1
        if counters["nodes"] > budget:
            counters["aborted"] = True
            return
        # branch constraint: alive with fewest undecided edges, lowest index
        branch = -1
        for k in range(k_count):
            if n_out[k] == 0 and (branch < 0 or n_in[k] > n_in[branch]):
                branch = k
                if n_in[k] == 1:
                    break
        if branch < 0:
            kept = m - counters["out"]
            if kept > best["size"]:
                best["size"] = kept
                best["chosen"] = [e for e in range(m) if st[e] != OUT]
            return
        # upper bound: non-excluded edges minus a greedy packing of
        # alive constraints that are disjoint on their undecided edges
        counters["stamp"] += 1
        tag = counters["stamp"]
        packing = 0
        for want in (1, 0):
            for k in range(k_count):
                if n_out[k] != 0 or n_in[k] != want:
                    continue
                free = True
                for f in cons[k]:
                    if st[f] == UNDECIDED and stamp[f] == tag:
                        free = False
                        break
                if free:
                    packing += 1
                    for f in cons[k]:
                        if st[f] == UNDECIDED:
                            stamp[f] = tag
        if m - counters["out"] - packing <= best["size"]:
            return
        undecided = [f for f in cons[branch] if st[f] == UNDECIDED]
        mark = len(trail)
        for i in range(len(undecided)):
            ok = True
            for j in range(i):
                if not assign(undecided[j], IN):
                    ok = False
                    break
            if ok and assign(undecided[i], OUT):
                dfs()
            undo(mark)
            if not ok or counters["aborted"]:
                break

    ok = True
    for e in range(m):
        if not edge_cons[e]:
            ok = ok and assign(e, IN)
    if ok:
        dfs()
    return best["chosen"], not counters["aborted"], counters["nodes"]

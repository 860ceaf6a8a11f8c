# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; behaviour mirrors ``_pykernels`` exactly."""
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, calloc, free

from itertools import combinations

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef double TWO_POW_M64 = 5.421010862427522e-20

cdef enum:
    UNDECIDED = 0
    IN = 1
    OUT = 2


cdef inline uint64_t _mix(uint64_t z) nogil:
    z ^= z >> 30
    z *= 0xBF58476D1CE4E5B9ULL
    z ^= z >> 27
    z *= 0x94D049BB133111EBULL
    z ^= z >> 31
    return z


def mix64(z):
    return _mix(<uint64_t>(z & 0xFFFFFFFFFFFFFFFF))


def sample_edges(int n, double p, seed):
    if p <= 0.0 or n < 3:
        return []
    if p >= 1.0:
        return list(combinations(range(n), 3))
    cdef uint64_t state = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t z
    cdef int a, b, c
    out = []
    for a in range(n - 2):
        for b in range(a + 1, n - 1):
            for c in range(b + 1, n):
                state += GOLDEN
                z = _mix(state)
                if <double>z * TWO_POW_M64 < p:
                    out.append((a, b, c))
    return out


def f5_copies(int n, edges):
    cdef int m = len(edges)
    cdef int npairs = n * n
    cdef int *start = <int *>calloc(npairs + 1, sizeof(int))
    cdef int *fill = <int *>calloc(npairs, sizeof(int))
    cdef int *other = <int *>malloc((3 * m + 1) * sizeof(int))
    cdef int *eid = <int *>malloc((3 * m + 1) * sizeof(int))
    cdef int *ea = <int *>malloc((m + 1) * sizeof(int))
    cdef int *eb = <int *>malloc((m + 1) * sizeof(int))
    cdef int *ec = <int *>malloc((m + 1) * sizeof(int))
    cdef int i, a, b, c, d, e, pid, s, t, u, q, lo, hi
    out = []
    try:
        for i in range(m):
            a, b, c = edges[i]
            ea[i] = a
            eb[i] = b
            ec[i] = c
            start[a * n + b + 1] += 1
            start[a * n + c + 1] += 1
            start[b * n + c + 1] += 1
        for pid in range(npairs):
            start[pid + 1] += start[pid]
        # filling in edge order keeps every pair list sorted by third vertex
        for i in range(m):
            a = ea[i]; b = eb[i]; c = ec[i]
            pid = a * n + b
            other[start[pid] + fill[pid]] = c; eid[start[pid] + fill[pid]] = i; fill[pid] += 1
            pid = a * n + c
            other[start[pid] + fill[pid]] = b; eid[start[pid] + fill[pid]] = i; fill[pid] += 1
            pid = b * n + c
            other[start[pid] + fill[pid]] = a; eid[start[pid] + fill[pid]] = i; fill[pid] += 1
        for d in range(n):
            for e in range(d + 1, n):
                pid = d * n + e
                lo = start[pid]
                hi = start[pid + 1]
                if hi - lo < 2:
                    continue
                for s in range(lo, hi):
                    a = other[s]
                    for t in range(s + 1, hi):
                        b = other[t]
                        q = a * n + b
                        for u in range(start[q], start[q + 1]):
                            c = other[u]
                            if c != d and c != e:
                                out.append((a, b, c, d, e, eid[u], eid[s], eid[t]))
    finally:
        free(start); free(fill); free(other); free(eid)
        free(ea); free(eb); free(ec)
    return out


cdef class _Tripartite:
    cdef int n
    cdef int *bstart
    cdef int *bx
    cdef int *by
    cdef int *rem
    cdef int *cls
    cdef int *best_cls
    cdef int best

    cdef void dfs(self, int v, int cur, int used):
        cdef int w, c, top, gain, s, cx, cy
        if cur + self.rem[v] <= self.best:
            return
        if v == self.n - 1:
            self.best = cur
            for w in range(self.n):
                self.best_cls[w] = self.cls[w]
            return
        w = v + 1
        top = used + 1 if used < 2 else 2
        for c in range(top + 1):
            gain = 0
            for s in range(self.bstart[w], self.bstart[w + 1]):
                cx = self.cls[self.bx[s]]
                cy = self.cls[self.by[s]]
                if cx != cy and cx != c and cy != c:
                    gain += 1
            self.cls[w] = c
            self.dfs(w, cur + gain, used if c <= used else c)
        self.cls[w] = 0


def tripartite_exact(int n, edges):
    if n == 0:
        return 0, []
    cdef int m = len(edges)
    cdef _Tripartite T = _Tripartite()
    cdef int i, a, b, c, v
    T.n = n
    T.bstart = <int *>calloc(n + 2, sizeof(int))
    T.bx = <int *>malloc((m + 1) * sizeof(int))
    T.by = <int *>malloc((m + 1) * sizeof(int))
    T.rem = <int *>calloc(n + 1, sizeof(int))
    T.cls = <int *>calloc(n, sizeof(int))
    T.best_cls = <int *>calloc(n, sizeof(int))
    T.best = -1
    try:
        for i in range(m):
            T.bstart[edges[i][2] + 1] += 1
        for v in range(n):
            T.bstart[v + 1] += T.bstart[v]
        fill = [0] * n
        for i in range(m):
            a, b, c = edges[i]
            T.bx[T.bstart[c] + fill[c]] = a
            T.by[T.bstart[c] + fill[c]] = b
            fill[c] += 1
        for v in range(n - 2, -1, -1):
            T.rem[v] = T.rem[v + 1] + (T.bstart[v + 2] - T.bstart[v + 1])
        T.dfs(0, 0, 0)
        return T.best, [T.best_cls[v] for v in range(n)]
    finally:
        free(T.bstart); free(T.bx); free(T.by); free(T.rem)
        free(T.cls); free(T.best_cls)


cdef class _BnB:
    cdef int m, K
    cdef int *cons          # 3*K edge ids
    cdef int *ec_start      # CSR edge -> constraints
    cdef int *ec_list
    cdef char *st
    cdef int *n_in
    cdef int *n_out
    cdef int *trail
    cdef int trail_len
    cdef int *queue_e
    cdef char *queue_v
    cdef int64_t *stamp
    cdef int64_t tag
    cdef int out_count
    cdef int64_t nodes, budget
    cdef bint aborted
    cdef int best_size
    cdef char *best_keep

    cdef bint assign(self, int e0, char val0):
        cdef int qlen = 1, e, k, j, f
        cdef char val, s
        cdef bint clash
        self.queue_e[0] = e0
        self.queue_v[0] = val0
        while qlen > 0:
            qlen -= 1
            e = self.queue_e[qlen]
            val = self.queue_v[qlen]
            s = self.st[e]
            if s == val:
                continue
            if s != UNDECIDED:
                return False
            self.st[e] = val
            self.trail[self.trail_len] = e
            self.trail_len += 1
            if val == OUT:
                self.out_count += 1
                for j in range(self.ec_start[e], self.ec_start[e + 1]):
                    self.n_out[self.ec_list[j]] += 1
            else:
                # counters must stay consistent with the trail even on conflict
                clash = False
                for j in range(self.ec_start[e], self.ec_start[e + 1]):
                    k = self.ec_list[j]
                    self.n_in[k] += 1
                    if self.n_out[k] == 0:
                        if self.n_in[k] == 3:
                            clash = True
                        elif self.n_in[k] == 2:
                            for f in range(3):
                                if self.st[self.cons[3 * k + f]] == UNDECIDED:
                                    self.queue_e[qlen] = self.cons[3 * k + f]
                                    self.queue_v[qlen] = OUT
                                    qlen += 1
                if clash:
                    return False
        return True

    cdef void undo(self, int mark):
        cdef int e, j
        while self.trail_len > mark:
            self.trail_len -= 1
            e = self.trail[self.trail_len]
            if self.st[e] == OUT:
                self.out_count -= 1
                for j in range(self.ec_start[e], self.ec_start[e + 1]):
                    self.n_out[self.ec_list[j]] -= 1
            else:
                for j in range(self.ec_start[e], self.ec_start[e + 1]):
                    self.n_in[self.ec_list[j]] -= 1
            self.st[e] = UNDECIDED

    cdef void dfs(self):
        cdef int k, branch, e, f, i, j, want, packing, mark, nu
        cdef int und[3]
        cdef bint free_, ok
        self.nodes += 1
        if self.nodes > self.budget:
            self.aborted = True
            return
        branch = -1
        for k in range(self.K):
            if self.n_out[k] == 0 and (branch < 0 or self.n_in[k] > self.n_in[branch]):
                branch = k
                if self.n_in[k] == 1:
                    break
        if branch < 0:
            if self.m - self.out_count > self.best_size:
                self.best_size = self.m - self.out_count
                for e in range(self.m):
                    self.best_keep[e] = self.st[e] != OUT
            return
        self.tag += 1
        packing = 0
        for want in range(1, -1, -1):
            for k in range(self.K):
                if self.n_out[k] != 0 or self.n_in[k] != want:
                    continue
                free_ = True
                for f in range(3):
                    e = self.cons[3 * k + f]
                    if self.st[e] == UNDECIDED and self.stamp[e] == self.tag:
                        free_ = False
                        break
                if free_:
                    packing += 1
                    for f in range(3):
                        e = self.cons[3 * k + f]
                        if self.st[e] == UNDECIDED:
                            self.stamp[e] = self.tag
        if self.m - self.out_count - packing <= self.best_size:
            return
        nu = 0
        for f in range(3):
            e = self.cons[3 * branch + f]
            if self.st[e] == UNDECIDED:
                und[nu] = e
                nu += 1
        mark = self.trail_len
        for i in range(nu):
            ok = True
            for j in range(i):
                if not self.assign(und[j], IN):
                    ok = False
                    break
            if ok and self.assign(und[i], OUT):
                self.dfs()
            self.undo(mark)
            if not ok or self.aborted:
                break


def bnb_f5free(int m, constraints, incumbent, budget):
    cdef int K = len(constraints)
    cdef _BnB B = _BnB()
    cdef int k, e, j, x
    cdef bint ok
    B.m = m
    B.K = K
    B.cons = <int *>malloc((3 * K + 1) * sizeof(int))
    B.ec_start = <int *>calloc(m + 2, sizeof(int))
    B.ec_list = <int *>malloc((3 * K + 1) * sizeof(int))
    B.st = <char *>calloc(m + 1, sizeof(char))
    B.n_in = <int *>calloc(K + 1, sizeof(int))
    B.n_out = <int *>calloc(K + 1, sizeof(int))
    B.trail = <int *>malloc((m + 1) * sizeof(int))
    # one assign enqueues at most one edge per constraint of its seed edge
    B.queue_e = <int *>malloc((K + m + 2) * sizeof(int))
    B.queue_v = <char *>malloc((K + m + 2) * sizeof(char))
    B.stamp = <int64_t *>calloc(m + 1, sizeof(int64_t))
    B.best_keep = <char *>calloc(m + 1, sizeof(char))
    B.trail_len = 0
    B.tag = 0
    B.out_count = 0
    B.nodes = 0
    B.budget = budget
    B.aborted = False
    try:
        for k in range(K):
            for j in range(3):
                x = constraints[k][j]
                B.cons[3 * k + j] = x
                B.ec_start[x + 1] += 1
        for e in range(m):
            B.ec_start[e + 1] += B.ec_start[e]
        fill = [0] * m
        for k in range(K):
            for j in range(3):
                x = B.cons[3 * k + j]
                B.ec_list[B.ec_start[x] + fill[x]] = k
                fill[x] += 1
        B.best_size = len(incumbent)
        for e in incumbent:
            B.best_keep[e] = 1
        ok = True
        for e in range(m):
            if B.ec_start[e] == B.ec_start[e + 1]:
                ok = ok and B.assign(e, IN)
        if ok:
            B.dfs()
        chosen = [e for e in range(m) if B.best_keep[e]]
        return chosen, not B.aborted, B.nodes
    finally:
        free(B.cons); free(B.ec_start); free(B.ec_list); free(B.st)
        free(B.n_in); free(B.n_out); free(B.trail); free(B.queue_e)
        free(B.queue_v); free(B.stamp); free(B.best_keep)

"""Pure-Python reference kernels.

Entries use the float encoding of the extended reals (IEEE +-inf stand in for
the infinite variants).  Every branch below is an explicit case analysis; the
cost-sum convention is realized by skipping +inf operands, so the IEEE
indeterminate form (+inf) + (-inf) is never evaluated.

The compiled kernels in ``_fast.pyx`` must stay bit-identical to these: same
operations, same order, no fused multiply-adds.
"""

import math

import numpy as np

INF = math.inf


def minplus_closure(w):
    """Min-plus transitive closure of a square cost table.

    Diagonal entries are capped at 0 (the empty chain), Floyd-Warshall runs
    over the (min, cost-sum) semiring, and every pair that can route through
    a negative cycle is set to -inf.
    """
    d = np.array(w, dtype=np.float64, copy=True)
    n = d.shape[0]
    for i in range(n):
        if d[i, i] > 0.0:
            d[i, i] = 0.0
    for k in range(n):
        for i in range(n):
            dik = d[i, k]
            if dik == INF:
                continue
            for j in range(n):
                dkj = d[k, j]
                if dkj == INF:
                    continue
                if dik == -INF or dkj == -INF:
                    cand = -INF
                else:
                    cand = dik + dkj
                if cand < d[i, j]:
                    d[i, j] = cand
    negs = [i for i in range(n) if d[i, i] < 0.0]
    for i in negs:
        for x in range(n):
            if d[x, i] < INF:
                for y in range(n):
                    if d[i, y] < INF:
                        d[x, y] = -INF
    for i in range(n):
        if d[i, i] > 0.0:
            d[i, i] = 0.0
    return d


def triangle_violations(m, gain):
    """Index triples (i, j, k) where the triangle inequality fails.

    gain=False checks m[i,j] (+) m[j,k] >= m[i,k] under the cost sum;
    gain=True checks m[i,j] (+) m[j,k] <= m[i,k] under the gain sum.
    """
    a = np.asarray(m, dtype=np.float64)
    n = a.shape[0]
    out = []
    for i in range(n):
        for j in range(n):
            ab = a[i, j]
            for k in range(n):
                bc = a[j, k]
                if gain:
                    if ab == -INF or bc == -INF:
                        lhs = -INF
                    elif ab == INF or bc == INF:
                        lhs = INF
                    else:
                        lhs = ab + bc
                    if not lhs <= a[i, k]:
                        out.append((i, j, k))
                else:
                    if ab == INF or bc == INF:
                        lhs = INF
                    elif ab == -INF or bc == -INF:
                        lhs = -INF
                    else:
                        lhs = ab + bc
                    if not lhs >= a[i, k]:
                        out.append((i, j, k))
    return out


def minkowski_gain(v, tol):
    """Standard-frame antinorm of one vector; -inf outside the closed cone.

    The zero vector lies in the closed cone and valuates to 0; inside the
    lightlike band (tol relative to the euclidean norm squared) the value is
    exactly 0.
    """
    u = np.asarray(v, dtype=np.float64)
    n = u.shape[0]
    s = u[0] * u[0]
    q = -s
    e = s
    for i in range(1, n):
        s = u[i] * u[i]
        q += s
        e += s
    if e == 0.0:
        return 0.0
    band = tol * e
    if u[0] >= 0.0 and q <= band:
        if q >= -band:
            return 0.0
        return math.sqrt(-q)
    return -INF


def minkowski_polyline_gain(pts, tol):
    """Sum of segment antinorms along a polyline; -inf if any segment is
    outside the closed future cone."""
    p = np.asarray(pts, dtype=np.float64)
    m = p.shape[0]
    n = p.shape[1]
    total = 0.0
    for seg in range(m - 1):
        c = p[seg + 1, 0] - p[seg, 0]
        s = c * c
        q = -s
        e = s
        for i in range(1, n):
            c = p[seg + 1, i] - p[seg, i]
            s = c * c
            q += s
            e += s
        if e == 0.0:
            continue
        band = tol * e
        if p[seg + 1, 0] - p[seg, 0] >= 0.0 and q <= band:
            if q < -band:
                total += math.sqrt(-q)
        else:
            return -INF
    return total

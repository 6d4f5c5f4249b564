"""Shared test helpers: independent oracles, random generators, CLI runner.

The closure oracle enumerates all simple paths and simple cycles directly,
so it shares no code with the Floyd-Warshall implementation it checks.
"""

import io
import itertools
import math
import sys
from contextlib import redirect_stderr, redirect_stdout

import numpy as np

from causalmetrics import cli
from causalmetrics.pathval import PolylinePath

INF = math.inf

ALPHABET = (-2.0, -1.0, 0.0, 0.5, 1.0, INF, -INF)


def add_cost_f(a, b):
    if a == INF or b == INF:
        return INF
    if a == -INF or b == -INF:
        return -INF
    return a + b


def add_gain_f(a, b):
    if a == -INF or b == -INF:
        return -INF
    if a == INF or b == INF:
        return INF
    return a + b


def closure_oracle(m):
    """Chain-infimum closure by brute force.

    Minimum cost over simple paths, -inf for every pair that can route
    through a negative simple cycle, diagonal capped at 0 by the empty
    chain.
    """
    n = len(m)
    best = [[INF] * n for _ in range(n)]
    nodes = range(n)
    for i in nodes:
        for j in nodes:
            others = [v for v in nodes if v != i and v != j]
            for r in range(len(others) + 1):
                for mid in itertools.permutations(others, r):
                    s = 0.0
                    prev = i
                    for node in (*mid, j):
                        s = add_cost_f(s, m[prev][node])
                        if s == INF:
                            break
                        prev = node
                    if s < best[i][j]:
                        best[i][j] = s
    neg = [i for i in nodes if best[i][i] < 0.0]
    out = [row[:] for row in best]
    for i in neg:
        for x in nodes:
            if x == i or best[x][i] < INF:
                for y in nodes:
                    if y == i or best[i][y] < INF:
                        out[x][y] = -INF
    for i in nodes:
        if out[i][i] > 0.0:
            out[i][i] = 0.0
    return out


def verify_oracle(m, kind):
    """Naive axiom check on a float matrix; returns (passed, triangle_triples)."""
    n = len(m)
    triples = set()
    ok = True
    for i in range(n):
        for j in range(n):
            if kind == "delta" and not m[i][j] >= 0.0:
                ok = False
            for k in range(n):
                if kind == "gamma":
                    if not add_gain_f(m[i][j], m[j][k]) <= m[i][k]:
                        triples.add((i, j, k))
                else:
                    if not add_cost_f(m[i][j], m[j][k]) >= m[i][k]:
                        triples.add((i, j, k))
        d = m[i][i]
        if kind == "delta" and d != 0.0:
            ok = False
        if kind == "rho" and d not in (0.0, -INF):
            ok = False
        if kind == "gamma" and d not in (0.0, INF):
            ok = False
    return ok and not triples, triples


def random_alphabet_matrix(rng, n):
    idx = rng.integers(0, len(ALPHABET), size=(n, n))
    return [[ALPHABET[idx[i, j]] for j in range(n)] for i in range(n)]


def random_cone_vector(rng, dim, boundary=False, scale=1.0):
    """A future-directed causal vector in the standard frame."""
    s = rng.normal(size=dim - 1) * scale
    norm = float(np.linalg.norm(s))
    if boundary:
        t = norm
    else:
        t = norm * (1.0 + abs(rng.normal()) + 0.05) + 0.01 * scale
    return np.concatenate([[t], s])


def random_causal_polyline(rng, dim, boundary_frac=0.2):
    """Random causal polyline: cone steps from a random origin, jittered
    strictly increasing parameters."""
    steps = int(rng.integers(2, 7))
    origin = rng.normal(size=dim)
    pts = [origin]
    for _ in range(steps):
        boundary = rng.uniform() < boundary_frac
        pts.append(pts[-1] + random_cone_vector(rng, dim, boundary=boundary))
    interior = (np.arange(1, steps) + rng.uniform(-0.3, 0.3, size=steps - 1)) / steps
    params = [0.0, *interior.tolist(), 1.0]
    return PolylinePath.of(params, pts)


def run_cli(argv, stdin_text=""):
    """Invoke the CLI main() in-process; returns (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    old_stdin = sys.stdin
    sys.stdin = io.StringIO(stdin_text)
    try:
        with redirect_stdout(out), redirect_stderr(err):
            code = cli.main(argv)
    finally:
        sys.stdin = old_stdin
    return code, out.getvalue(), err.getvalue()

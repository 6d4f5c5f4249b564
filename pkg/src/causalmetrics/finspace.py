"""Finite generalized metric spaces as square tables of extended reals.

A raw cost table can be verified against the axioms of one of three kinds
(classic nonnegative, real-valued cost, real-valued gain), dualized between
the cost and gain pictures, closed to the least real-cost metric below it,
and queried for its reflective / coreflective preorders.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .errors import InvalidSpaceError, InvariantError, KindError, SchemaError, ShapeError
from .extreal import (
    MINUS_INF,
    PLUS_INF,
    ZERO,
    ExtReal,
    add_cost,
    add_gain,
    as_extreal,
    from_json as ext_from_json,
    negate,
    to_json as ext_to_json,
)


class SpaceKind(enum.Enum):
    DELTA = "delta"
    RHO = "rho"
    GAMMA = "gamma"


@dataclass(frozen=True)
class CostMatrix:
    """Square table of extended reals over a finite point set."""

    entries: tuple[tuple[ExtReal, ...], ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise ShapeError("matrix not square")
        if self.labels is not None and len(self.labels) != n:
            raise ShapeError("label count does not match matrix size")

    @classmethod
    def of(cls, entries, labels=None) -> "CostMatrix":
        """Build from nested sequences of numbers / ExtReal (rows must form
        a square table)."""
        if isinstance(entries, CostMatrix):
            return entries
        rows = tuple(tuple(as_extreal(v) for v in row) for row in entries)
        return cls(rows, tuple(labels) if labels is not None else None)

    @property
    def n(self) -> int:
        return len(self.entries)

    def as_float_array(self) -> np.ndarray:
        return np.array(
            [[v.to_float() for v in row] for row in self.entries], dtype=np.float64
        )

    @classmethod
    def from_json(cls, doc) -> "CostMatrix":
        if not isinstance(doc, dict) or "entries" not in doc:
            raise SchemaError('matrix document must be an object with "entries"')
        entries = doc["entries"]
        if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
            raise SchemaError('"entries" must be a list of rows')
        try:
            rows = tuple(tuple(ext_from_json(v) for v in row) for row in entries)
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
        labels = doc.get("labels")
        if labels is not None:
            if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
                raise SchemaError('"labels" must be a list of strings')
            labels = tuple(labels)
        return cls(rows, labels)

    def to_json(self) -> dict:
        doc = {}
        if self.labels is not None:
            doc["labels"] = list(self.labels)
        doc["entries"] = [[ext_to_json(v) for v in row] for row in self.entries]
        return doc


@dataclass(frozen=True)
class Violation:
    """One failed axiom instance.

    Triangle violations carry the triple (i, j, k); diagonal and range
    violations carry k=None.  lhs/rhs are the two sides of the failed
    comparison.
    """

    i: int
    j: int
    k: Optional[int]
    lhs: ExtReal
    rhs: ExtReal

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "k": self.k,
            "lhs": ext_to_json(self.lhs),
            "rhs": ext_to_json(self.rhs),
        }


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    violations: tuple[Violation, ...]

    def to_json(self) -> dict:
        return {"pass": self.passed, "violations": [v.to_json() for v in self.violations]}


@dataclass(frozen=True)
class ValidatedSpace:
    """A cost matrix together with the axiom kind it satisfies.

    Instances come from validate(), metric_closure() or dualize(); direct
    construction bypasses verification.
    """

    kind: SpaceKind
    matrix: CostMatrix

    @property
    def n(self) -> int:
        return self.matrix.n


def _diag_ok(kind: SpaceKind, v: ExtReal) -> bool:
    if kind is SpaceKind.DELTA:
        return v == ZERO
    if kind is SpaceKind.RHO:
        return v == ZERO or v == MINUS_INF
    return v == ZERO or v == PLUS_INF


def verify(matrix, kind: SpaceKind) -> ValidationReport:
    """Check all axioms of the requested kind; report every violation.

    Uses the cost sum for DELTA/RHO and the gain sum for GAMMA.  Reported
    in order: entry-range (DELTA only), diagonal, then triangle triples.
    """
    m = CostMatrix.of(matrix)
    n = m.n
    e = m.entries
    violations = []
    if kind is SpaceKind.DELTA:
        for i in range(n):
            for j in range(n):
                if e[i][j] < ZERO:
                    violations.append(Violation(i, j, None, e[i][j], ZERO))
    for i in range(n):
        if not _diag_ok(kind, e[i][i]):
            violations.append(Violation(i, i, None, e[i][i], ZERO))
    add = add_gain if kind is SpaceKind.GAMMA else add_cost
    arr = m.as_float_array()
    for (i, j, k) in _kernels.triangle_violations(arr, kind is SpaceKind.GAMMA):
        violations.append(Violation(i, j, k, add(e[i][j], e[j][k]), e[i][k]))
    return ValidationReport(not violations, tuple(violations))


def validate(matrix, kind: SpaceKind) -> ValidatedSpace:
    """verify() and wrap, raising InvalidSpaceError when the check fails."""
    m = CostMatrix.of(matrix)
    report = verify(m, kind)
    if not report.passed:
        raise InvalidSpaceError(
            f"matrix fails the {kind.value} axioms ({len(report.violations)} violations)",
            report,
        )
    return ValidatedSpace(kind, m)


def dualize(space: ValidatedSpace) -> ValidatedSpace:
    """Entrywise negation; flips RHO <-> GAMMA.  The result is valid by
    construction, since negation exchanges the two sum conventions."""
    if space.kind is SpaceKind.DELTA:
        raise KindError("dualize is defined for rho and gamma spaces only")
    flipped = SpaceKind.GAMMA if space.kind is SpaceKind.RHO else SpaceKind.RHO
    rows = tuple(tuple(negate(v) for v in row) for row in space.matrix.entries)
    return ValidatedSpace(flipped, CostMatrix(rows, space.matrix.labels))


@dataclass(frozen=True)
class ClosureResult:
    space: ValidatedSpace
    lowered: tuple[tuple[bool, ...], ...]


def metric_closure(matrix) -> ClosureResult:
    """Least real-cost metric below a raw cost table.

    Entry (x, y) is the infimum of chain sums from x to y (the empty chain
    caps the diagonal at 0); pairs that can route through a negative cycle
    drop to -inf.  The output always satisfies the RHO axioms.
    """
    m = CostMatrix.of(matrix)
    w = m.as_float_array()
    d = _kernels.minplus_closure(w)
    rows = tuple(tuple(ExtReal(d[i, j]) for j in range(m.n)) for i in range(m.n))
    lowered = tuple(
        tuple(bool(d[i, j] < w[i, j]) for j in range(m.n)) for i in range(m.n)
    )
    space = ValidatedSpace(SpaceKind.RHO, CostMatrix(rows, m.labels))
    return ClosureResult(space, lowered)


@dataclass(frozen=True)
class Preorders:
    reflective: tuple[tuple[bool, ...], ...]
    coreflective: tuple[tuple[bool, ...], ...]


def _check_preorder(rel, name: str) -> None:
    n = len(rel)
    for i in range(n):
        if not rel[i][i]:
            raise InvariantError(f"{name} preorder is not reflexive at {i}")
    for i in range(n):
        for j in range(n):
            if not rel[i][j]:
                continue
            for k in range(n):
                if rel[j][k] and not rel[i][k]:
                    raise InvariantError(
                        f"{name} preorder is not transitive at ({i},{j},{k})"
                    )


def preorders(space: ValidatedSpace) -> Preorders:
    """Reflective (finite-cost) and coreflective (nonpositive reverse cost)
    preorders of a valid RHO space; reflexivity and transitivity of both are
    checked, not assumed."""
    if space.kind is not SpaceKind.RHO:
        raise KindError("preorders are defined for rho spaces")
    e = space.matrix.entries
    n = space.n
    reflective = tuple(tuple(e[x][y] < PLUS_INF for y in range(n)) for x in range(n))
    coreflective = tuple(tuple(e[y][x] <= ZERO for y in range(n)) for x in range(n))
    _check_preorder(reflective, "reflective")
    _check_preorder(coreflective, "coreflective")
    return Preorders(reflective, coreflective)


def _scale_gain(lam: float, g: ExtReal) -> ExtReal:
    # 0 * (+-inf) = 0; lam > 0 keeps infinities.
    if lam == 0.0:
        return ZERO
    if not g.is_finite:
        return g
    return ExtReal(lam * g.to_float())


@dataclass(frozen=True)
class LipschitzResult:
    ok: bool
    witness: Optional[tuple[int, int]]


def check_lipschitz(
    f: Sequence[int], X: ValidatedSpace, Y: ValidatedSpace, lam: float
) -> LipschitzResult:
    """Does lam * gamma_X(x, x') <= gamma_Y(f(x), f(x')) hold for all pairs?

    Returns the first violating pair in row-major order, if any.
    """
    if X.kind is not SpaceKind.GAMMA or Y.kind is not SpaceKind.GAMMA:
        raise KindError("Lipschitz checking is defined between gamma spaces")
    lam = float(lam)
    if not (lam >= 0.0) or math.isinf(lam):
        raise ValueError("Lipschitz constant must be a finite nonnegative real")
    f = list(f)
    if len(f) != X.n:
        raise IndexError("map length does not match the source point count")
    for v in f:
        if not (0 <= v < Y.n):
            raise IndexError(f"map value {v} out of range for the target space")
    gx = X.matrix.entries
    gy = Y.matrix.entries
    for a in range(X.n):
        for b in range(X.n):
            if _scale_gain(lam, gx[a][b]) > gy[f[a]][f[b]]:
                return LipschitzResult(False, (a, b))
    return LipschitzResult(True, None)

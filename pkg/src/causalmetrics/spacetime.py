"""Minkowski spacetime and simple curved Lorentz fields.

Events are chart points; the flat field carries a closed-form antimetric
(the standard antinorm of the event difference), curved fields are valuated
by quadrature along polylines.  The geodesic cost metric between two events
is estimated variationally over causal polylines with a fixed number of
interior control points.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from . import _kernels
from .errors import (
    FieldDomainError,
    NotLorentzError,
    QuadratureError,
    ShapeError,
    UnsupportedFieldError,
)
from .extreal import MINUS_INF, PLUS_INF, ExtReal, negate
from .finspace import SpaceKind
from .lorentz import TOL_LIGHT, LorentzFrame, ScalarProduct
from .pathval import MetricFunction, PolylinePath


class FieldKind(enum.Enum):
    MINKOWSKI = "minkowski"
    DIAGONAL_POWER = "diagonal_power"


def as_event(x, dim: int) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != dim:
        raise ShapeError(f"event must have dimension {dim}")
    return arr


class MetricField:
    """Position-dependent Lorentz scalar product plus time orientation.

    MINKOWSKI is the constant standard field.  DIAGONAL_POWER(p) has
    g_x = diag(-1, t^(2p), ..., t^(2p)) with t the first coordinate,
    oriented by e1; its chart domain is t > 0.
    """

    __slots__ = ("kind", "dim", "power", "_flat_frame")

    def __init__(self, kind: FieldKind, dim: int, power: Optional[float] = None):
        if dim < 2:
            raise NotLorentzError("a Lorentz field needs dimension >= 2")
        self.kind = kind
        self.dim = dim
        self.power = power
        self._flat_frame = LorentzFrame.standard(dim) if kind is FieldKind.MINKOWSKI else None

    @classmethod
    def minkowski(cls, dim: int) -> "MetricField":
        return cls(FieldKind.MINKOWSKI, dim)

    @classmethod
    def diagonal_power(cls, dim: int, power: float) -> "MetricField":
        return cls(FieldKind.DIAGONAL_POWER, dim, float(power))

    @property
    def is_flat(self) -> bool:
        return self.kind is FieldKind.MINKOWSKI

    def frame_at(self, x) -> LorentzFrame:
        """Scalar product and orientation at an event (lazily validated)."""
        x = as_event(x, self.dim)
        if self.is_flat:
            return self._flat_frame
        t = x[0]
        if not t > 0.0:
            raise FieldDomainError(
                f"diagonal power field is only defined for positive time, got {t}"
            )
        a = t ** (2.0 * self.power)
        g = np.diag([-1.0] + [a] * (self.dim - 1))
        u = np.zeros(self.dim)
        u[0] = 1.0
        return LorentzFrame(ScalarProduct(g), u)

    @classmethod
    def from_json(cls, doc, dim: int) -> "MetricField":
        if doc == "minkowski":
            return cls.minkowski(dim)
        if isinstance(doc, dict) and "diagonal_power" in doc:
            try:
                return cls.diagonal_power(dim, doc["diagonal_power"])
            except (TypeError, ValueError) as exc:
                raise ShapeError(f"bad field document: {exc}") from exc
        raise ShapeError(f"unknown field document: {doc!r}")

    def to_json(self):
        if self.is_flat:
            return "minkowski"
        return {"diagonal_power": self.power}


def _standard_gain(v: np.ndarray) -> float:
    return _kernels.minkowski_gain(v, TOL_LIGHT)


def _require_flat(field: MetricField, what: str) -> None:
    if not field.is_flat:
        raise UnsupportedFieldError(
            f"{what} has a closed form only on the flat field; use rho_g_estimate"
        )


def event_antimetric(field: MetricField, x, y) -> ExtReal:
    """Gain of the transition x -> y on the flat field: the standard antinorm
    of y - x (nonnegative on the future causal cone, 0 on the lightcone,
    -inf on events x cannot influence)."""
    _require_flat(field, "the event antimetric")
    x = as_event(x, field.dim)
    y = as_event(y, field.dim)
    return ExtReal(_standard_gain(y - x))


def event_rho(field: MetricField, x, y) -> ExtReal:
    """Cost dual of the event antimetric; values in ]-inf, 0] or +inf."""
    return negate(event_antimetric(field, x, y))


def causally_precedes(field: MetricField, x, y) -> bool:
    """Causality order: x <= y iff y - x lies in the closed future cone
    (reflexive); equivalent to a finite transition cost."""
    _require_flat(field, "the causality order")
    x = as_event(x, field.dim)
    y = as_event(y, field.dim)
    return _standard_gain(y - x) != -math.inf


def event_metric(field: MetricField) -> MetricFunction:
    """The event antimetric packaged as a gain metric over events."""
    _require_flat(field, "the event metric")

    def fn(a, b) -> ExtReal:
        return ExtReal(_standard_gain(as_event(b, field.dim) - as_event(a, field.dim)))

    return MetricFunction(SpaceKind.GAMMA, fn, "minkowski-event")


def _in_cone_at(field: MetricField, x: np.ndarray, d: np.ndarray) -> bool:
    # Direction d against the causal cone at x; the zero direction counts in.
    if not d.any():
        return True
    frame = field.frame_at(x)
    q = frame.product.quadratic(d)
    band = TOL_LIGHT * float(d @ d)
    future = frame.product.apply(d, frame.orientation) <= 0.0
    return future and q <= band


@dataclass(frozen=True)
class CausalityResult:
    ok: bool
    violation: Optional[tuple[int, float]]  # (segment index, path parameter)


def _event_path(field: MetricField, path: PolylinePath) -> np.ndarray:
    pts = path.point_array()
    if pts.shape[1] != field.dim:
        raise ShapeError(f"path points must have dimension {field.dim}")
    return pts


def is_causal_path(
    field: MetricField, path: PolylinePath, samples_per_segment: int = 1
) -> CausalityResult:
    """Check that every segment direction lies in the causal cone along the
    segment (sampled at the midpoints of samples_per_segment equal pieces;
    one sample is exact on the flat field)."""
    if samples_per_segment < 1:
        raise ValueError("samples_per_segment must be >= 1")
    pts = _event_path(field, path)
    m = samples_per_segment
    for seg in range(pts.shape[0] - 1):
        d = pts[seg + 1] - pts[seg]
        t0, t1 = path.params[seg], path.params[seg + 1]
        if field.is_flat:
            if _standard_gain(d) == -math.inf:
                return CausalityResult(False, (seg, t0 + 0.5 * (t1 - t0)))
            continue
        for j in range(m):
            frac = (j + 0.5) / m
            if not _in_cone_at(field, pts[seg] + frac * d, d):
                return CausalityResult(False, (seg, t0 + frac * (t1 - t0)))
    return CausalityResult(True, None)


@dataclass(frozen=True)
class Quadrature:
    """Polyline valuation rule: "exact" (flat field only), or composite
    "midpoint" / "simpson" with a panel count per segment."""

    rule: str
    panels: Optional[int] = None

    def __post_init__(self):
        if self.rule not in ("exact", "midpoint", "simpson"):
            raise QuadratureError(f"unknown quadrature rule {self.rule!r}")
        if self.rule == "exact":
            if self.panels is not None:
                raise QuadratureError("exact quadrature takes no panel count")
        elif not (isinstance(self.panels, int) and self.panels >= 1):
            raise QuadratureError(f"{self.rule} quadrature needs a panel count >= 1")

    @classmethod
    def exact(cls) -> "Quadrature":
        return cls("exact")

    @classmethod
    def midpoint(cls, panels: int) -> "Quadrature":
        return cls("midpoint", panels)

    @classmethod
    def simpson(cls, panels: int) -> "Quadrature":
        return cls("simpson", panels)

    @classmethod
    def parse(cls, text: str) -> "Quadrature":
        name, _, arg = text.partition(":")
        name = name.strip().lower()
        if name == "exact":
            if arg:
                raise QuadratureError("exact quadrature takes no panel count")
            return cls.exact()
        if name in ("midpoint", "simpson"):
            try:
                panels = int(arg)
            except ValueError:
                raise QuadratureError(f"bad panel count in {text!r}") from None
            return cls(name, panels)
        raise QuadratureError(f"unknown quadrature rule {text!r}")

    def __str__(self) -> str:
        return self.rule if self.rule == "exact" else f"{self.rule}:{self.panels}"


def _speed(field: MetricField, x: np.ndarray, deriv: np.ndarray) -> float:
    val = -field.frame_at(x).product.quadratic(deriv)
    return math.sqrt(val) if val > 0.0 else 0.0


def proper_time(field: MetricField, path: PolylinePath, quadrature: Quadrature) -> ExtReal:
    """Elapsed proper time along a causal polyline; -inf when the path is
    not causal.  The exact rule sums segment antinorms (flat field only);
    midpoint / simpson integrate the tangent antinorm with the field
    evaluated at the quadrature nodes."""
    pts = _event_path(field, path)
    if quadrature.rule == "exact":
        if not field.is_flat:
            raise QuadratureError("exact quadrature requires the flat field")
        return ExtReal(_kernels.minkowski_polyline_gain(pts, TOL_LIGHT))
    k = quadrature.panels
    check = is_causal_path(field, path, samples_per_segment=k)
    if not check.ok:
        return MINUS_INF
    total = 0.0
    for seg in range(pts.shape[0] - 1):
        t0, t1 = path.params[seg], path.params[seg + 1]
        dt = t1 - t0
        d = pts[seg + 1] - pts[seg]
        deriv = d / dt
        h = dt / k
        if quadrature.rule == "midpoint":
            for j in range(k):
                xm = pts[seg] + ((j + 0.5) / k) * d
                total += h * _speed(field, xm, deriv)
        else:
            for j in range(k):
                xa = pts[seg] + (j / k) * d
                xm = pts[seg] + ((j + 0.5) / k) * d
                xb = pts[seg] + ((j + 1.0) / k) * d
                total += (h / 6.0) * (
                    _speed(field, xa, deriv)
                    + 4.0 * _speed(field, xm, deriv)
                    + _speed(field, xb, deriv)
                )
    return ExtReal(total)


@dataclass(frozen=True)
class RhoGConfig:
    """Budget for the variational estimate: interior control points,
    coordinate-ascent iterations, random restarts, seed, quadrature
    (None picks exact on the flat field, midpoint:8 otherwise)."""

    controls: int = 3
    iters: int = 50
    restarts: int = 4
    seed: int = 0
    quadrature: Optional[Quadrature] = None

    def __post_init__(self):
        if self.controls < 0:
            raise ValueError("controls must be >= 0")
        if self.iters < 0:
            raise ValueError("iters must be >= 0")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")

    @classmethod
    def from_json(cls, doc) -> "RhoGConfig":
        if not isinstance(doc, dict):
            raise ShapeError("config must be an object")
        quad = doc.get("quadrature")
        try:
            return cls(
                controls=int(doc.get("controls", 3)),
                iters=int(doc.get("iters", 50)),
                restarts=int(doc.get("restarts", 4)),
                seed=int(doc.get("seed", 0)),
                quadrature=Quadrature.parse(quad) if quad is not None else None,
            )
        except (TypeError, ValueError) as exc:
            raise ShapeError(f"bad config: {exc}") from exc


@dataclass(frozen=True)
class RhoGResult:
    rho: ExtReal
    path: Optional[PolylinePath]
    trace: tuple[ExtReal, ...] = dc_field(repr=False)


def _polyline(params: np.ndarray, x, ctrl: np.ndarray, y) -> PolylinePath:
    pts = [x] + [ctrl[i] for i in range(ctrl.shape[0])] + [y]
    return PolylinePath.of(params.tolist(), pts)


def rho_g_estimate(field: MetricField, x, y, config: Optional[RhoGConfig] = None) -> RhoGResult:
    """Variational upper bound on the geodesic cost metric between events.

    Maximizes proper time over causal polylines with a fixed number of
    interior control points, by multi-restart projected coordinate ascent
    (moves that leave the causal region are rejected, the step decays
    geometrically when no move helps).  Returns +inf when no causal polyline
    is found within the budget; otherwise minus the best proper time, the
    best path, and the per-iteration trace of best cost values (merged over
    restarts, monotone nonincreasing).
    """
    cfg = config or RhoGConfig()
    x = as_event(x, field.dim)
    y = as_event(y, field.dim)
    quad = cfg.quadrature
    if quad is None:
        quad = Quadrature.exact() if field.is_flat else Quadrature.midpoint(8)

    m = cfg.controls
    params = np.linspace(0.0, 1.0, m + 2)
    fracs = params[1 : m + 1, None]
    base = x[None, :] + fracs * (y - x)[None, :]

    flat_exact = field.is_flat and quad.rule == "exact"

    def objective(ctrl: np.ndarray) -> float:
        if flat_exact:
            pts = np.vstack([x[None, :], ctrl, y[None, :]])
            return _kernels.minkowski_polyline_gain(pts, TOL_LIGHT)
        try:
            val = proper_time(field, _polyline(params, x, ctrl, y), quad)
        except FieldDomainError:
            return -math.inf
        return val.to_float()

    span = float(np.linalg.norm(y - x))
    scale = max(span, 1e-3) / (m + 1)
    sigma = 0.2 * scale
    step0 = 0.5 * scale

    children = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    best_overall = (-math.inf, 0)  # (value, restart index); max value, min index
    best_ctrl = base
    traces = []
    for r in range(cfg.restarts):
        rng = np.random.default_rng(children[r])
        ctrl = base.copy()
        if r > 0 and m > 0:
            noise = sigma * rng.standard_normal(ctrl.shape)
            ctrl = base + noise
            shrink = 0
            while objective(ctrl) == -math.inf and shrink < 20:
                noise *= 0.5
                ctrl = base + noise
                shrink += 1
        best = objective(ctrl)
        step = step0
        trace_r = []
        for _ in range(cfg.iters):
            improved = False
            for i in range(m):
                for c in range(field.dim):
                    for sgn in (1.0, -1.0):
                        cand = ctrl.copy()
                        cand[i, c] += sgn * step
                        val = objective(cand)
                        if val > best:
                            best = val
                            ctrl = cand
                            improved = True
            if not improved:
                step *= 0.5
            trace_r.append(best)
        traces.append(trace_r)
        if (best, -r) > (best_overall[0], -best_overall[1]):
            best_overall = (best, r)
            best_ctrl = ctrl

    if cfg.iters > 0:
        merged = [max(t[i] for t in traces) for i in range(cfg.iters)]
    else:
        merged = []
    rho_trace = tuple(negate(ExtReal(v)) for v in merged)
    if best_overall[0] == -math.inf:
        return RhoGResult(PLUS_INF, None, rho_trace)
    best_path = _polyline(params, x, best_ctrl, y)
    return RhoGResult(negate(ExtReal(best_overall[0])), best_path, rho_trace)

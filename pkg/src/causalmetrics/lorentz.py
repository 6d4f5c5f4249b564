"""Lorentz vector spaces: scalar products, causal cones, the real antinorm.

Orientation convention: a vector v is future-directed with respect to a
timelike vector u iff <v, u> <= 0, so the standard-frame cones are exactly
the sets with nonnegative time component.  Two timelike vectors share their
time-orientation iff their product is negative.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateProductError, InvariantError, NotLorentzError, ShapeError
from .extreal import MINUS_INF, ExtReal

TOL_SYM = 1e-9
TOL_DEG = 1e-9
TOL_ORTHO = 1e-9
TOL_LIGHT = 1e-9

_TINY = np.finfo(np.float64).tiny


class VectorClass(Enum):
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    SPACELIKE = "spacelike"


class ConeRegion(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def _as_vector(v, dim=None) -> np.ndarray:
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1:
        raise ShapeError("expected a one-dimensional vector")
    if dim is not None and arr.shape[0] != dim:
        raise ShapeError(f"vector has dimension {arr.shape[0]}, expected {dim}")
    return arr


class ScalarProduct:
    """Non-degenerate symmetric bilinear form, eigendecomposed on build."""

    __slots__ = ("matrix", "_eigvals", "_eigvecs")

    def __init__(self, matrix):
        g = np.asarray(matrix, dtype=np.float64)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ShapeError("scalar product matrix must be square")
        if not np.all(np.isfinite(g)):
            raise ShapeError("scalar product matrix must be finite")
        scale = float(np.linalg.norm(g))
        asym = float(np.max(np.abs(g - g.T))) if g.size else 0.0
        if asym > TOL_SYM * max(scale, _TINY):
            raise ShapeError("scalar product matrix is not symmetric")
        g = (g + g.T) / 2.0
        w, v = np.linalg.eigh(g)
        top = float(np.max(np.abs(w))) if w.size else 0.0
        if top == 0.0 or float(np.min(np.abs(w))) <= TOL_DEG * top:
            raise DegenerateProductError("scalar product is degenerate")
        self.matrix = g
        self.matrix.setflags(write=False)
        self._eigvals = w
        self._eigvecs = v

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def index(self) -> int:
        """Number of negative directions (Sylvester invariant)."""
        return int(np.count_nonzero(self._eigvals < 0.0))

    def apply(self, v, w) -> float:
        v = _as_vector(v, self.dim)
        w = _as_vector(w, self.dim)
        return float(v @ self.matrix @ w)

    def quadratic(self, v) -> float:
        v = _as_vector(v, self.dim)
        return float(v @ self.matrix @ v)


def as_product(obj) -> ScalarProduct:
    if isinstance(obj, ScalarProduct):
        return obj
    if isinstance(obj, LorentzFrame):
        return obj.product
    return ScalarProduct(obj)


class LorentzFrame:
    """Index-1 scalar product time-oriented by a timelike vector."""

    __slots__ = ("product", "orientation")

    def __init__(self, product, orientation):
        product = as_product(product)
        if product.dim < 2:
            raise NotLorentzError("a Lorentz space needs dimension >= 2")
        if product.index != 1:
            raise NotLorentzError(f"scalar product has index {product.index}, not 1")
        u = _as_vector(orientation, product.dim)
        if not product.quadratic(u) < 0.0:
            raise NotLorentzError("orientation vector is not timelike")
        self.product = product
        self.orientation = u
        self.orientation.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.product.dim

    @classmethod
    def standard(cls, n: int) -> "LorentzFrame":
        """Standard Lorentz space: diag(-1, 1, ..., 1) oriented by e1."""
        if n < 2:
            raise NotLorentzError("a Lorentz space needs dimension >= 2")
        g = np.diag([-1.0] + [1.0] * (n - 1))
        e1 = np.zeros(n)
        e1[0] = 1.0
        return cls(ScalarProduct(g), e1)

    @classmethod
    def from_json(cls, doc) -> "LorentzFrame":
        """Accepts {"g": [[...]], "u": [...]} or the shorthand "standard: n"
        (also {"standard": n})."""
        if isinstance(doc, str):
            head, _, tail = doc.partition(":")
            if head.strip() != "standard":
                raise ShapeError(f"unknown frame shorthand {doc!r}")
            return cls.standard(int(tail.strip()))
        if isinstance(doc, dict):
            if "standard" in doc:
                return cls.standard(int(doc["standard"]))
            if "g" in doc and "u" in doc:
                return cls(ScalarProduct(doc["g"]), doc["u"])
        raise ShapeError('frame document must carry "g" and "u", or "standard"')

    def to_json(self) -> dict:
        return {
            "g": [[float(x) for x in row] for row in self.product.matrix],
            "u": [float(x) for x in self.orientation],
        }


def scalar_product(frame_or_product, v, w) -> float:
    """<v, w> under the given product (or a frame's product)."""
    return as_product(frame_or_product).apply(v, w)


def quadratic_form(frame_or_product, v) -> float:
    return as_product(frame_or_product).quadratic(v)


def _light_band(v: np.ndarray) -> float:
    return TOL_LIGHT * float(v @ v)


def classify(frame_or_product, v) -> VectorClass:
    """Timelike / lightlike / spacelike by the sign of the quadratic form,
    with a lightlike band relative to the euclidean norm squared.  The zero
    vector is spacelike."""
    p = as_product(frame_or_product)
    v = _as_vector(v, p.dim)
    if not v.any():
        return VectorClass.SPACELIKE
    q = p.quadratic(v)
    band = _light_band(v)
    if q < -band:
        return VectorClass.TIMELIKE
    if q > band:
        return VectorClass.SPACELIKE
    return VectorClass.LIGHTLIKE


def cone_membership(frame: LorentzFrame, v) -> ConeRegion:
    """Position of v relative to the future causal cone.

    INTERIOR: timelike and future-directed; BOUNDARY: lightlike, nonzero and
    future-directed; OUTSIDE otherwise (including the zero vector).
    """
    v = _as_vector(v, frame.dim)
    if not v.any():
        return ConeRegion.OUTSIDE
    q = frame.product.quadratic(v)
    band = _light_band(v)
    future = frame.product.apply(v, frame.orientation) <= 0.0
    if not future:
        return ConeRegion.OUTSIDE
    if q < -band:
        return ConeRegion.INTERIOR
    if q <= band:
        return ConeRegion.BOUNDARY
    return ConeRegion.OUTSIDE


def antinorm(frame: LorentzFrame, v) -> ExtReal:
    """sqrt(-q(v)) on the closed future cone, -inf outside it.

    The zero vector belongs to the closed cone and valuates to 0 (this keeps
    the induced event antimetric lawful even though cone_membership reports
    the zero vector as OUTSIDE).  On the boundary the radicand is clamped at
    exactly 0: the true value there is 0, and computing sqrt of the O(eps)
    rounding residue would amplify it to O(sqrt(eps)), past any sane
    tolerance.
    """
    v = _as_vector(v, frame.dim)
    if not v.any():
        return ExtReal(0.0)
    region = cone_membership(frame, v)
    if region is ConeRegion.OUTSIDE:
        return MINUS_INF
    if region is ConeRegion.BOUNDARY:
        return ExtReal(0.0)
    q = frame.product.quadratic(v)
    return ExtReal(float(np.sqrt(-q)))


@dataclass(frozen=True)
class OrthonormalBasis:
    """Columns of `vectors` are the basis; signature is sorted -1 first."""

    vectors: np.ndarray
    signature: tuple[int, ...]
    index: int


def orthonormal_basis(frame_or_product) -> OrthonormalBasis:
    """Diagonalize to a basis with <b_i, b_j> = delta_ij * eps_i.

    Built from the symmetric eigendecomposition, scaling eigenvectors by
    |lambda|^(-1/2); negative directions come first.
    """
    p = as_product(frame_or_product)
    w, vecs = p._eigvals, p._eigvecs
    basis = vecs / np.sqrt(np.abs(w))
    signature = tuple(-1 if lam < 0.0 else 1 for lam in w)
    gram = basis.T @ p.matrix @ basis
    if float(np.max(np.abs(gram - np.diag(signature)))) > TOL_ORTHO * max(
        1.0, float(np.linalg.norm(p.matrix))
    ):
        raise InvariantError("orthonormalization failed its own gram check")
    basis.setflags(write=False)
    return OrthonormalBasis(basis, signature, signature.count(-1))


def standardize(frame: LorentzFrame) -> np.ndarray:
    """Isometry from the standard Lorentz space onto the frame's space.

    Returns the matrix whose columns are the images of the canonical basis
    vectors; the image of e1 is future-directed for the frame orientation,
    spatial columns have a deterministic sign (largest-magnitude component
    positive).
    """
    basis = orthonormal_basis(frame.product)
    if basis.index != 1:
        raise NotLorentzError(f"scalar product has index {basis.index}, not 1")
    cols = np.array(basis.vectors)
    if frame.product.apply(cols[:, 0], frame.orientation) > 0.0:
        cols[:, 0] = -cols[:, 0]
    for j in range(1, cols.shape[1]):
        lead = int(np.argmax(np.abs(cols[:, j])))
        if cols[lead, j] < 0.0:
            cols[:, j] = -cols[:, j]
    gram = cols.T @ frame.product.matrix @ cols
    target = np.diag([-1.0] + [1.0] * (frame.dim - 1))
    if float(np.max(np.abs(gram - target))) > TOL_ORTHO * max(
        1.0, float(np.linalg.norm(frame.product.matrix))
    ):
        raise InvariantError("standardizing map failed its isometry check")
    cols.setflags(write=False)
    return cols

"""Exact arithmetic and order on the extended real line.

Two distinct extended sums live here: the cost sum, for which the sum of the
two opposite infinities is plus infinity, and the gain sum, for which it is
minus infinity.  Infinities are explicit variants rather than IEEE floats, so
both conventions are case analyses and no operation can produce NaN.
"""

from __future__ import annotations

import enum
import math
from functools import total_ordering


class _Kind(enum.IntEnum):
    NEG_INF = -1
    FINITE = 0
    POS_INF = 1


@total_ordering
class ExtReal:
    """A point of [-inf, +inf]; finite values are ordinary floats, never NaN."""

    __slots__ = ("_kind", "_value")

    def __init__(self, value: float):
        v = float(value)
        if math.isnan(v):
            raise ValueError("ExtReal cannot hold NaN")
        if math.isinf(v):
            self._kind = _Kind.POS_INF if v > 0 else _Kind.NEG_INF
            self._value = 0.0
        else:
            self._kind = _Kind.FINITE
            self._value = 0.0 if v == 0.0 else v  # canonical zero, no -0.0

    @property
    def is_finite(self) -> bool:
        return self._kind is _Kind.FINITE

    @property
    def is_pos_inf(self) -> bool:
        return self._kind is _Kind.POS_INF

    @property
    def is_neg_inf(self) -> bool:
        return self._kind is _Kind.NEG_INF

    def to_float(self) -> float:
        """Lossless float encoding: variants map to IEEE +-inf."""
        if self._kind is _Kind.POS_INF:
            return math.inf
        if self._kind is _Kind.NEG_INF:
            return -math.inf
        return self._value

    def _key(self):
        return (int(self._kind), self._value)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, float)):
            other = ExtReal(other)
        if not isinstance(other, ExtReal):
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other) -> bool:
        if isinstance(other, (int, float)):
            other = ExtReal(other)
        if not isinstance(other, ExtReal):
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self):
        return hash(self._key())

    def __neg__(self) -> "ExtReal":
        return negate(self)

    def __float__(self) -> float:
        return self.to_float()

    def __repr__(self) -> str:
        if self._kind is _Kind.POS_INF:
            return "ExtReal(inf)"
        if self._kind is _Kind.NEG_INF:
            return "ExtReal(-inf)"
        return f"ExtReal({self._value!r})"

    def __str__(self) -> str:
        if self._kind is _Kind.POS_INF:
            return "inf"
        if self._kind is _Kind.NEG_INF:
            return "-inf"
        return repr(self._value)


PLUS_INF = ExtReal(math.inf)
MINUS_INF = ExtReal(-math.inf)
ZERO = ExtReal(0.0)


def as_extreal(x) -> ExtReal:
    """Coerce a number (or ExtReal) to ExtReal."""
    if isinstance(x, ExtReal):
        return x
    return ExtReal(x)


def add_cost(a, b) -> ExtReal:
    """Extended sum for costs: any +inf operand absorbs, even against -inf."""
    a, b = as_extreal(a), as_extreal(b)
    if a._kind is _Kind.POS_INF or b._kind is _Kind.POS_INF:
        return PLUS_INF
    if a._kind is _Kind.NEG_INF or b._kind is _Kind.NEG_INF:
        return MINUS_INF
    return ExtReal(a._value + b._value)


def add_gain(a, b) -> ExtReal:
    """Extended sum for gains: any -inf operand absorbs, even against +inf."""
    a, b = as_extreal(a), as_extreal(b)
    if a._kind is _Kind.NEG_INF or b._kind is _Kind.NEG_INF:
        return MINUS_INF
    if a._kind is _Kind.POS_INF or b._kind is _Kind.POS_INF:
        return PLUS_INF
    return ExtReal(a._value + b._value)


def negate(a) -> ExtReal:
    """Swap the infinities, negate finite values; involutive."""
    a = as_extreal(a)
    if a._kind is _Kind.POS_INF:
        return MINUS_INF
    if a._kind is _Kind.NEG_INF:
        return PLUS_INF
    return ExtReal(-a._value)


def from_float(f: float) -> ExtReal:
    return ExtReal(f)


def to_float(a) -> float:
    return as_extreal(a).to_float()


def to_json(a):
    """JSON encoding: a finite number, or the strings "inf" / "-inf"."""
    a = as_extreal(a)
    if a._kind is _Kind.POS_INF:
        return "inf"
    if a._kind is _Kind.NEG_INF:
        return "-inf"
    return a._value


def from_json(v) -> ExtReal:
    if isinstance(v, str):
        if v == "inf":
            return PLUS_INF
        if v == "-inf":
            return MINUS_INF
        raise ValueError(f"not an extended real: {v!r}")
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValueError(f"not an extended real: {v!r}")
    if isinstance(v, float) and (math.isnan(v) or math.isinf(v)):
        raise ValueError(f"not an extended real: {v!r}")
    return ExtReal(v)

"""Quaternion arithmetic and tolerance-aware rounding.

Real and complex quantities are carried as quaternions with trailing zero
components, so the digit maps in one, two and four dimensions share a single
arithmetic path.  Every floor taken near an integer is flagged, and callers
decide whether to abort or to snap to the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class AmbiguousValueError(ValueError):
    """A quantity landed inside the tolerance band around a decision boundary."""


@dataclass(frozen=True)
class Tolerance:
    """Rounding policy.

    eps_floor is the half-width of the ambiguity band around integers used by
    floor operations; eps_cmp is the slack allowed in ordinary comparisons.
    """

    eps_floor: float = 1e-9
    eps_cmp: float = 1e-12

    def __post_init__(self) -> None:
        if not 0.0 < self.eps_floor < 0.25:
            raise ValueError("eps_floor must lie in (0, 1/4)")
        if not 0.0 < self.eps_cmp < self.eps_floor:
            raise ValueError("eps_cmp must lie in (0, eps_floor)")


DEFAULT_TOL = Tolerance()


def safe_floor(x: float, tol: Tolerance = DEFAULT_TOL) -> tuple[int, bool]:
    """Floor with an ambiguity flag.

    Returns (n, ambiguous).  When x is farther than tol.eps_floor from every
    integer, n = floor(x) and ambiguous is False.  Inside the band, n is the
    nearest integer (the snap target) and ambiguous is True.
    """
    if not math.isfinite(x):
        raise ValueError(f"cannot floor non-finite value {x!r}")
    nearest = round(x)
    if abs(x - nearest) <= tol.eps_floor:
        return int(nearest), True
    return math.floor(x), False


def tol_floor(x: float, tol: Tolerance = DEFAULT_TOL, nudge: bool = False) -> int:
    """Floor that either raises on ambiguity or snaps to the nearest integer."""
    n, ambiguous = safe_floor(x, tol)
    if ambiguous and not nudge:
        raise AmbiguousValueError(f"{x!r} is within {tol.eps_floor} of an integer")
    return n


@dataclass(frozen=True)
class Quaternion:
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    @staticmethod
    def real(x: float) -> "Quaternion":
        return Quaternion(float(x), 0.0, 0.0, 0.0)

    @staticmethod
    def complex2(re: float, im: float) -> "Quaternion":
        return Quaternion(float(re), float(im), 0.0, 0.0)

    @staticmethod
    def from_components(v) -> "Quaternion":
        a, b, c, d = (float(t) for t in v)
        return Quaternion(a, b, c, d)

    @property
    def components(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.a + other.a, self.b + other.b,
                          self.c + other.c, self.d + other.d)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.a - other.a, self.b - other.b,
                          self.c - other.c, self.d - other.d)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return quat_mul(self, other)
        return self.scale(float(other))

    def __rmul__(self, other) -> "Quaternion":
        # scalar * quaternion; quaternion * quaternion goes through __mul__
        return self.scale(float(other))

    def scale(self, s: float) -> "Quaternion":
        return Quaternion(s * self.a, s * self.b, s * self.c, s * self.d)

    def conj(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm2(self) -> float:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def __abs__(self) -> float:
        return math.sqrt(self.norm2())

    def inverse(self) -> "Quaternion":
        n2 = self.norm2()
        if n2 == 0.0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return self.conj().scale(1.0 / n2)

    def powi(self, n: int) -> "Quaternion":
        """Integer power, negative exponents via the inverse."""
        if n < 0:
            return self.inverse().powi(-n)
        out = Quaternion.real(1.0)
        base = self
        while n:
            if n & 1:
                out = quat_mul(out, base)
            base = quat_mul(base, base)
            n >>= 1
        return out

    def is_real(self, eps: float = 0.0) -> bool:
        return abs(self.b) <= eps and abs(self.c) <= eps and abs(self.d) <= eps

    def approx_eq(self, other: "Quaternion", eps: float) -> bool:
        return abs(self - other) <= eps


ZERO = Quaternion()
ONE = Quaternion.real(1.0)


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product p q (i^2 = j^2 = k^2 = ijk = -1)."""
    return Quaternion(
        p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
        p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
        p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
        p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a,
    )


@dataclass(frozen=True)
class MetallicMean:
    """Positive root of x^2 = j x + 1."""

    j: int
    value: float

    @staticmethod
    def of(j: int) -> "MetallicMean":
        if j == 0:
            raise ValueError("index must be a positive integer")
        if j < 0:
            raise ValueError("index must be a positive integer")
        return MetallicMean(j, (j + math.sqrt(j * j + 4.0)) / 2.0)


def metallic_mean(j: int) -> float:
    return MetallicMean.of(j).value

"""Greedy expansions in a real base b > 1 and their cylinder structure.

A point x in [0,1) has greedy digits d_j = floor(b T^(j-1) x) under the map
T x = b x - floor(b x).  Admissibility of digit blocks is decided
lexicographically against the quasi-greedy expansion of 1, and the set of
points whose first k digits form a given block is an interval whose exact
endpoints this module computes.  Orbits of algebraic bases routinely hit cell
boundaries head on, so every internal expansion snaps floors inside the
tolerance band instead of trusting the last bits of a double.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .numeric import DEFAULT_TOL, AmbiguousValueError, Tolerance, tol_floor

Block = tuple[int, ...]


@dataclass(frozen=True)
class CylinderInterval:
    """Half-open interval [lo, hi) of points sharing a fixed digit prefix.

    block has length k and ends with the targeted digit; full_length records
    whether hi - lo equals b**-k up to tolerance.
    """

    block: Block
    lo: float
    hi: float
    full_length: bool


class RealBase:
    """A real base b > 1 together with its derived expansion data.

    Exposes the digit alphabet bound, the quasi-greedy expansion of 1, the
    terminating-index / zero-run pair of the expansion of b - floor(b), and
    the admissibility and cylinder machinery built on them.
    """

    def __init__(self, b: float, depth: int = 256, tol: Tolerance = DEFAULT_TOL):
        if not b > 1.0:
            raise ValueError("base must exceed 1")
        if depth < 8:
            raise ValueError("depth too small to be useful")
        self.b = float(b)
        self.depth = int(depth)
        self.tol = tol
        self.is_integer = abs(self.b - round(self.b)) <= tol.eps_cmp
        # digit alphabet is {0, ..., s_b}
        self.s_b = int(round(self.b)) - 1 if self.is_integer else int(self.b)
        self._one = self._greedy_orbit(1.0, depth, allow_first_overflow=True)
        self.c_digits = self._quasi_greedy_from_one()
        self.d_prime = min(self.c_digits)
        self.i_b, self.K_b, self.iK_determined = self._compute_iK()

    # -- construction helpers -------------------------------------------------

    def _greedy_orbit(self, x0: float, n: int, allow_first_overflow: bool = False):
        """Greedy digits of x0, snapping at boundaries; returns (digits, terminated)."""
        digits: list[int] = []
        y = float(x0)
        for step in range(n):
            if y == 0.0:
                return digits, True
            t = self.b * y
            d = tol_floor(t, self.tol, nudge=True)
            hi = self.s_b if not (step == 0 and allow_first_overflow) else int(self.b) + 1
            if d < 0 or d > hi:
                raise ValueError(f"digit {d} out of range; orbit left [0,1)")
            y = t - d
            if abs(y) <= self.tol.eps_floor:
                y = 0.0
            digits.append(d)
        return digits, False

    def _quasi_greedy_from_one(self) -> list[int]:
        digits, terminated = self._one
        if not terminated:
            return list(digits)
        # finite expansion d_1..d_m of 1: decrement the last digit and cycle
        period = list(digits)
        period[-1] -= 1
        out: list[int] = []
        while len(out) < self.depth:
            out.extend(period)
        return out[: self.depth]

    def _compute_iK(self) -> tuple[int | None, int, bool]:
        frac = self.b - int(self.b) if not self.is_integer else 0.0
        if frac == 0.0:
            return 0, 0, True
        digits, terminated = self._greedy_orbit(frac, self.depth)
        if terminated:
            nz = [idx for idx, d in enumerate(digits, start=1) if d != 0]
            i_b = nz[-1] if nz else 0
            head = digits[:i_b]
        else:
            i_b = None
            head = digits
        K = run = 0
        for d in head:
            run = run + 1 if d == 0 else 0
            K = max(K, run)
        return i_b, K, terminated

    # -- digit maps -----------------------------------------------------------

    def digits(self, x: float, n: int, on_ambiguous: str = "error") -> list[int]:
        """First n greedy digits of x in [0,1).

        on_ambiguous is "error" (raise when b T^j x sits within eps_floor of
        an integer) or "nudge" (snap to that integer and continue).
        """
        if not 0.0 <= x < 1.0:
            raise ValueError("x must lie in [0,1)")
        if on_ambiguous not in ("error", "nudge"):
            raise ValueError("on_ambiguous must be 'error' or 'nudge'")
        nudge = on_ambiguous == "nudge"
        out: list[int] = []
        y = float(x)
        for _ in range(n):
            t = self.b * y
            d = tol_floor(t, self.tol, nudge=nudge)
            if nudge:
                y = t - d
                if abs(y) <= self.tol.eps_floor:
                    y = 0.0
            else:
                y = t - d
            if d < 0 or d > self.s_b or y < -self.tol.eps_floor:
                raise ValueError("orbit left [0,1); input outside the domain?")
            y = max(y, 0.0)
            out.append(d)
        return out

    def value(self, block: Sequence[int]) -> float:
        """Value of a digit block: sum of block[i] * b**-(i+1), by Horner."""
        acc = 0.0
        for d in reversed(block):
            acc = (acc + d) / self.b
        return acc

    def quasi_greedy(self, depth: int | None = None) -> list[int]:
        depth = self.depth if depth is None else depth
        if depth > self.depth:
            raise ValueError("requested depth exceeds the precomputed expansion")
        return self.c_digits[:depth]

    # -- admissibility --------------------------------------------------------

    def is_admissible(self, block: Sequence[int]) -> bool:
        """True when every suffix of the block is lexicographically at most
        the quasi-greedy expansion of 1 truncated to the suffix length."""
        w = tuple(block)
        if len(w) > self.depth:
            raise ValueError("block longer than the precomputed expansion depth")
        if any(d < 0 or d > self.s_b for d in w):
            return False
        c = self.c_digits
        for j in range(len(w)):
            suffix = w[j:]
            if list(suffix) > c[: len(suffix)]:
                return False
        return True

    def enumerate_admissible(self, n: int) -> list[Block]:
        """All admissible blocks of length n, in increasing lexicographic order."""
        if n < 0:
            raise ValueError("length must be nonnegative")
        out: list[Block] = []

        def extend(prefix: list[int]) -> None:
            if len(prefix) == n:
                out.append(tuple(prefix))
                return
            for d in range(self.s_b + 1):
                prefix.append(d)
                if self.is_admissible(prefix):
                    extend(prefix)
                prefix.pop()

        extend([])
        return out

    def in_E(self, block: Sequence[int], d: int) -> bool:
        """Whether appending d to the block yields a shortened cylinder.

        The block lies in the exceptional set when some suffix, extended by
        d + 1, has value exceeding 1.
        """
        if d < 0 or d > self.d_prime:
            raise ValueError(f"digit {d} exceeds the minimal quasi-greedy digit {self.d_prime}")
        w = tuple(block)
        if not self.is_admissible(w):
            raise ValueError("block is not admissible")
        top = self.value(w) + self.b ** (-(len(w) + 1))
        prefix = 0.0
        scale = 1.0
        for j in range(len(w)):
            # suffix value > 1 iff the full value exceeds prefix_j + b**-j
            if top > prefix + scale + self.tol.eps_cmp:
                return True
            scale /= self.b
            prefix += w[j] * scale
        return False

    # -- cylinder intervals ---------------------------------------------------

    def cylinder_interval(self, block: Sequence[int]) -> tuple[float, float]:
        """Exact endpoints of the set of x whose first digits form the block.

        The set is the intersection over prefixes p_j of [v_j, v_j + b**-j)
        where v_j is the prefix value, so the upper endpoint is the smallest
        v_j + b**-j, capped at 1.
        """
        w = tuple(block)
        lo = self.value(w)
        hi = 1.0
        prefix = 0.0
        scale = 1.0
        for d in w:
            scale /= self.b
            prefix += d * scale
            hi = min(hi, prefix + scale)
        return lo, hi

    def cylinder_intervals(self, d: int, k: int) -> list[CylinderInterval]:
        """Cylinder decomposition of the set whose k-th digit equals d.

        One interval per admissible (k-1)-block, ordered by left endpoint.
        """
        if k < 2:
            raise ValueError("k must be at least 2")
        if d < 0 or d > self.d_prime:
            raise ValueError(f"digit {d} exceeds the minimal quasi-greedy digit {self.d_prime}")
        bk = self.b ** (-k)
        out: list[CylinderInterval] = []
        for blk in self.enumerate_admissible(k - 1):
            w = blk + (d,)
            lo, hi = self.cylinder_interval(w)
            full = hi - lo >= bk - self.tol.eps_cmp
            out.append(CylinderInterval(w, lo, hi, full))
        return out


def quasi_greedy_of_one(b: float, depth: int = 64) -> list[int]:
    """Quasi-greedy expansion of 1 in base b, to the requested depth."""
    return RealBase(b, depth=max(depth, 8)).quasi_greedy(depth)


def compute_iK(b: float, depth: int = 256) -> tuple[int | None, int, bool]:
    """(i, K, determined) for the expansion of b - floor(b).

    i is the index of the last nonzero digit (None when the expansion did not
    terminate within depth), K the longest zero run among the first i digits
    (among all inspected digits when undetermined).
    """
    base = RealBase(b, depth=depth)
    return base.i_b, base.K_b, base.iK_determined

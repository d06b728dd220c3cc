"""The one-dimensional alpha-continued-fraction map.

The map acts on [alpha-1, alpha) by x -> 1/x - floor(1/x + 1 - alpha) and
fixes 0.  Digits are the integers subtracted at each step; negative digits
are allowed, which distinguishes this family from the absolute-value
(Nakada-type) maps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError

# golden-ratio constants: G = (sqrt(5)-1)/2, BIG_G = 1/G = G + 1
G = (math.sqrt(5.0) - 1.0) / 2.0
BIG_G = (math.sqrt(5.0) + 1.0) / 2.0

# |x| below this is treated as the fixed point 0 (1/x would overflow the
# digit range); |digit| above the cap likewise terminates an orbit.
ZERO_EPS = 1e-12
DIGIT_CAP = 10 ** 15


@dataclass(frozen=True)
class AlphaParam:
    """Validated map parameter alpha in [1/2, 1].

    For alpha in (G, 1) the derived integers d = -a_1(alpha-1) and
    b = floor(T(alpha-1) + alpha) locate the bounding rectangles of the
    natural extension domain; they are undefined elsewhere.
    """

    alpha: float

    def __post_init__(self) -> None:
        if not (0.5 <= self.alpha <= 1.0):
            raise DomainError(f"alpha must lie in [1/2, 1], got {self.alpha}")

    @property
    def g(self) -> float:
        return G

    @property
    def lo(self) -> float:
        """Left endpoint of the domain [alpha-1, alpha)."""
        return self.alpha - 1.0

    @cached_property
    def d(self) -> int:
        if not (G < self.alpha < 1.0):
            raise DomainError(f"d is defined only for alpha in (g, 1), got {self.alpha}")
        dval = -digit(self, self.alpha - 1.0)
        if dval < 3:
            raise DomainError(f"derived d = {dval} < 3 (alpha = {self.alpha})")
        return dval

    @cached_property
    def b(self) -> int:
        if not (G < self.alpha < 1.0):
            raise DomainError(f"b is defined only for alpha in (g, 1), got {self.alpha}")
        bval = math.floor(t_alpha(self, self.alpha - 1.0) + self.alpha)
        if bval not in (0, 1) or (self.d == 3 and bval != 0):
            raise DomainError(f"derived b = {bval} inconsistent (alpha = {self.alpha}, d = {self.d})")
        return bval


@dataclass(frozen=True)
class OrbitPoint:
    x: float
    k: int
    terminated: bool = False


@dataclass(frozen=True)
class DigitSeq:
    """A finite digit word; a single trailing 0 marks a terminated (rational) orbit."""

    digits: tuple[int, ...]
    alpha: AlphaParam

    @property
    def terminated(self) -> bool:
        return bool(self.digits) and self.digits[-1] == 0

    @property
    def word(self) -> tuple[int, ...]:
        """The nonzero digits."""
        return self.digits[:-1] if self.terminated else self.digits


def _check_domain(alpha: AlphaParam, x: float) -> None:
    if not (alpha.alpha - 1.0 <= x < alpha.alpha):
        raise DomainError(f"x = {x} outside [{alpha.alpha - 1.0}, {alpha.alpha})")


def digit_at(alpha: float, x: float) -> int:
    """floor(1/x + 1 - alpha) with post-correction, for a raw float alpha.

    The correction nudges the floor by one when rounding at a branch
    boundary would push 1/x - a out of [alpha-1, alpha).
    """
    if abs(x) < ZERO_EPS:
        return 0
    inv = 1.0 / x
    a = math.floor((inv + 1.0) - alpha)
    t = inv - a
    if t >= alpha:
        a += 1
    elif t < alpha - 1.0:
        a -= 1
    return a


def t_alpha_at(alpha: float, x: float) -> float:
    """One map step for a raw float alpha (no AlphaParam range check).

    Used by the alpha <-> 1-alpha symmetry tests, where the conjugate
    parameter may fall outside [1/2, 1].
    """
    a = digit_at(alpha, x)
    if a == 0:
        return 0.0
    return 1.0 / x - a


def digit(alpha: AlphaParam, x: float) -> int:
    """First digit of x: floor(1/x + 1 - alpha), corrected; 0 at the fixed point."""
    _check_domain(alpha, x)
    return digit_at(alpha.alpha, x)


def t_alpha(alpha: AlphaParam, x: float) -> float:
    """Apply the map once: 1/x - digit(alpha, x), staying in [alpha-1, alpha)."""
    _check_domain(alpha, x)
    return t_alpha_at(alpha.alpha, x)


def orbit(alpha: AlphaParam, x: float, n: int) -> list[OrbitPoint]:
    """The points (x, Tx, ..., T^n x).

    Once an iterate falls below the zero threshold (or a digit exceeds the
    magnitude cap) the orbit sits at the fixed point 0 and the remaining
    points carry terminated=True.
    """
    _check_domain(alpha, x)
    if n < 0:
        raise DomainError("n must be >= 0")
    pts: list[OrbitPoint] = []
    cur = x
    dead = abs(cur) < ZERO_EPS
    for k in range(n + 1):
        pts.append(OrbitPoint(0.0 if dead else cur, k, dead))
        if k == n:
            break
        if not dead:
            a = digit_at(alpha.alpha, cur)
            if a == 0 or abs(a) > DIGIT_CAP:
                dead = True
            else:
                cur = 1.0 / cur - a
                if abs(cur) < ZERO_EPS:
                    dead = True
    return pts


def expand(alpha: AlphaParam, x: float, n: int) -> DigitSeq:
    """First n digits of x; a trailing 0 if the orbit terminated earlier."""
    _check_domain(alpha, x)
    if n < 0:
        raise DomainError("n must be >= 0")
    digs: list[int] = []
    cur = x
    for _ in range(n):
        a = digit_at(alpha.alpha, cur)
        if a == 0 or abs(a) > DIGIT_CAP:
            digs.append(0)
            break
        digs.append(a)
        cur = 1.0 / cur - a
    return DigitSeq(tuple(digs), alpha)


def symmetry_conjugate(alpha: AlphaParam, x: float) -> tuple[float, float]:
    """The mirror parameter/point (1-alpha, -x).

    Returned as raw floats: the conjugate parameter usually falls below 1/2,
    outside AlphaParam's range, and is only ever fed to t_alpha_at.
    """
    _check_domain(alpha, x)
    return (1.0 - alpha.alpha, -x)


# ---------------------------------------------------------------------------
# vectorised map steps (numpy); same arithmetic as the scalar path

def digit_many(alpha: float, x: np.ndarray) -> np.ndarray:
    """Digits of an array of points (float64 -> float64 integers); 0 below threshold."""
    out = np.zeros_like(x)
    live = np.abs(x) >= ZERO_EPS
    inv = np.divide(1.0, x, out=np.zeros_like(x), where=live)
    a = np.floor((inv + 1.0) - alpha)
    t = inv - a
    a = np.where(t >= alpha, a + 1.0, a)
    t = inv - a
    a = np.where(t < alpha - 1.0, a - 1.0, a)
    out[live] = a[live]
    return out


def step_many(alpha: float, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised map step: returns (Tx, digits, terminated).

    Terminated entries (digit 0 or beyond the cap, or image below the zero
    threshold) are mapped to 0.
    """
    a = digit_many(alpha, x)
    dead = (a == 0.0) | (np.abs(a) > DIGIT_CAP)
    inv = np.divide(1.0, x, out=np.zeros_like(x), where=~dead)
    nxt = np.where(dead, 0.0, inv - a)
    dead = dead | (np.abs(nxt) < ZERO_EPS)
    nxt = np.where(dead, 0.0, nxt)
    return nxt, a, dead

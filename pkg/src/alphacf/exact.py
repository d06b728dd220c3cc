"""Exact rational arithmetic for the map.

Every float alpha is an exact binary rational, so branch boundaries,
cylinder endpoints and endpoint itineraries can be computed without any
rounding by lifting alpha to a Fraction.  These helpers back the cylinder
machinery and serve as oracles for the floating-point path.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError

Interval = tuple[Fraction, Fraction]


def lift(alpha: float) -> Fraction:
    return Fraction(alpha)


def digit_exact(alpha: Fraction, x: Fraction) -> int:
    """floor(1/x + 1 - alpha); 0 at the fixed point.  No correction needed."""
    if x == 0:
        return 0
    return math.floor(1 / x + 1 - alpha)


def step_exact(alpha: Fraction, x: Fraction) -> tuple[int, Fraction]:
    """One exact map step: (digit, 1/x - digit)."""
    a = digit_exact(alpha, x)
    if a == 0:
        return 0, Fraction(0)
    return a, 1 / x - a


def expand_exact(alpha: Fraction, x: Fraction, n: int) -> list[int]:
    """First n digits of x, stopping (without a 0 marker) when the orbit dies."""
    digs: list[int] = []
    cur = x
    for _ in range(n):
        a, cur = step_exact(alpha, cur)
        if a == 0:
            break
        digs.append(a)
    return digs


def branch_domain(alpha: Fraction, a: int) -> Interval | None:
    """Closure of {x : digit(x) = a} inside [alpha-1, alpha], or None if empty.

    For every nonzero digit this is [1/(a+alpha), 1/(a+alpha-1)] clipped to
    the domain; endpoint topology is ignored throughout (measure zero).
    """
    if a == 0:
        return None
    den_lo = a + alpha
    den_hi = a + alpha - 1
    if den_lo == 0 or den_hi == 0:
        # only reachable at alpha = 1 with a = -1; that branch is empty
        return None
    lo = 1 / den_lo
    hi = 1 / den_hi
    if lo > hi:
        return None
    lo = max(lo, alpha - 1)
    hi = min(hi, alpha)
    if lo >= hi:
        return None
    return lo, hi


def branch_image(alpha: Fraction, a: int, interval: Interval) -> Interval | None:
    """Image under x -> 1/x - a of (branch a) intersected with `interval`.

    The branch map is decreasing, so the image of [lo, hi] is
    [1/hi - a, 1/lo - a].  Returns None when the intersection is empty.
    """
    dom = branch_domain(alpha, a)
    if dom is None:
        return None
    lo = max(dom[0], interval[0])
    hi = min(dom[1], interval[1])
    if lo >= hi:
        return None
    return 1 / hi - a, 1 / lo - a


def endpoint_expansion(alpha: Fraction, x0: Fraction, n: int) -> list[int]:
    """Digit itinerary of a domain endpoint, up to n digits.

    Iterates the exact map from x0 (alpha or alpha-1).  The stream stops
    when the orbit hits 0 exactly; continuations past such a hit carry
    vanishing cylinder length and are dropped.
    """
    return expand_exact(alpha, x0, n)


def orbit_exact(alpha: Fraction, x: Fraction, n: int) -> list[Fraction]:
    """(x, Tx, ..., T^n x) in exact arithmetic; sticks at 0 after termination."""
    pts = [x]
    cur = x
    for _ in range(n):
        _, cur = step_exact(alpha, cur)
        pts.append(cur)
    return pts


def check_in_domain(alpha: Fraction, x: Fraction) -> None:
    if not (alpha - 1 <= x < alpha):
        raise DomainError(f"{x} outside [{alpha - 1}, {alpha})")

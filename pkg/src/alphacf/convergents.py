"""Convergent numerators/denominators p_n, q_n and derived quantities.

Digit words act on a 2x2 integer matrix by right multiplication with
(0 1; 1 a); columns are consecutive (p, q) pairs.  The exact path keeps
arbitrary-precision integers (q_n grows exponentially); the log path keeps
only log|q_n| and the ratio q_{n-1}/q_n and never overflows, which is what
the entropy estimators iterate for n up to 10^6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DomainError, SingularityError

_TINY = 1e-300


@dataclass(frozen=True)
class ConvergentState:
    """The matrix (p_{n-1}, p_n; q_{n-1}, q_n) after n digits."""

    p_prev: int
    p_cur: int
    q_prev: int
    q_cur: int
    n: int

    @classmethod
    def initial(cls) -> "ConvergentState":
        return cls(1, 0, 0, 1, 0)

    @property
    def determinant(self) -> int:
        return self.p_prev * self.q_cur - self.p_cur * self.q_prev


@dataclass(frozen=True)
class LogConvergentState:
    """Overflow-free companion: log|q_n| and q_{n-1}/q_n."""

    log_q: float
    ratio: float
    n: int

    @classmethod
    def initial(cls) -> "LogConvergentState":
        return cls(0.0, 0.0, 0)


def push_digit(state: ConvergentState, a: int) -> ConvergentState:
    """Append one digit via the three-term recurrences."""
    if a == 0:
        raise DomainError("digit must be nonzero")
    return ConvergentState(
        p_prev=state.p_cur,
        p_cur=a * state.p_cur + state.p_prev,
        q_prev=state.q_cur,
        q_cur=a * state.q_cur + state.q_prev,
        n=state.n + 1,
    )


def from_digits(digits: Iterable[int]) -> ConvergentState:
    state = ConvergentState.initial()
    for a in digits:
        state = push_digit(state, a)
    return state


def convergent_value(state: ConvergentState) -> Fraction:
    """p_n / q_n as an exact rational."""
    if state.q_cur == 0:
        raise SingularityError("q_n = 0: no convergent")
    return Fraction(state.p_cur, state.q_cur)


def reconstruct(state: ConvergentState, tail):
    """Invert the digit word: x = (p_{n-1} t + p_n) / (q_{n-1} t + q_n).

    Accepts a float or Fraction tail and computes in that arithmetic.
    """
    den = state.q_prev * tail + state.q_cur
    if den == 0 or (isinstance(den, float) and abs(den) < _TINY):
        raise SingularityError("singular denominator in reconstruction")
    return (state.p_prev * tail + state.p_cur) / den


def approx_error(state: ConvergentState, tail):
    """|x - p_n/q_n| from the closed form |t| / |q_n (q_{n-1} t + q_n)|.

    Computed from the formula rather than by subtraction: the subtraction
    cancels catastrophically once q_n is large.
    """
    if state.q_cur == 0:
        raise SingularityError("q_n = 0")
    den = state.q_prev * tail + state.q_cur
    if den == 0 or (isinstance(den, float) and abs(den) < _TINY):
        raise SingularityError("singular denominator in error formula")
    return abs(tail) / abs(state.q_cur * den)


def psi_derivative(state: ConvergentState, y):
    """|psi'(y)| = 1/(q_{n-1} y + q_n)^2 for the local inverse branch."""
    den = state.q_prev * y + state.q_cur
    if den == 0 or (isinstance(den, float) and abs(den) < _TINY):
        raise SingularityError("singular denominator in psi'")
    return 1 / (den * den)


def push_digit_log(state: LogConvergentState, a: int) -> LogConvergentState:
    """Log-space digit push: q_n/q_{n-1} = a + q_{n-2}/q_{n-1}."""
    if a == 0:
        raise DomainError("digit must be nonzero")
    growth = a + state.ratio
    if abs(growth) < _TINY:
        raise SingularityError(f"|a + ratio| = {abs(growth)} below working range")
    return LogConvergentState(
        log_q=state.log_q + math.log(abs(growth)),
        ratio=1.0 / growth,
        n=state.n + 1,
    )

"""Cylinder intervals, fullness, the non-full sets B_n, and the jump map.

All interval arithmetic here is exact: alpha is lifted to the Fraction it
denotes as a double, branch domains are rational intervals, and a cylinder
is tracked forward as (digit matrix, image interval).  The cylinder's own
interval is the Moebius image of the image interval under the inverse
word, so endpoints stay exact rationals.  Endpoint topology (open/closed)
is ignored: it never carries measure and never decides fullness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import exact
from .cfmap import AlphaParam, digit_at
from .convergents import ConvergentState, push_digit
from .errors import DomainError, SingularityError

Interval = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class CylinderSpec:
    """A digit word with its interval; lo is None when inadmissible."""

    word: tuple[int, ...]
    lo: Fraction | None
    hi: Fraction | None
    full: bool
    truncated_at: int | None
    alpha: float

    @property
    def admissible(self) -> bool:
        return self.lo is not None and self.hi is not None and self.lo < self.hi

    @property
    def length(self) -> Fraction:
        if not self.admissible:
            return Fraction(0)
        return self.hi - self.lo


@dataclass(frozen=True)
class JumpRecord:
    x: float
    N: int
    image: float


def _full_interval(alpha_f: Fraction) -> Interval:
    return (alpha_f - 1, alpha_f)


def _mobius(mat: ConvergentState, y: Fraction) -> Fraction:
    den = mat.q_prev * y + mat.q_cur
    if den == 0:
        raise SingularityError("Moebius denominator vanished")
    return Fraction(mat.p_prev * y + mat.p_cur, den)


def _word_interval(mat: ConvergentState, image: Interval) -> Interval:
    a = _mobius(mat, image[0])
    b = _mobius(mat, image[1])
    return (a, b) if a <= b else (b, a)


def _extend(alpha_f: Fraction, image: Interval, mat: ConvergentState, a: int):
    """Append digit a: returns (new_image, new_mat) or None if inadmissible."""
    img = exact.branch_image(alpha_f, a, image)
    if img is None:
        return None
    return img, push_digit(mat, a)


def cylinder_of(alpha: AlphaParam, word: Sequence[int]) -> CylinderSpec:
    """Interval of the cylinder <a_1, ..., a_n> by exact branch pullback.

    truncated_at records the first prefix length whose forward image fell
    short of [alpha-1, alpha); full means that never happened.  An empty
    intersection yields an inadmissible (measureless) spec, not an error.
    """
    word = tuple(word)
    if not word or any(a == 0 for a in word):
        raise DomainError("word must be nonempty with nonzero digits")
    alpha_f = exact.lift(alpha.alpha)
    full_iv = _full_interval(alpha_f)
    image: Interval = full_iv
    mat = ConvergentState.initial()
    truncated_at: int | None = None
    for k, a in enumerate(word, start=1):
        ext = _extend(alpha_f, image, mat, a)
        if ext is None:
            return CylinderSpec(word, None, None, False, truncated_at or k, alpha.alpha)
        image, mat = ext
        if truncated_at is None and image != full_iv:
            truncated_at = k
    lo, hi = _word_interval(mat, image)
    return CylinderSpec(word, lo, hi, image == full_iv, truncated_at, alpha.alpha)


def is_full(spec: CylinderSpec) -> bool:
    """T^n maps the cylinder onto the whole domain (no truncation happened)."""
    if not spec.admissible:
        raise DomainError("inadmissible cylinder has no fullness")
    return spec.full


def endpoint_image_span(spec: CylinderSpec) -> tuple[float, float]:
    """Forward images of the interval endpoints under the word's branches.

    Secondary fullness validator: for a full cylinder these span
    [alpha-1, alpha] exactly.
    """
    if not spec.admissible:
        raise DomainError("inadmissible cylinder")
    pts = [spec.lo, spec.hi]
    for a in spec.word:
        pts = [1 / p - a if p != 0 else Fraction(0) for p in pts]
    return (float(min(pts)), float(max(pts)))


def _branch_digits(alpha_f: Fraction, image: Interval, cap_per_side: int = 64) -> Iterator[int]:
    """Digits whose branch meets `image`, widest branches first per side."""
    lo, hi = image
    if hi > 0:
        plo = max(lo, Fraction(0))
        a = exact.digit_exact(alpha_f, hi)
        for _ in range(cap_per_side):
            dom = exact.branch_domain(alpha_f, a)
            if dom is None or dom[1] <= plo:
                break
            if dom[0] < hi:
                yield a
            a += 1
    if lo < 0:
        nhi = min(hi, Fraction(0))
        a = exact.digit_exact(alpha_f, lo)
        for _ in range(cap_per_side):
            dom = exact.branch_domain(alpha_f, a)
            if dom is None or dom[0] >= nhi:
                break
            if dom[1] > lo:
                yield a
            a -= 1


def max_cylinder_measure(alpha: AlphaParam, n: int, budget: int = 256) -> float:
    """Maximum Lebesgue length among sampled admissible cylinders of length n.

    Beam search keeping the `budget` widest cylinders per level; the widest
    cylinders always descend from wide parents, so a modest beam finds the
    maximum in practice.  The value is a certified lower bound on the true
    maximum in any case.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    alpha_f = exact.lift(alpha.alpha)
    frontier = [(_full_interval(alpha_f), ConvergentState.initial())]
    best: Fraction = Fraction(0)
    for level in range(1, n + 1):
        scored = []
        for image, mat in frontier:
            for a in _branch_digits(alpha_f, image):
                ext = _extend(alpha_f, image, mat, a)
                if ext is None:
                    continue
                img2, mat2 = ext
                wlo, whi = _word_interval(mat2, img2)
                scored.append((whi - wlo, img2, mat2))
        scored.sort(key=lambda t: t[0], reverse=True)
        if not scored:
            return 0.0
        if level == n:
            best = scored[0][0]
        frontier = [(img, mat) for _, img, mat in scored[:budget]]
    return float(best)


def _nonfull_levels(alpha: AlphaParam, n: int) -> list[tuple[int, Fraction]]:
    """(count, measure) of B_k for k = 1..n.

    Candidate words are concatenations of prefixes of the endpoint
    itineraries of alpha and alpha-1 (the only words that can stay
    non-full), pruned as soon as a prefix goes full or inadmissible.
    """
    alpha_f = exact.lift(alpha.alpha)
    full_iv = _full_interval(alpha_f)
    stream_a = exact.endpoint_expansion(alpha_f, alpha_f, n)
    stream_b = exact.endpoint_expansion(alpha_f, alpha_f - 1, n)
    streams = (stream_a, stream_b)

    # state: (word, stream index, position inside the current run)
    words: dict[tuple[int, ...], tuple[Interval, ConvergentState]] = {
        (): (full_iv, ConvergentState.initial())
    }
    states: set[tuple[tuple[int, ...], int, int]] = {((), 0, 0), ((), 1, 0)}
    levels: list[tuple[int, Fraction]] = []
    for _ in range(n):
        new_words: dict[tuple[int, ...], tuple[Interval, ConvergentState]] = {}
        new_states: set[tuple[tuple[int, ...], int, int]] = set()
        for word, s, j in states:
            nexts: set[tuple[int, int, int]] = set()
            if j < len(streams[s]):
                nexts.add((streams[s][j], s, j + 1))
            for t in (0, 1):
                if streams[t]:
                    nexts.add((streams[t][0], t, 1))
            parent = words[word]
            for a, t, jj in nexts:
                child = word + (a,)
                if child not in new_words:
                    ext = _extend(alpha_f, parent[0], parent[1], a)
                    if ext is None or ext[0] == full_iv:
                        new_words[child] = None  # dead: inadmissible or full prefix
                    else:
                        new_words[child] = ext
                if new_words[child] is not None:
                    new_states.add((child, t, jj))
        words = {w: v for w, v in new_words.items() if v is not None}
        states = new_states
        measure = sum((_word_interval(mat, img)[1] - _word_interval(mat, img)[0]
                       for img, mat in words.values()), Fraction(0))
        levels.append((len(words), measure))
        if not words:
            levels.extend((0, Fraction(0)) for _ in range(n - len(levels)))
            break
    return levels


def nonfull_union_measure(alpha: AlphaParam, n: int) -> float:
    """lambda(B_n): total length of cylinders whose every prefix is non-full."""
    if not (1 <= n <= 20):
        raise DomainError("n must be in [1, 20]")
    return float(_nonfull_levels(alpha, n)[n - 1][1])


def nonfull_level_stats(alpha: AlphaParam, n: int) -> list[tuple[int, float]]:
    """(word count, measure) of B_k for each k <= n."""
    if not (1 <= n <= 20):
        raise DomainError("n must be in [1, 20]")
    return [(c, float(m)) for c, m in _nonfull_levels(alpha, n)]


def first_full_prefix(alpha: AlphaParam, x: float, bound: int) -> tuple[int, ConvergentState | None]:
    """Least n <= bound with <a_1(x),...,a_n(x)> full, with its digit matrix."""
    alpha_f = exact.lift(alpha.alpha)
    full_iv = _full_interval(alpha_f)
    image: Interval = full_iv
    mat = ConvergentState.initial()
    cur = x
    for k in range(1, bound + 1):
        a = digit_at(alpha.alpha, cur)
        if a == 0 or abs(a) > 10 ** 15:
            return 0, None
        ext = _extend(alpha_f, image, mat, a)
        if ext is None:
            return 0, None
        image, mat = ext
        cur = 1.0 / cur - a
        if image == full_iv:
            return k, mat
    return 0, None


def jump(alpha: AlphaParam, x: float, search_bound: int = 50) -> JumpRecord:
    """First-full-cylinder acceleration: x -> T^{N(x)} x, N = 0 if none found."""
    if not (alpha.alpha - 1.0 <= x < alpha.alpha):
        raise DomainError(f"x = {x} outside the domain")
    n, _ = first_full_prefix(alpha, x, search_bound)
    if n == 0:
        return JumpRecord(x, 0, x)
    cur = x
    for _ in range(n):
        cur = 1.0 / cur - digit_at(alpha.alpha, cur)
    return JumpRecord(x, n, cur)

"""Fixed points of the parallel model: extremes, successor, enumeration.

Every parallel fixed point reachable from ``(n)`` lies on one chain
``p_0 ◁ p_1 ◁ ... ◁ p_k`` in lexicographic order.  ``p_0`` is reached by
always choosing ``R`` and ``p_k`` by always choosing ``L``.  Each link moves a
single grain leftwards, so the chain can be walked without exploring the
transition diagram.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .config import Configuration, config_to_json, format_config, is_close, lex_cmp
from .dynamics import Rule, apply_word, is_fixed, is_unimodal
from .explorer import ModelKind, bfs_reachable, fixed_points_of

__all__ = [
    "MalformedFixpoint",
    "ChainBroken",
    "PlateauProfile",
    "FixpointChain",
    "leftmost_fixpoint",
    "rightmost_fixpoint",
    "plateau_profile",
    "successor",
    "enumerate_fixpoints",
    "IntervalReport",
    "interval_check",
    "support_radius",
    "support_radius_report",
    "sweep_words",
]


class MalformedFixpoint(ValueError):
    """The configuration is not a pair of stairs with at most one plateau each."""


class ChainBroken(RuntimeError):
    """Walking successors from the rightmost fixed point missed the leftmost one."""

    def __init__(self, message: str, chain: list[Configuration]):
        super().__init__(message)
        self.chain = chain


def _word_length(n: int) -> int:
    # n^2 bounds the number of parallel steps from (n) to a fixed point
    return n * n


def leftmost_fixpoint(n: int) -> Configuration:
    """Lexicographically greatest parallel fixed point: always choose ``L``."""
    if n < 0:
        raise ValueError("grain count must be nonnegative")
    return apply_word(Configuration.initial(n), [Rule.LEFT] * _word_length(n))


def rightmost_fixpoint(n: int) -> Configuration:
    """Lexicographically smallest parallel fixed point: always choose ``R``."""
    if n < 0:
        raise ValueError("grain count must be nonnegative")
    return apply_word(Configuration.initial(n), [Rule.RIGHT] * _word_length(n))


@dataclass(frozen=True)
class PlateauProfile:
    """Plateaus of a fixed point, each given as its column pair ``(i, i + 1)``.

    ``peak`` is the leftmost column of maximal height.  When three or four
    columns share the maximum, the top is cut so that a pair of top columns
    serves as the plateau of any side that has none below the top.
    """

    peak: int
    left_plateau: tuple[int, int] | None = None
    top_plateau: tuple[int, int] | None = None
    right_plateau: tuple[int, int] | None = None
    rightmost_top: int | None = None

    def __post_init__(self) -> None:
        if self.rightmost_top is None:
            object.__setattr__(self, "rightmost_top", self.peak)


def _single_plateau(c: Configuration, lo: int, hi: int, side: str) -> tuple[int, int] | None:
    found = [(i, i + 1) for i in range(lo, hi) if c[i] == c[i + 1] > 0]
    if len(found) > 1:
        raise MalformedFixpoint(f"{len(found)} plateaus on the {side} side of {format_config(c)}")
    return found[0] if found else None


def plateau_profile(c: Configuration) -> PlateauProfile:
    if not is_fixed(c) or not is_unimodal(c):
        raise MalformedFixpoint(f"{format_config(c)} is not a unimodal fixed point")
    if not c.heights:
        raise MalformedFixpoint("the empty configuration has no profile")
    top = max(c.heights)
    tops = [i for i in range(c.start, c.end + 1) if c[i] == top]
    t0, t1 = tops[0], tops[-1]
    width = len(tops)
    if width > 4:
        raise MalformedFixpoint(f"{width} columns share the top of {format_config(c)}")
    if width <= 2:
        left = _single_plateau(c, c.start, t0, "left")
        right = _single_plateau(c, t1, c.end, "right")
        top_pair = (t0, t1) if width == 2 else None
        return PlateauProfile(t0, left, top_pair, right, t1)
    # Cutting a flat top of 3 or 4 columns leaves top pairs acting as side plateaus.
    side_left = _single_plateau(c, c.start, t0, "left")
    side_right = _single_plateau(c, t1, c.end, "right")
    if side_left and side_right:
        raise MalformedFixpoint(f"too many plateaus in {format_config(c)}")
    if width == 4:
        if side_left or side_right:
            raise MalformedFixpoint(f"too many plateaus in {format_config(c)}")
        return PlateauProfile(t0, (t0, t0 + 1), (t0 + 1, t0 + 2), (t1 - 1, t1), t1)
    if side_right:
        return PlateauProfile(t0, (t0, t0 + 1), None, side_right, t1)
    # left side keeps its own plateau, or the ground one for a perfect stair
    return PlateauProfile(t0, side_left, None, (t0 + 1, t1), t1)


def _moved(c: Configuration, add: int, remove: int) -> Configuration | None:
    lo, hi = min(c.start, add), max(c.end, add)
    h = c.window(lo, hi)
    h[add - lo] += 1
    h[remove - lo] -= 1
    if h[remove - lo] < 0:
        return None
    return Configuration.from_heights(h, origin=lo)


def _candidates(a: Configuration, profile: PlateauProfile) -> list[tuple[int, int]]:
    """Admissible (add, remove) column pairs, most specific first."""
    add = profile.left_plateau[1] if profile.left_plateau else a.start - 1
    remove = profile.right_plateau[1] if profile.right_plateau else profile.rightmost_top
    pairs = [(add, remove)]
    # Fallbacks mirror the elimination argument: add at x+1 (or the ground
    # column), remove at z+1 or at the rightmost top column.
    adds = [add] + ([a.start - 1] if add != a.start - 1 else [])
    removes = [r for r in (remove, profile.right_plateau[1] if profile.right_plateau else None,
                           profile.rightmost_top) if r is not None]
    for x in adds:
        for z in removes:
            if (x, z) not in pairs:
                pairs.append((x, z))
    return pairs


def successor(a: Configuration, leftmost: Configuration | None = None) -> Configuration | None:
    """The fixed point ``b`` with ``a ◁ b``, or ``None`` if ``a`` is the leftmost.

    One grain moves from the right plateau (or the rightmost top column when
    there is none) onto the upper column of the left plateau.  A perfect
    ascending stair is read as having a plateau of height 0 on the ground, so
    the grain then starts a new column left of the support.

    ``leftmost`` may be passed to avoid recomputing the chain's end.
    """
    if not is_fixed(a):
        raise ValueError(f"{format_config(a)} is not a fixed point")
    n = a.grains
    if leftmost is None:
        leftmost = leftmost_fixpoint(n)
    if lex_cmp(a, leftmost) >= 0:
        return None
    profile = plateau_profile(a)
    for add, remove in _candidates(a, profile):
        b = _moved(a, add, remove)
        if b is not None and is_fixed(b) and is_unimodal(b) and is_close(a, b) and b.grains == n:
            return b
    return None


@dataclass
class FixpointChain:
    n: int
    points: list[Configuration] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def rightmost(self) -> Configuration:
        return self.points[0]

    @property
    def leftmost(self) -> Configuration:
        return self.points[-1]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "count": len(self.points),
            "rightmost": config_to_json(self.rightmost),
            "leftmost": config_to_json(self.leftmost),
            "points": [config_to_json(p) for p in self.points],
        }


def enumerate_fixpoints(n: int) -> FixpointChain:
    """All parallel fixed points of ``(n)`` in ascending lexicographic order.

    Raises :class:`ChainBroken` if the successor walk stalls or overshoots
    before reaching the leftmost fixed point.
    """
    first, last = rightmost_fixpoint(n), leftmost_fixpoint(n)
    chain = [first]
    # each link moves one grain left; a chain cannot be longer than n^2 * n links
    budget = max(1, n) ** 3 + 1
    while chain[-1] != last:
        nxt = successor(chain[-1], leftmost=last)
        if nxt is None or lex_cmp(nxt, last) > 0 or len(chain) > budget:
            raise ChainBroken(
                f"successor walk from {format_config(first)} stopped at "
                f"{format_config(chain[-1])} without reaching {format_config(last)}",
                chain,
            )
        chain.append(nxt)
    return FixpointChain(n, chain)


@dataclass
class IntervalReport:
    n: int
    passed: bool
    chain: list[Configuration]
    sspm_in_interval: list[Configuration]
    missing: list[Configuration]
    extra: list[Configuration]
    outside: list[Configuration]

    def to_json(self) -> dict:
        fmt = lambda cs: [format_config(c) for c in cs]  # noqa: E731
        return {
            "n": self.n,
            "pass": self.passed,
            "chain": fmt(self.chain),
            "sspm_in_interval": fmt(self.sspm_in_interval),
            "missing": fmt(self.missing),
            "extra": fmt(self.extra),
            "outside": fmt(self.outside),
        }


def interval_check(n: int, **caps) -> IntervalReport:
    """Compare the chain with the sequential fixed points lying between its ends.

    ``missing`` holds sequential fixed points inside the interval that the
    chain skips, ``extra`` chain points that are not sequential fixed points,
    ``outside`` the sequential fixed points beyond either end.
    """
    chain = enumerate_fixpoints(n).points
    seq_fixed = fixed_points_of(bfs_reachable(n, ModelKind.SSPM, **caps))
    lo, hi = chain[0], chain[-1]
    inside = [p for p in seq_fixed if lex_cmp(lo, p) <= 0 <= lex_cmp(hi, p)]
    outside = [p for p in seq_fixed if p not in inside]
    chain_set, inside_set = set(chain), set(inside)
    missing = [p for p in inside if p not in chain_set]
    extra = [p for p in chain if p not in inside_set]
    return IntervalReport(n, not missing and not extra, chain, inside, missing, extra, outside)


def support_radius(points: Iterable[Configuration]) -> int:
    """Largest ``|column|`` occupied by any of ``points`` (0 if all empty)."""
    r = 0
    for p in points:
        if p.heights:
            r = max(r, abs(p.start), abs(p.end))
    return r


def support_radius_report(ns: Iterable[int]) -> list[dict]:
    """Per ``n``: the fixed-point chain's occupied span against ``floor(sqrt(2n))``."""
    rows = []
    for n in ns:
        chain = enumerate_fixpoints(n).points
        starts = [p.start for p in chain if p.heights]
        ends = [p.end for p in chain if p.heights]
        bound = math.isqrt(2 * n)
        radius = support_radius(chain)
        rows.append(
            {
                "n": n,
                "min_column": min(starts, default=0),
                "max_column": max(ends, default=0),
                "radius": radius,
                "bound": bound,
                "ok": radius <= bound,
            }
        )
    return rows


def sweep_words(n: int) -> list[Configuration]:
    """Images of ``(n)`` under ``R^m``, then words turning ``R`` into ``L`` one letter
    at a time from the left, ending with ``L^m`` (``m = n^2``)."""
    m = _word_length(n)
    root = Configuration.initial(n)
    return [apply_word(root, [Rule.LEFT] * k + [Rule.RIGHT] * (m - k)) for k in range(m + 1)]

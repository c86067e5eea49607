"""Configurations of a one-dimensional sand pile and the closeness relations.

A configuration is a finitely supported sequence of column heights anchored at
absolute position 0 (the column of the initial pile).  Two shapes that are
translates of each other are *different* configurations.

Lexicographic order reads absolute indices left to right with implicit zeros:
at the first index where two configurations differ, the one holding more grains
is greater.  So piles sitting further to the left compare greater.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "ConfigParseError",
    "Configuration",
    "DeltaSeq",
    "parse_config",
    "format_config",
    "config_to_json",
    "config_from_json",
    "delta",
    "is_close",
    "is_weakly_close",
    "lex_cmp",
]


class ConfigParseError(ValueError):
    """Raised when configuration text or JSON cannot be decoded."""


def _trim(origin: int, values: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    lo, hi = 0, len(values)
    while lo < hi and values[lo] == 0:
        lo += 1
    while hi > lo and values[hi - 1] == 0:
        hi -= 1
    if lo == hi:
        return 0, ()
    return origin + lo, tuple(values[lo:hi])


@dataclass(frozen=True)
class Configuration:
    """Column heights ``heights[k]`` stored at absolute index ``origin + k``.

    Always build through :meth:`from_heights` (or :func:`parse_config`), which
    trims zero columns so that structural equality is configuration equality.
    """

    origin: int
    heights: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.heights and (self.heights[0] <= 0 or self.heights[-1] <= 0):
            raise ValueError("Configuration must be canonical; use Configuration.from_heights")
        if any(h < 0 for h in self.heights):
            raise ValueError("heights must be nonnegative")
        if not self.heights and self.origin != 0:
            raise ValueError("the empty configuration has origin 0")

    @classmethod
    def from_heights(cls, heights: Iterable[int], origin: int = 0) -> "Configuration":
        values = [int(h) for h in heights]
        if any(h < 0 for h in values):
            raise ValueError(f"negative height in {values}")
        return cls(*_trim(origin, values))

    @classmethod
    def initial(cls, n: int) -> "Configuration":
        """The pile of ``n`` grains stacked on column 0."""
        if n < 0:
            raise ValueError("grain count must be nonnegative")
        return cls.from_heights([n])

    @classmethod
    def empty(cls) -> "Configuration":
        return cls(0, ())

    @property
    def start(self) -> int:
        """Leftmost occupied column (0 for the empty configuration)."""
        return self.origin

    @property
    def end(self) -> int:
        """Rightmost occupied column; ``start - 1`` when empty."""
        return self.origin + len(self.heights) - 1

    @property
    def grains(self) -> int:
        return sum(self.heights)

    def __getitem__(self, i: int) -> int:
        k = i - self.origin
        if 0 <= k < len(self.heights):
            return self.heights[k]
        return 0

    def window(self, lo: int, hi: int) -> list[int]:
        """Heights over absolute indices ``lo..hi`` inclusive."""
        return [self[i] for i in range(lo, hi + 1)]

    def sort_key(self) -> tuple:
        # empty has no positive column, so it is below everything else
        if not self.heights:
            return (0,)
        return (1, -self.origin, self.heights)

    def __lt__(self, other: "Configuration") -> bool:
        return lex_cmp(self, other) < 0

    def __le__(self, other: "Configuration") -> bool:
        return lex_cmp(self, other) <= 0

    def __gt__(self, other: "Configuration") -> bool:
        return lex_cmp(self, other) > 0

    def __ge__(self, other: "Configuration") -> bool:
        return lex_cmp(self, other) >= 0

    def __str__(self) -> str:
        return format_config(self)


@dataclass(frozen=True)
class DeltaSeq:
    """Componentwise difference ``a_i - b_i`` stored from absolute ``origin``.

    ``values`` covers the union of both supports; every other index is 0.
    """

    origin: int
    values: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        k = i - self.origin
        if 0 <= k < len(self.values):
            return self.values[k]
        return 0

    def nonzero(self) -> tuple[int, ...]:
        return tuple(v for v in self.values if v)


_TOKEN = re.compile(r"^(_?)(\d+)$")


def parse_config(text: str) -> Configuration:
    """Parse ``"1,4,_3,2,1"``; the ``_``-marked entry sits at column 0.

    The bare literal ``"0"`` denotes the empty configuration.
    """
    text = text.strip()
    if text == "0":
        return Configuration.empty()
    tokens = [t.strip() for t in text.split(",")]
    values: list[int] = []
    marker = None
    for k, tok in enumerate(tokens):
        if tok.startswith("-") or tok.startswith("_-"):
            raise ConfigParseError(f"negative height {tok!r} in {text!r}")
        m = _TOKEN.match(tok)
        if m is None:
            raise ConfigParseError(f"malformed token {tok!r} in {text!r}")
        if m.group(1):
            if marker is not None:
                raise ConfigParseError(f"multiple '_' markers in {text!r}")
            marker = k
        values.append(int(m.group(2)))
    if marker is None:
        raise ConfigParseError(f"no '_' marker for column 0 in {text!r}")
    return Configuration.from_heights(values, origin=-marker)


def format_config(c: Configuration) -> str:
    """Inverse of :func:`parse_config`; column 0 is always shown, even if empty."""
    if not c.heights:
        return "0"
    lo, hi = min(c.start, 0), max(c.end, 0)
    return ",".join(("_" if i == 0 else "") + str(c[i]) for i in range(lo, hi + 1))


def config_to_json(c: Configuration) -> dict:
    return {"origin": c.origin, "heights": list(c.heights)}


def config_from_json(obj: dict) -> Configuration:
    try:
        origin = obj["origin"]
        heights = obj["heights"]
    except (KeyError, TypeError) as exc:
        raise ConfigParseError(f"expected {{'origin', 'heights'}}, got {obj!r}") from exc
    if not isinstance(origin, int) or not all(isinstance(h, int) for h in heights):
        raise ConfigParseError(f"non-integer field in {obj!r}")
    if any(h < 0 for h in heights):
        raise ConfigParseError(f"negative height in {obj!r}")
    return Configuration.from_heights(heights, origin=origin)


def delta(a: Configuration, b: Configuration) -> DeltaSeq:
    if not a.heights and not b.heights:
        return DeltaSeq(0, ())
    if not a.heights:
        lo, hi = b.start, b.end
    elif not b.heights:
        lo, hi = a.start, a.end
    else:
        lo, hi = min(a.start, b.start), max(a.end, b.end)
    return DeltaSeq(lo, tuple(a[i] - b[i] for i in range(lo, hi + 1)))


def _weak_close_values(values: Iterable[int]) -> bool:
    # (0*-1 0*1 0*)* <=> values in {-1,0,1}, prefix sums in {-1,0}, total 0
    acc = 0
    for v in values:
        if v not in (-1, 0, 1):
            return False
        acc += v
        if acc not in (-1, 0):
            return False
    return acc == 0


def is_close(a: Configuration, b: Configuration) -> bool:
    """``a ◁ b``: ``b`` is ``a`` with one grain moved from a right column to a left one."""
    nz = delta(a, b).nonzero()
    return nz == (-1, 1)


def is_weakly_close(a: Configuration, b: Configuration) -> bool:
    """``a ◁* b``: the difference splits into concatenated ``-1 ... +1`` blocks.

    Reflexive; not the transitive closure of :func:`is_close`.
    """
    return _weak_close_values(delta(a, b).values)


def lex_cmp(a: Configuration, b: Configuration) -> int:
    """Return -1, 0 or 1 as ``a`` is lexicographically below, equal or above ``b``."""
    for v in delta(a, b).values:
        if v:
            return 1 if v > 0 else -1
    return 0

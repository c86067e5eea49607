"""Sequential (SSPM) and parallel (PSSPM) sand pile dynamics.

Two local rules move a single grain off column ``i``:

* ``L`` when ``c[i-1] + 2 <= c[i]`` -- the grain falls to column ``i-1``;
* ``R`` when ``c[i] >= c[i+1] + 2`` -- the grain falls to column ``i+1``.

The sequential model applies exactly one rule per step.  The parallel model
fires every applicable column at once; a column where both rules apply fires
only one of them, chosen by the caller.  On unimodal configurations there is at
most one such column.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .config import Configuration

__all__ = [
    "Rule",
    "FiringPlan",
    "UnimodalityError",
    "can_fire_left",
    "can_fire_right",
    "sspm_successors",
    "choice_columns",
    "choice_column",
    "firing_plan",
    "psspm_step",
    "psspm_successors",
    "op_L",
    "op_R",
    "apply_rule",
    "parse_word",
    "apply_word",
    "trajectory",
    "is_fixed",
    "is_unimodal",
]


class Rule(str, enum.Enum):
    """A letter of the choice alphabet; also labels which way a grain fell."""

    LEFT = "L"
    RIGHT = "R"

    def __str__(self) -> str:
        return self.value


Word = Sequence[Rule]


class UnimodalityError(ValueError):
    """More than one choice column was found on a configuration claimed reachable."""


@dataclass(frozen=True)
class FiringPlan:
    fires_left: frozenset[int]
    fires_right: frozenset[int]

    @property
    def empty(self) -> bool:
        return not self.fires_left and not self.fires_right


def can_fire_left(c: Configuration, i: int) -> bool:
    return c[i - 1] + 2 <= c[i]


def can_fire_right(c: Configuration, i: int) -> bool:
    return c[i] >= c[i + 1] + 2


def _move(c: Configuration, src: int, dst: int) -> Configuration:
    lo, hi = min(c.start, dst), max(c.end, dst)
    h = c.window(lo, hi)
    h[src - lo] -= 1
    h[dst - lo] += 1
    return Configuration.from_heights(h, origin=lo)


def sspm_successors(c: Configuration) -> list[tuple[Configuration, Rule, int]]:
    """All one-grain moves ``(target, rule, column)``, ordered by column then rule.

    Empty iff ``c`` is a fixed point.
    """
    out = []
    for i in range(c.start, c.end + 1):
        if can_fire_left(c, i):
            out.append((_move(c, i, i - 1), Rule.LEFT, i))
        if can_fire_right(c, i):
            out.append((_move(c, i, i + 1), Rule.RIGHT, i))
    return out


def choice_columns(c: Configuration) -> list[int]:
    return [i for i in range(c.start, c.end + 1) if can_fire_left(c, i) and can_fire_right(c, i)]


def choice_column(c: Configuration, strict: bool = True) -> int | None:
    """The column where both rules apply, if any.

    With ``strict`` a second such column raises :class:`UnimodalityError`;
    that cannot happen on a reachable configuration.
    """
    cols = choice_columns(c)
    if len(cols) > 1 and strict:
        raise UnimodalityError(f"{len(cols)} choice columns {cols} in {c}")
    return cols[0] if cols else None


def firing_plan(c: Configuration, choice: Rule = Rule.LEFT) -> FiringPlan:
    left, right = set(), set()
    for i in range(c.start, c.end + 1):
        fl, fr = can_fire_left(c, i), can_fire_right(c, i)
        if fl and fr:
            (left if choice is Rule.LEFT else right).add(i)
        elif fl:
            left.add(i)
        elif fr:
            right.add(i)
    return FiringPlan(frozenset(left), frozenset(right))


def psspm_step(c: Configuration, choice: Rule | str = Rule.LEFT) -> Configuration:
    """One parallel step; ``choice`` only matters at a choice column.

    Fixed points map to themselves.
    """
    plan = firing_plan(c, Rule(choice))
    if plan.empty:
        return c
    lo, hi = c.start - 1, c.end + 1
    h = c.window(lo, hi)
    for i in plan.fires_left:
        h[i - lo] -= 1
        h[i - 1 - lo] += 1
    for i in plan.fires_right:
        h[i - lo] -= 1
        h[i + 1 - lo] += 1
    return Configuration.from_heights(h, origin=lo)


def psspm_successors(c: Configuration) -> dict[Rule, Configuration]:
    """Labelled parallel transitions out of ``c``.

    A forced move carries both labels towards the same target; a fixed point
    has no transitions at all.
    """
    if is_fixed(c):
        return {}
    return {rule: psspm_step(c, rule) for rule in Rule}


def apply_rule(c: Configuration, rule: Rule) -> Configuration:
    # Follow the edge labelled `rule`, else the other label, else stay put.
    edges = psspm_successors(c)
    other = Rule.RIGHT if rule is Rule.LEFT else Rule.LEFT
    if rule in edges:
        return edges[rule]
    if other in edges:
        return edges[other]
    return c


def op_L(c: Configuration) -> Configuration:
    """Step choosing the top grain to fall left when there is a choice."""
    return apply_rule(c, Rule.LEFT)


def op_R(c: Configuration) -> Configuration:
    """Step choosing the top grain to fall right when there is a choice."""
    return apply_rule(c, Rule.RIGHT)


def parse_word(word: Union[str, Iterable[Rule]]) -> list[Rule]:
    """Accept ``"LRRL"`` (also the script letters ℒ/ℛ) or an iterable of rules."""
    if isinstance(word, str):
        table = {"L": Rule.LEFT, "R": Rule.RIGHT, "ℒ": Rule.LEFT, "ℛ": Rule.RIGHT}
        try:
            return [table[ch] for ch in word if not ch.isspace()]
        except KeyError as exc:
            raise ValueError(f"word {word!r} must only contain L and R") from exc
    return [Rule(r) for r in word]


def apply_word(c: Configuration, word: Union[str, Iterable[Rule]]) -> Configuration:
    for rule in parse_word(word):
        c = apply_rule(c, rule)
    return c


def trajectory(c: Configuration, word: Union[str, Iterable[Rule]]) -> list[Configuration]:
    """``c`` followed by the configuration after each letter of ``word``."""
    out = [c]
    for rule in parse_word(word):
        out.append(apply_rule(out[-1], rule))
    return out


def is_fixed(c: Configuration) -> bool:
    h = (0,) + c.heights + (0,)
    return all(abs(h[k + 1] - h[k]) <= 1 for k in range(len(h) - 1))


def is_unimodal(c: Configuration) -> bool:
    h = c.heights
    k = 0
    while k + 1 < len(h) and h[k] <= h[k + 1]:
        k += 1
    while k + 1 < len(h) and h[k] >= h[k + 1]:
        k += 1
    return k + 1 >= len(h)

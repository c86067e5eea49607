"""Brute-force checks of the model's theorems on small grain counts.

Each check takes ``n`` and returns ``(passed, witness)``.  A witness is
a short JSON-friendly description of a counterexample, or of something worth
reporting (such as an inclusion witness), or ``None``.
"""

from __future__ import annotations

import itertools
import math
import random
import re
import time
from dataclasses import dataclass
from typing import Callable

from .config import Configuration, format_config, is_close, is_weakly_close, lex_cmp, _weak_close_values
from .dynamics import (
    Rule,
    UnimodalityError,
    apply_word,
    choice_column,
    is_fixed,
    is_unimodal,
    op_L,
    op_R,
    psspm_step,
)
from .explorer import (
    CapExceeded,
    ModelKind,
    TransitionDiagram,
    bfs_reachable,
    diagram_stats,
    fixed_points_of,
    strict_inclusion_witness,
)
from .fixpoints import (
    ChainBroken,
    enumerate_fixpoints,
    interval_check,
    leftmost_fixpoint,
    rightmost_fixpoint,
    successor,
    support_radius,
    sweep_words,
)

__all__ = ["CHECKS", "CheckRecord", "run_checks", "lemma_violations", "weak_close_regex", "close_regex"]

CheckResult = tuple[bool, object]

_SYMBOL = {-1: "m", 0: "0", 1: "p"}
_WEAK = re.compile(r"(?:0*m0*p0*)*0*")
_CLOSE = re.compile(r"0*m0*p0*")


def _word_of(values) -> str:
    return "".join(_SYMBOL.get(v, "?") for v in values)


def weak_close_regex(values) -> bool:
    """Regular-language decision of ``◁*``; the zero padding on both sides is implicit."""
    return _WEAK.fullmatch(_word_of(values)) is not None


def close_regex(values) -> bool:
    return _CLOSE.fullmatch(_word_of(values)) is not None


def _fmt(c: Configuration) -> str:
    return format_config(c)


def _psspm(n: int, caps: dict) -> TransitionDiagram:
    return bfs_reachable(n, ModelKind.PSSPM, n_cap=caps.get("psspm"))


def _sspm(n: int, caps: dict) -> TransitionDiagram:
    return bfs_reachable(n, ModelKind.SSPM, n_cap=caps.get("sspm"))


def check_closure(n: int, caps: dict) -> CheckResult:
    for c in _psspm(n, caps).nodes:
        if c.grains != n or not is_unimodal(c):
            return False, _fmt(c)
        try:
            choice_column(c)
        except UnimodalityError as exc:
            return False, str(exc)
    return True, None


def check_relation_oracle(n: int, caps: dict) -> CheckResult:
    for length in range(min(n, 10) + 1):
        for values in itertools.product((-1, 0, 1), repeat=length):
            if _weak_close_values(values) != weak_close_regex(values):
                return False, list(values)
    return True, None


def check_step_consistency(n: int, caps: dict) -> CheckResult:
    for c in _psspm(n, caps).nodes:
        if op_L(c) != psspm_step(c, Rule.LEFT) or op_R(c) != psspm_step(c, Rule.RIGHT):
            return False, _fmt(c)
    return True, None


def lemma_violations(d: TransitionDiagram, limit: int = 1) -> list[dict]:
    """Trace check of the top-column lemma over every path of ``d``.

    A column is *armed* on a path segment once it is a highest column whose
    drop to its right neighbour is at most 2, and stays armed while it remains
    a highest column.  An armed column whose drop then exceeds 2 is a
    violation.  The mirrored form uses the left neighbour.  States are
    memoised on ``(node, armed sets)``, which covers all paths exactly.
    """

    def highest(c: Configuration) -> frozenset[int]:
        top = max(c.heights, default=0)
        return frozenset(i for i in range(c.start, c.end + 1) if c[i] == top)

    def ok_right(c, i):
        return c[i] <= c[i + 1] + 2

    def ok_left(c, i):
        return c[i - 1] + 2 >= c[i]

    found: list[dict] = []
    seen = set()
    stack: list[tuple[Configuration, frozenset, frozenset, tuple]] = [(d.root, frozenset(), frozenset(), ())]
    while stack and len(found) < limit:
        c, prev_r, prev_l, path = stack.pop()
        tops = highest(c)
        path = path + (c,)
        for prev, ok, form in ((prev_r, ok_right, "right"), (prev_l, ok_left, "left")):
            for i in prev & tops:
                if not ok(c, i):
                    found.append({"form": form, "column": i, "path": [_fmt(p) for p in path]})
        armed_r = frozenset(i for i in tops if i in prev_r or ok_right(c, i))
        armed_l = frozenset(i for i in tops if i in prev_l or ok_left(c, i))
        for t in d.successors(c):
            key = (t, armed_r, armed_l)
            if key not in seen:
                seen.add(key)
                stack.append((t, armed_r, armed_l, path))
    return found


def check_technical_lemma(n: int, caps: dict) -> CheckResult:
    bad = lemma_violations(_psspm(n, caps))
    return (not bad), (bad[0] if bad else None)


def check_path_similarity(n: int, caps: dict, samples: int = 200, seed: int = 0) -> CheckResult:
    rng = random.Random(seed * 1_000_003 + n)
    nodes = _psspm(n, caps).nodes
    for _ in range(samples):
        a = rng.choice(nodes)
        word = [rng.choice((Rule.LEFT, Rule.RIGHT)) for _ in range(rng.randint(0, n * n))]
        b, c = apply_word(op_R(a), word), apply_word(op_L(a), word)
        if not is_weakly_close(b, c):
            return False, {"a": _fmt(a), "word": "".join(r.value for r in word)}
    return True, None


def check_extremal(n: int, caps: dict) -> CheckResult:
    fixed = fixed_points_of(_psspm(n, caps))
    lo, hi = min(fixed, key=Configuration.sort_key), max(fixed, key=Configuration.sort_key)
    left, right = leftmost_fixpoint(n), rightmost_fixpoint(n)
    if left != hi or right != lo:
        return False, {"leftmost": _fmt(left), "lex_max": _fmt(hi), "rightmost": _fmt(right), "lex_min": _fmt(lo)}
    return True, None


def check_successor_uniqueness(n: int, caps: dict) -> CheckResult:
    fixed = fixed_points_of(_psspm(n, caps))
    top = fixed[-1]
    for a in fixed:
        if a == top:
            if successor(a) is not None:
                return False, {"a": _fmt(a), "reason": "leftmost has a successor"}
            continue
        after = [b for b in fixed if is_close(a, b)]
        if len(after) != 1 or successor(a) != after[0]:
            return False, {"a": _fmt(a), "oracle": [_fmt(b) for b in after], "successor": str(successor(a))}
    return True, None


def check_successor_minimality(n: int, caps: dict) -> CheckResult:
    """Weaker companion of successor-uniqueness: ``successor(a)`` is the
    lexicographically least fixed point ``b`` with ``a ◁ b``, and that is the
    next fixed point in lexicographic order."""
    fixed = fixed_points_of(_psspm(n, caps))
    for a, nxt in zip(fixed, fixed[1:]):
        after = [b for b in fixed if is_close(a, b)]
        least = min(after, key=Configuration.sort_key) if after else None
        if least != nxt or successor(a) != nxt:
            return False, {"a": _fmt(a), "next": _fmt(nxt), "successor": str(successor(a))}
    return True, None


def check_chain_completeness(n: int, caps: dict) -> CheckResult:
    try:
        chain = enumerate_fixpoints(n).points
    except ChainBroken as exc:
        return False, {"error": str(exc), "chain": [_fmt(p) for p in exc.chain]}
    fixed = fixed_points_of(_psspm(n, caps))
    if set(chain) != set(fixed):
        return False, {"chain": [_fmt(p) for p in chain], "oracle": [_fmt(p) for p in fixed]}
    for a, b in zip(chain, chain[1:]):
        if not is_close(a, b) or lex_cmp(a, b) >= 0:
            return False, {"link": [_fmt(a), _fmt(b)]}
    return True, None


def check_interval(n: int, caps: dict) -> CheckResult:
    report = interval_check(n, n_cap=caps.get("sspm"))
    if report.passed:
        return True, None
    return False, report.to_json()


def check_inclusion_witness(n: int, caps: dict) -> CheckResult:
    par, seq = _psspm(n, caps), _sspm(n, caps)
    stray = [c for c in par.nodes if c not in seq]
    if stray:
        return False, {"not_sequential": _fmt(stray[0])}
    w = strict_inclusion_witness(n, n_cap=caps.get("sspm"))
    return True, (None if w is None else _fmt(w))


def check_n2_bound(n: int, caps: dict) -> CheckResult:
    longest = diagram_stats(_psspm(n, caps)).max_path_length
    return longest <= n * n, {"max_path_length": longest, "bound": n * n}


def check_sqrt2n_bound(n: int, caps: dict) -> CheckResult:
    radius = support_radius(enumerate_fixpoints(n).points)
    bound = math.isqrt(2 * n)
    return radius <= bound, {"radius": radius, "bound": bound}


def check_word_sweep(n: int, caps: dict) -> CheckResult:
    images = sweep_words(n)
    for k, (a, b) in enumerate(zip(images, images[1:])):
        if not is_weakly_close(a, b):
            return False, {"k": k, "a": _fmt(a), "b": _fmt(b)}
        if a != b and not (is_fixed(a) and is_fixed(b) and is_close(a, b)):
            return False, {"k": k, "a": _fmt(a), "b": _fmt(b), "reason": "distinct images not ◁-linked"}
    return True, None


CHECKS: dict[str, Callable[[int, dict], CheckResult]] = {
    "chain-completeness": check_chain_completeness,
    "closure": check_closure,
    "extremal": check_extremal,
    "inclusion-witness": check_inclusion_witness,
    "interval": check_interval,
    "n2-bound": check_n2_bound,
    "path-similarity": check_path_similarity,
    "relation-oracle": check_relation_oracle,
    "sqrt2n-bound": check_sqrt2n_bound,
    "step-consistency": check_step_consistency,
    "successor-minimality": check_successor_minimality,
    "successor-uniqueness": check_successor_uniqueness,
    "technical-lemma": check_technical_lemma,
    "word-sweep": check_word_sweep,
}


@dataclass
class CheckRecord:
    check_name: str
    n: int
    passed: bool
    witness: object = None
    elapsed: float = 0.0

    def to_json(self) -> dict:
        return {
            "check_name": self.check_name,
            "n": self.n,
            "pass": self.passed,
            "witness": self.witness,
            "elapsed": round(self.elapsed, 6),
        }


def run_checks(n_max: int, checks: list[str] | None = None, caps: dict | None = None) -> list[CheckRecord]:
    """Run every named check for ``n = 0..n_max``; failures never abort the run.

    Records come back sorted by check name, then ``n``.
    """
    names = sorted(CHECKS) if not checks else sorted(set(checks))
    unknown = [c for c in names if c not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {', '.join(unknown)}")
    caps = caps or {}
    records = []
    for name in names:
        for n in range(n_max + 1):
            t0 = time.perf_counter()
            try:
                passed, witness = CHECKS[name](n, caps)
            except CapExceeded as exc:
                passed, witness = False, {"error": str(exc)}
            records.append(CheckRecord(name, n, bool(passed), witness, time.perf_counter() - t0))
    return records

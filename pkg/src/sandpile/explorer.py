"""Exhaustive exploration of the configurations reachable from ``(n)``.

The diagrams built here are the brute-force oracle every other module is
checked against, so they depend only on the local rules in
:mod:`sandpile.dynamics`.
"""

from __future__ import annotations

import enum
import json
import math
import os
from collections import deque
from dataclasses import dataclass, field

from .config import Configuration, config_to_json, format_config
from .dynamics import Rule, psspm_successors, sspm_successors

__all__ = [
    "ModelKind",
    "CapExceeded",
    "CycleDetected",
    "TransitionDiagram",
    "DiagramStats",
    "DEFAULT_N_CAPS",
    "DEFAULT_NODE_CAP",
    "bfs_reachable",
    "fixed_points_of",
    "strict_inclusion_witness",
    "to_dot",
    "to_json",
    "diagram_stats",
    "root_to_sink_paths",
]

# Edge label for a forced move: both labels lead to the same target.
BOTH = "LR"

DEFAULT_N_CAPS = {"psspm": 20, "sspm": 12}
DEFAULT_NODE_CAP = 5_000_000


class ModelKind(str, enum.Enum):
    SSPM = "sspm"
    PSSPM = "psspm"


class CapExceeded(RuntimeError):
    """The requested exploration would exceed a configured safety cap."""


class CycleDetected(RuntimeError):
    pass


@dataclass
class TransitionDiagram:
    """Reachable configurations and labelled transitions from ``root``.

    ``edges`` maps each source to ``[(target, label), ...]`` where ``label``
    is ``"L"``, ``"R"`` or ``"LR"`` (a forced parallel move).  In the
    sequential model the label names the rule that moved the grain.
    """

    model: ModelKind
    root: Configuration
    nodes: list[Configuration] = field(default_factory=list)
    edges: dict[Configuration, list[tuple[Configuration, str]]] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.root.grains

    def __contains__(self, c: Configuration) -> bool:
        return c in self.edges

    def __len__(self) -> int:
        return len(self.nodes)

    def successors(self, c: Configuration) -> list[Configuration]:
        return [t for t, _ in self.edges[c]]

    def edge_list(self, expand: bool = False) -> list[tuple[Configuration, Configuration, str]]:
        """Edges sorted by (source, target, label); ``expand`` splits ``LR`` into two."""
        out = []
        for src in self.nodes:
            for dst, label in self.edges[src]:
                if expand and label == BOTH:
                    out.append((src, dst, "L"))
                    out.append((src, dst, "R"))
                else:
                    out.append((src, dst, label))
        return out

    def edge_count(self) -> int:
        return sum(len(v) for v in self.edges.values())


def _node_cap() -> int:
    env = os.environ.get("SANDPILE_CAP")
    return int(env) if env else DEFAULT_NODE_CAP


def _expand(c: Configuration, model: ModelKind) -> list[tuple[Configuration, str]]:
    if model is ModelKind.PSSPM:
        succ = psspm_successors(c)
        if not succ:
            return []
        left, right = succ[Rule.LEFT], succ[Rule.RIGHT]
        if left == right:
            return [(left, BOTH)]
        return sorted([(left, "L"), (right, "R")], key=lambda e: e[0].sort_key())
    merged: dict[Configuration, set[str]] = {}
    for target, rule, _ in sspm_successors(c):
        merged.setdefault(target, set()).add(rule.value)
    return [(t, "".join(sorted(labels))) for t, labels in sorted(merged.items(), key=lambda kv: kv[0].sort_key())]


def bfs_reachable(
    n: int,
    model: ModelKind | str = ModelKind.PSSPM,
    *,
    n_cap: int | None = None,
    node_cap: int | None = None,
) -> TransitionDiagram:
    """Breadth-first closure of ``(n)`` under the model's global rule.

    Nodes come out in ascending lexicographic order so serialisations are
    reproducible.  ``n_cap`` defaults to 20 (parallel) / 12 (sequential);
    pass a larger value to override.
    """
    model = ModelKind(model)
    if n < 0:
        raise ValueError("grain count must be nonnegative")
    n_cap = DEFAULT_N_CAPS[model.value] if n_cap is None else n_cap
    node_cap = _node_cap() if node_cap is None else node_cap
    if n > n_cap:
        raise CapExceeded(
            f"n={n} exceeds the {model.value.upper()} cap of {n_cap}; raise n_cap to explore anyway"
        )
    root = Configuration.initial(n)
    edges: dict[Configuration, list[tuple[Configuration, str]]] = {}
    queue = deque([root])
    seen = {root}
    while queue:
        c = queue.popleft()
        out = _expand(c, model)
        edges[c] = out
        for t, _ in out:
            if t not in seen:
                if len(seen) >= node_cap:
                    raise CapExceeded(f"{model.value.upper()}({n}) exceeds the node cap of {node_cap}")
                seen.add(t)
                queue.append(t)
    nodes = sorted(edges, key=Configuration.sort_key)
    return TransitionDiagram(model, root, nodes, edges)


def fixed_points_of(d: TransitionDiagram) -> list[Configuration]:
    """Sink nodes in ascending lexicographic order."""
    return [c for c in d.nodes if not d.edges[c]]


def strict_inclusion_witness(n: int, **caps) -> Configuration | None:
    """A configuration reachable sequentially but not in parallel.

    Fixed points are preferred; ties go to the lexicographically smallest.
    """
    seq = bfs_reachable(n, ModelKind.SSPM, **caps)
    par = bfs_reachable(n, ModelKind.PSSPM)
    missing = [c for c in seq.nodes if c not in par]
    if not missing:
        return None
    fixed = [c for c in missing if not seq.edges[c]]
    return (fixed or missing)[0]


def _dot_id(c: Configuration) -> str:
    return json.dumps(format_config(c))


def to_dot(d: TransitionDiagram, name: str | None = None) -> str:
    """Graphviz rendering; forced moves become a single unlabelled edge."""
    name = name or f"{d.model.value}_{d.n}"
    lines = [f"digraph {name} {{", "  rankdir=TB;", "  node [shape=box];"]
    fixed = set(fixed_points_of(d))
    for c in d.nodes:
        attrs = ["peripheries=2"] if c in fixed else []
        if c == d.root:
            attrs.append("style=bold")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_dot_id(c)}{suffix};")
    for src, dst, label in d.edge_list():
        if label == BOTH:
            lines.append(f"  {_dot_id(src)} -> {_dot_id(dst)};")
        else:
            lines.append(f"  {_dot_id(src)} -> {_dot_id(dst)} [label={label}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(d: TransitionDiagram) -> dict:
    """Diagram dump with the multigraph convention: forced moves appear under both labels."""
    index = {c: k for k, c in enumerate(d.nodes)}
    return {
        "model": d.model.value,
        "n": d.n,
        "root": index[d.root],
        "nodes": [config_to_json(c) for c in d.nodes],
        "edges": [{"src": index[s], "dst": index[t], "label": lab} for s, t, lab in d.edge_list(expand=True)],
    }


@dataclass(frozen=True)
class DiagramStats:
    node_count: int
    edge_count: int
    fixed_point_count: int
    max_path_length: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _topological_order(d: TransitionDiagram) -> list[Configuration]:
    indeg = {c: 0 for c in d.nodes}
    for c in d.nodes:
        for t in d.successors(c):
            indeg[t] += 1
    ready = deque(c for c in d.nodes if indeg[c] == 0)
    order = []
    while ready:
        c = ready.popleft()
        order.append(c)
        for t in d.successors(c):
            indeg[t] -= 1
            if indeg[t] == 0:
                ready.append(t)
    if len(order) != len(d.nodes):
        raise CycleDetected(f"{len(d.nodes) - len(order)} nodes lie on or behind a cycle")
    return order


def diagram_stats(d: TransitionDiagram) -> DiagramStats:
    """Counts plus the longest root-to-sink path (in steps).

    Edge count follows the multigraph convention (forced moves count twice
    in the parallel model).
    """
    order = _topological_order(d)
    depth = {c: -math.inf for c in d.nodes}
    depth[d.root] = 0
    for c in order:
        if depth[c] == -math.inf:
            continue
        for t in d.successors(c):
            depth[t] = max(depth[t], depth[c] + 1)
    longest = max(depth[c] for c in fixed_points_of(d))
    return DiagramStats(
        node_count=len(d.nodes),
        edge_count=len(d.edge_list(expand=True)),
        fixed_point_count=len(fixed_points_of(d)),
        max_path_length=int(longest),
    )


def root_to_sink_paths(d: TransitionDiagram, limit: int | None = None):
    """Yield every root-to-sink path as a list of configurations.

    Only practical for small ``n``; ``limit`` stops after that many paths.
    """
    count = 0
    stack = [(d.root, [d.root])]
    while stack:
        c, path = stack.pop()
        succ = d.successors(c)
        if not succ:
            yield path
            count += 1
            if limit is not None and count >= limit:
                return
            continue
        for t in reversed(succ):
            stack.append((t, path + [t]))

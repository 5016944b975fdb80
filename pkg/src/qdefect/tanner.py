"""Tanner graph of a generator matrix and BFS balls on it.

Nodes are ``("u", i)`` for row (check) ``i`` and ``("v", j)`` for column
(value node) ``j``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .f2core import BitMatrix, rank

Node = tuple[str, int]


@dataclass(frozen=True, eq=False)
class TannerGraph:
    n_checks: int
    n_values: int
    check_adj: tuple[tuple[int, ...], ...]  # check -> value nodes
    value_adj: tuple[tuple[int, ...], ...]  # value -> check nodes

    def neighbors(self, node: Node) -> tuple[Node, ...]:
        kind, i = node
        if kind == "u":
            return tuple(("v", j) for j in self.check_adj[i])
        return tuple(("u", j) for j in self.value_adj[i])

    def degree(self, node: Node) -> int:
        kind, i = node
        return len(self.check_adj[i] if kind == "u" else self.value_adj[i])

    def __contains__(self, node: object) -> bool:
        if not (isinstance(node, tuple) and len(node) == 2):
            return False
        kind, i = node
        if kind == "u":
            return 0 <= i < self.n_checks
        if kind == "v":
            return 0 <= i < self.n_values
        return False

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, vs in enumerate(self.check_adj) for v in vs]

    def distances(self, source: Node, limit: int | None = None) -> dict[Node, int]:
        """BFS distances from ``source``, optionally truncated at ``limit``."""
        if source not in self:
            raise KeyError(f"unknown node {source!r}")
        dist = {source: 0}
        frontier = deque([source])
        while frontier:
            node = frontier.popleft()
            d = dist[node]
            if limit is not None and d >= limit:
                continue
            for nb in self.neighbors(node):
                if nb not in dist:
                    dist[nb] = d + 1
                    frontier.append(nb)
        return dist


def build_tanner(Q: BitMatrix) -> TannerGraph:
    supports = Q.supports()
    value_adj: list[list[int]] = [[] for _ in range(Q.n_cols)]
    for u, s in enumerate(supports):
        for v in s:
            value_adj[v].append(u)
    return TannerGraph(Q.n_rows, Q.n_cols, tuple(supports), tuple(tuple(a) for a in value_adj))


@dataclass(frozen=True)
class Ball:
    center: Node
    radius: int
    dist: dict[Node, int]

    @property
    def nodes(self) -> frozenset[Node]:
        return frozenset(self.dist)

    def check_nodes(self) -> tuple[int, ...]:
        return tuple(sorted(i for kind, i in self.dist if kind == "u"))

    def value_nodes(self) -> tuple[int, ...]:
        return tuple(sorted(i for kind, i in self.dist if kind == "v"))

    def __len__(self) -> int:
        return len(self.dist)

    def __contains__(self, node: object) -> bool:
        return node in self.dist


def ball(g: TannerGraph, u0: Node | int, R: int) -> Ball:
    """All nodes within graph distance ``R`` of ``u0`` (an int means check node ``u0``)."""
    if isinstance(u0, int):
        u0 = ("u", u0)
    if R < 0:
        raise ValueError("radius must be nonnegative")
    return Ball(u0, R, g.distances(u0, limit=R))


def ball_qubits(Q: BitMatrix, u0: int, R1: int) -> tuple[int, ...]:
    """``A = Omega_{2 R1}(u0) & V`` for the Tanner graph of ``Q``."""
    return ball(build_tanner(Q), u0, 2 * R1).value_nodes()


def rows_independent(Q: BitMatrix, rows: Iterable[int]) -> bool:
    rows = list(rows)
    return rank(Q.select_rows(rows)) == len(rows)


def locally_independent_radius(g: TannerGraph, Q: BitMatrix, u0: int, R_max: int) -> int:
    """Largest ``R2 <= R_max`` with the rows inside ``Omega_{2 R2}(u0)`` independent.

    Returns ``-1`` if even ``u0`` alone is dependent (a zero row).
    """
    best = -1
    prev = None
    for R in range(R_max + 1):
        rows = ball(g, u0, 2 * R).check_nodes()
        if rows != prev and not rows_independent(Q, rows):
            break
        best = R
        prev = rows
    return best


def to_dot(g: TannerGraph, highlight: Ball | None = None, name: str = "tanner") -> str:
    """Graphviz DOT text; nodes inside ``highlight`` are filled."""
    marked = highlight.nodes if highlight is not None else frozenset()
    lines = [f"graph {name} {{"]
    for i in range(g.n_checks):
        style = ", style=filled, fillcolor=lightblue" if ("u", i) in marked else ""
        lines.append(f'  u{i} [shape=box, label="u{i}"{style}];')
    for j in range(g.n_values):
        style = ", style=filled, fillcolor=lightblue" if ("v", j) in marked else ""
        lines.append(f'  v{j} [shape=circle, label="{j}"{style}];')
    for u, v in g.edges():
        lines.append(f"  u{u} -- v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"

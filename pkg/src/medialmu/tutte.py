"""Tutte polynomial at (-1, -1) by deletion-contraction."""

from __future__ import annotations

from typing import Sequence

from .plane_graph import PlaneGraph

DEFAULT_MAX_EDGES = 16


class EdgeBudgetExceeded(ValueError):
    pass


class InconsistentTutte(ArithmeticError):
    pass


def _connected(n: int, edges: Sequence[tuple[int, int]], a: int, b: int) -> bool:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, w in edges:
        adj[u].append(w)
        adj[w].append(u)
    seen = {a}
    stack = [a]
    while stack:
        v = stack.pop()
        if v == b:
            return True
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def _contract(n: int, edges: Sequence[tuple[int, int]], u: int, w: int) -> tuple[int, list[tuple[int, int]]]:
    # merge w into u, then close the gap left by w
    def relabel(x: int) -> int:
        x = u if x == w else x
        return x - 1 if x > w else x

    return n - 1, [(relabel(a), relabel(b)) for a, b in edges]


def _eval(n: int, edges: list[tuple[int, int]]) -> int:
    if not edges:
        return 1
    (u, w), rest = edges[0], edges[1:]
    if u == w:
        return -_eval(n, rest)
    if not _connected(n, rest, u, w):
        return -_eval(*_contract(n, rest, u, w))
    return _eval(n, rest) + _eval(*_contract(n, rest, u, w))


def tutte_eval_minus1(
    g: PlaneGraph | tuple[int, Sequence[tuple[int, int]]],
    max_edges: int = DEFAULT_MAX_EDGES,
) -> int:
    """Exact T(-1, -1) of the abstract multigraph underlying ``g``.

    Accepts a plane graph or a ``(vertex_count, edges)`` pair; disconnected
    graphs multiply over components automatically.
    """
    n, edges = (g.vertex_count, g.edges()) if isinstance(g, PlaneGraph) else g
    edges = list(edges)
    if len(edges) > max_edges:
        raise EdgeBudgetExceeded(f"{len(edges)} edges exceed the budget of {max_edges}")
    return _eval(n, edges)


def mu_tutte(g: PlaneGraph, max_edges: int = DEFAULT_MAX_EDGES) -> int:
    """Sum over components of log2 |T(-1,-1)| + 1, with sign and power checks."""
    if g.edge_count > max_edges:
        raise EdgeBudgetExceeded(f"{g.edge_count} edges exceed the budget of {max_edges}")
    mu = 0
    for verts in g.components():
        index = {v: i for i, v in enumerate(verts)}
        edges = [
            (index[a], index[b]) for a, b in g.edges() if a in index
        ]
        t = tutte_eval_minus1((len(verts), edges), max_edges)
        size = abs(t)
        if size == 0 or size & (size - 1):
            raise InconsistentTutte(f"|T(-1,-1)| = {size} is not a power of two")
        part = size.bit_length()
        if t != (-1) ** len(edges) * (-1) ** (part - 1) * size:
            raise InconsistentTutte(f"sign of T(-1,-1) = {t} disagrees with mu = {part}")
        mu += part
    return mu

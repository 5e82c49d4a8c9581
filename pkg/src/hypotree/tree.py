"""Labeled trees: validation, coalescence, canonical codes and text I/O."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple


class TreeError(ValueError):
    """Base class for invalid tree input."""


class EdgeCountMismatch(TreeError):
    pass


class Disconnected(TreeError):
    pass


class DuplicateEdge(TreeError):
    pass


class SelfLoop(TreeError):
    pass


class IndexOutOfRange(TreeError):
    pass


class ParseError(TreeError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Tree:
    """Immutable tree on vertices 0..n-1.

    ``adjacency[v]`` is the sorted tuple of neighbours of ``v``. Build
    instances through :func:`new_tree` so the tree invariants are checked.
    """

    n: int
    adjacency: Tuple[Tuple[int, ...], ...]

    @property
    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def leaves(self) -> List[int]:
        return [v for v in range(self.n) if len(self.adjacency[v]) == 1]

    def __repr__(self) -> str:
        return f"Tree(n={self.n}, edges={self.edges})"


def new_tree(n: int, edges: Iterable[Sequence[int]]) -> Tree:
    if n < 1:
        raise TreeError("a tree needs at least one vertex")
    edges = [tuple(e) for e in edges]
    if len(edges) != n - 1:
        raise EdgeCountMismatch(f"expected {n - 1} edges, got {len(edges)}")
    adj: List[set] = [set() for _ in range(n)]
    for e in edges:
        if len(e) != 2:
            raise TreeError(f"edge {e!r} is not a vertex pair")
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge ({u}, {v}) outside [0, {n})")
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        if v in adj[u]:
            raise DuplicateEdge(f"edge ({u}, {v}) repeated")
        adj[u].add(v)
        adj[v].add(u)
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    if count != n:
        raise Disconnected(f"only {count} of {n} vertices reachable from 0")
    return Tree(n, tuple(tuple(sorted(a)) for a in adj))


def max_degree(t: Tree) -> int:
    return max((len(a) for a in t.adjacency), default=0)


def relabel(t: Tree, perm: Sequence[int]) -> Tree:
    """Return the tree with vertex ``v`` renamed ``perm[v]``."""
    return new_tree(t.n, [(perm[u], perm[v]) for u, v in t.edges])


def coalesce(g: Tree, u: int, h: Tree, v: int) -> Tree:
    """Identify vertex ``u`` of ``g`` with vertex ``v`` of ``h``.

    Labels of ``g`` are kept; ``h``'s vertex ``v`` becomes ``u`` and its other
    vertices are numbered ``g.n, g.n + 1, ...`` in increasing original order.
    """
    if not 0 <= u < g.n:
        raise IndexOutOfRange(f"u={u} outside [0, {g.n})")
    if not 0 <= v < h.n:
        raise IndexOutOfRange(f"v={v} outside [0, {h.n})")

    def image(w: int) -> int:
        if w == v:
            return u
        return g.n + (w if w < v else w - 1)

    edges = g.edges + [(image(a), image(b)) for a, b in h.edges]
    return new_tree(g.n + h.n - 1, edges)


# -- canonical form ---------------------------------------------------------


def centroids(t: Tree) -> List[int]:
    """One or two centroid vertices (max branch size <= n/2)."""
    n = t.n
    parent, order = _bfs_order(t, 0)
    size = [1] * n
    for w in reversed(order[1:]):
        size[parent[w]] += size[w]
    out = []
    for w in range(n):
        heaviest = n - size[w]
        for c in t.adjacency[w]:
            if c != parent[w]:
                heaviest = max(heaviest, size[c])
        if 2 * heaviest <= n:
            out.append(w)
    return out


def _bfs_order(t: Tree, root: int) -> Tuple[List[int], List[int]]:
    parent = [-1] * t.n
    order = [root]
    seen = [False] * t.n
    seen[root] = True
    q = deque([root])
    while q:
        u = q.popleft()
        for w in t.adjacency[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                order.append(w)
                q.append(w)
    return parent, order


def rooted_code(t: Tree, root: int) -> bytes:
    """AHU code of ``t`` rooted at ``root``: b'(' + sorted child codes + b')'."""
    parent, order = _bfs_order(t, root)
    code: List[bytes] = [b""] * t.n
    for w in reversed(order):
        kids = sorted(code[c] for c in t.adjacency[w] if c != parent[w])
        code[w] = b"(" + b"".join(kids) + b")"
    return code[root]


def canonical_code(t: Tree) -> bytes:
    """Isomorphism invariant: the smallest centroid-rooted AHU code."""
    return min(rooted_code(t, c) for c in centroids(t))


def is_isomorphic(a: Tree, b: Tree) -> bool:
    return a.n == b.n and canonical_code(a) == canonical_code(b)


# -- text formats -----------------------------------------------------------


def parse_edge_list(text: str) -> Tree:
    """Parse whitespace-separated vertex pairs, one edge per line.

    ``#`` starts a comment. An ``n=<count>`` line fixes the vertex count,
    which is otherwise ``1 + max index`` (and 1 for an empty edge list).
    """
    edges: List[Tuple[int, int]] = []
    declared = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n="):
            try:
                declared = int(line[2:])
            except ValueError:
                raise ParseError(f"bad vertex count {line!r}", lineno) from None
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two vertex indices, got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise ParseError(f"negative vertex in {line!r}", lineno)
        edges.append((u, v))
    inferred = 1 + max((max(e) for e in edges), default=0)
    n = declared if declared is not None else inferred
    return new_tree(n, edges)


def serialize_edge_list(t: Tree) -> str:
    """Edges as ``u v`` lines with u < v, lexicographically sorted."""
    if t.n == 1:
        return "n=1\n"
    return "".join(f"{u} {v}\n" for u, v in t.edges)


def to_dot(t: Tree, name: str = "T") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(t.n)]
    lines += [f"  {u} -- {v};" for u, v in t.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"

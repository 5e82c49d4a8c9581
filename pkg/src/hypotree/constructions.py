"""Tree families: stars, paths, complete d-ary trees, minimum-energy trees
T*(n, d) from the digital expansion, maximum-nullity trees and the small
sporadic hypoenergetic trees."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .tree import Tree, max_degree, new_tree


class NoExpansion(ValueError):
    pass


class AssemblyMismatch(RuntimeError):
    pass


class InfeasibleDegree(ValueError):
    pass


class UnknownName(KeyError):
    pass


def star(n: int) -> Tree:
    if n < 1:
        raise ValueError("n must be >= 1")
    return new_tree(n, [(0, v) for v in range(1, n)])


def path(n: int) -> Tree:
    if n < 1:
        raise ValueError("n must be >= 1")
    return new_tree(n, [(v, v + 1) for v in range(n - 1)])


def dary_size(d: int, h: int) -> int:
    """|C_h| = (d**h - 1) / (d - 1)."""
    return (d**h - 1) // (d - 1)


class _Builder:
    def __init__(self):
        self.edges: List[Tuple[int, int]] = []
        self.n = 0

    def vertex(self, parent: Optional[int] = None) -> int:
        v = self.n
        self.n += 1
        if parent is not None:
            self.edges.append((parent, v))
        return v

    def complete(self, d: int, h: int, parent: Optional[int]) -> Optional[int]:
        """Hang a copy of C_h below ``parent``; C_0 adds nothing."""
        if h <= 0:
            return None
        root = self.vertex(parent)
        frontier = [root]
        for _ in range(h - 1):
            frontier = [self.vertex(u) for u in frontier for _ in range(d)]
        return root

    def tree(self) -> Tree:
        return new_tree(self.n, self.edges)


def complete_dary(d: int, h: int) -> Optional[Tree]:
    """C_h: root with d branches C_{h-1}; C_1 is one vertex, C_0 is empty (None)."""
    if d < 2 or h < 0:
        raise ValueError("need d >= 2 and h >= 0")
    if h == 0:
        return None
    b = _Builder()
    b.complete(d, h, None)
    return b.tree()


# -- T*(n, d) ---------------------------------------------------------------

ALL_PREV = "all_C[l-1]"
ALL_SAME = "all_C[l]"
MIXED = "mixed"


@dataclass(frozen=True)
class TStarDigits:
    """Digits a_0..a_l with sum a_k d**k = (d - 1) n + 1, and their meaning.

    ``r[k]`` (k < l) counts the C_{k+2} branches on spine vertex k, the rest
    being C_k. The top vertex carries d branches described by ``terminal``:
    all C_{l-1}, all C_l, or ``q_l`` copies of C_{l+1}, ``r_l`` of C_{l+2}
    and the remainder C_l.
    """

    n: int
    d: int
    a: Tuple[int, ...]
    r: Tuple[int, ...]
    terminal: str
    q_l: int = 0
    r_l: int = 0

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.a) - 1


def inner_digit(d: int, r: int) -> int:
    return (d - 1) * (1 + (d + 1) * r)


def decode_terminal(d: int, a: int) -> Optional[Tuple[str, int, int]]:
    """Interpret a top digit, or None if it is not admissible."""
    if a == 1:
        return ALL_PREV, 0, 0
    if a == d:
        return ALL_SAME, 0, 0
    if a <= d or (a - d) % (d - 1):
        return None
    k = (a - d) // (d - 1)  # = q + (d + 1) r
    r, q = divmod(k, d + 1)
    if q < 2 or q + r > d:
        return None
    return MIXED, q, r


def terminal_digits(d: int) -> List[int]:
    vals = {1, d}
    for q in range(2, d + 1):
        for r in range(0, d - q + 1):
            vals.add(d + (d - 1) * q + (d * d - 1) * r)
    return sorted(vals)


def tstar_digits(n: int, d: int) -> TStarDigits:
    """Unique digital expansion of (d-1)n+1.

    Non-terminal digits cover every residue class mod d exactly once, so each
    a_k (k < l) is forced by the running remainder; only the cut-off level l
    is searched.
    """
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    total = (d - 1) * n + 1
    by_residue = {inner_digit(d, r) % d: r for r in range(d)}
    found = []
    level = 0
    while d**level <= total:
        rem = total
        rs = []
        ok = True
        for _ in range(level):
            r = by_residue[rem % d]
            rem -= inner_digit(d, r)
            if rem <= 0:
                ok = False
                break
            rem //= d
            rs.append(r)
        if ok:
            term = decode_terminal(d, rem)
            if term is not None and not (level == 0 and term[0] == ALL_PREV):
                digits = tuple(inner_digit(d, r) for r in rs) + (rem,)
                found.append(TStarDigits(n, d, digits, tuple(rs), *term))
        level += 1
    if len(found) != 1:
        raise NoExpansion(f"(n={n}, d={d}) has {len(found)} expansions: {found}")
    return found[0]


def tstar_from_digits(dig: TStarDigits) -> Tree:
    d, l = dig.d, dig.l
    b = _Builder()
    spine = [b.vertex() for _ in range(l + 1)]
    b.edges += [(spine[k], spine[k + 1]) for k in range(l)]
    for k in range(l):
        for _ in range(dig.r[k]):
            b.complete(d, k + 2, spine[k])
        for _ in range(d - 1 - dig.r[k]):
            b.complete(d, k, spine[k])
    top = spine[l]
    if dig.terminal == ALL_PREV:
        heights = [l - 1] * d
    elif dig.terminal == ALL_SAME:
        heights = [l] * d
    else:
        heights = [l + 2] * dig.r_l + [l + 1] * dig.q_l
        heights += [l] * (d - dig.q_l - dig.r_l)
    for h in heights:
        b.complete(d, h, top)
    t = b.tree()
    if t.n != dig.n:
        raise AssemblyMismatch(f"assembled {t.n} vertices, expected {dig.n}")
    return t


def tstar(n: int, d: int) -> Tree:
    """T*(n, d): the minimum-energy tree of order n with max degree <= d + 1."""
    t = tstar_from_digits(tstar_digits(n, d))
    if max_degree(t) > d + 1:
        raise AssemblyMismatch(f"max degree {max_degree(t)} exceeds {d + 1}")
    if d == 3 and n >= 5 and max_degree(t) != 4:
        raise AssemblyMismatch(f"T*({n},3) has max degree {max_degree(t)}, expected 4")
    return t


# -- maximum nullity --------------------------------------------------------


def feasible(n: int, delta: int) -> bool:
    """Is there a tree of order n with maximum degree exactly delta?"""
    if n < 1 or delta < 0:
        return False
    if delta == 0:
        return n == 1
    if delta == 1:
        return n == 2
    return n >= delta + 1


def max_nullity(n: int, delta: int) -> int:
    """n - 2 ceil((n - 1) / delta), the largest nullity for (n, delta)."""
    if delta == 0:
        return 1 if n == 1 else 0
    return n - 2 * ceil_div(n - 1, delta)


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def ceil_by_residue(n: int, delta: int) -> int:
    """ceil((n-1)/delta) through the residue case split of n mod delta.

    k = n mod delta: k = 0 gives n/delta, k = 1 gives (n-1)/delta,
    otherwise (n-k)/delta + 1.
    """
    k = n % delta
    if k == 0:
        return n // delta
    if k == 1:
        return (n - 1) // delta
    return (n - k) // delta + 1


def max_nullity_tree(n: int, delta: int) -> Tree:
    """Chain of linked stars with nullity n - 2 ceil((n-1)/delta).

    Centres c_1..c_t with t = ceil((n-1)/delta). c_1 holds up to delta
    leaves, later centres up to delta-1; one leaf of star i is joined to
    c_{i+1}. The centres form a vertex cover and match into distinct
    neighbours, so the matching number is exactly t.
    """
    if not feasible(n, delta):
        raise InfeasibleDegree(f"no tree of order {n} has maximum degree {delta}")
    if n <= 2:
        return path(n)
    t = ceil_div(n - 1, delta)
    remaining = n - t
    b = _Builder()
    prev_link: Optional[int] = None
    for i in range(t):
        cap = delta if i == 0 else delta - 1
        need_after = max(t - 1 - (i + 1), 0)  # link leaves of stars i+1..t-2
        count = min(cap, remaining - need_after)
        need_here = (2 if t > 1 else 1) if i == 0 else (1 if i < t - 1 else 0)
        if count < need_here:
            raise AssemblyMismatch(f"star {i} cannot receive {need_here} leaves")
        centre = b.vertex(prev_link)
        leaves = [b.vertex(centre) for _ in range(count)]
        remaining -= count
        prev_link = leaves[-1] if leaves else None
    tree = b.tree()
    if tree.n != n or remaining != 0:
        raise AssemblyMismatch(f"built {tree.n} vertices, expected {n}")
    if max_degree(tree) != delta:
        raise AssemblyMismatch(f"max degree {max_degree(tree)} != {delta}")
    return tree


# -- sporadic trees ---------------------------------------------------------


def tree_w() -> Tree:
    """u - c - v with two pendant leaves on each of u and v."""
    return new_tree(7, [(0, 1), (1, 2), (0, 3), (0, 4), (2, 5), (2, 6)])


FIGURE1 = {
    "S1": lambda: star(1),
    "S3": lambda: star(3),
    "S4": lambda: star(4),
    "W": tree_w,
}


def figure1(name: str) -> Tree:
    try:
        return FIGURE1[name]()
    except KeyError:
        raise UnknownName(name) from None


def t6() -> Tree:
    """The unique tree of order 6 with maximum degree 4."""
    return tstar(6, 3)


def t11() -> Tree:
    """Order 11, max degree 5, nullity 7."""
    return max_nullity_tree(11, 5)

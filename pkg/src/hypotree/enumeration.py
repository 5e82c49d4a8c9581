"""Isomorph-free generation of free trees and exhaustive energy searches.

Free trees are produced with the Wright-Richmond-Odlyzko-McKay successor
on level sequences of centre-rooted canonical trees: each step is
amortised O(1) and every isomorphism class appears exactly once. The
degree cap is checked on the level sequence, before a :class:`Tree` is
materialised.

Searches over a stream screen energies with LAPACK in batches and only
run the certified exact backend on trees whose float energy lands near
the decision threshold or the running minimum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import spectral
from .spectral import EnergyResult
from .tree import Tree, canonical_code, max_degree, new_tree

MAX_N = 20

# float screening slack; LAPACK energies of n <= 30 trees are good to ~1e-12
SCREEN_MARGIN = 1e-7


class BudgetExceeded(RuntimeError):
    pass


# -- level sequences --------------------------------------------------------


def _next_rooted(seq: List[int], p: Optional[int] = None) -> Optional[List[int]]:
    """Successor of a canonical rooted level sequence (levels start at 0)."""
    if p is None:
        p = len(seq) - 1
        while seq[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    out = list(seq)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split(seq: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Split at the second child of the root: (first subtree, remainder)."""
    m = len(seq)
    seen_one = False
    for i, x in enumerate(seq):
        if x == 1:
            if seen_one:
                m = i
                break
            seen_one = True
    left = [x - 1 for x in seq[1:m]]
    rest = [0] + list(seq[m:])
    return left, rest


def _next_free(seq: List[int]) -> Optional[List[int]]:
    """Advance to the next sequence that is a centre-rooted free-tree code."""
    left, rest = _split(seq)
    lh, rh = max(left), max(rest)
    ok = rh >= lh
    if ok and rh == lh:
        if len(left) > len(rest) or (len(left) == len(rest) and left > rest):
            ok = False
    if ok:
        return seq
    p = len(left)
    nxt = _next_rooted(seq, p)
    if nxt is None:
        return None
    if seq[p] > 2:
        new_left, _ = _split(nxt)
        tail = list(range(1, max(new_left) + 2))
        nxt[-len(tail):] = tail
    return nxt


def level_sequences(n: int) -> Iterator[List[int]]:
    """One level sequence per free tree of order n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n <= 2:
        yield list(range(n))
        return
    seq: Optional[List[int]] = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while seq is not None:
        seq = _next_free(seq)
        if seq is None:
            return
        yield seq
        seq = _next_rooted(seq)


def parents_from_levels(seq: Sequence[int]) -> List[int]:
    parent = [-1] * len(seq)
    last_at = {}
    for i, lev in enumerate(seq):
        if lev > 0:
            parent[i] = last_at[lev - 1]
        last_at[lev] = i
    return parent


def _degrees(parent: Sequence[int]) -> List[int]:
    deg = [0] * len(parent)
    for v, u in enumerate(parent):
        if u >= 0:
            deg[u] += 1
            deg[v] += 1
    return deg


def _tree_from_parents(parent: Sequence[int]) -> Tree:
    return new_tree(len(parent), [(u, v) for v, u in enumerate(parent) if u >= 0])


@dataclass
class TreeStream:
    """Iterable over free trees of order n, optionally with max degree <= cap."""

    n: int
    delta_cap: Optional[int] = None

    def parent_arrays(self) -> Iterator[List[int]]:
        for seq in level_sequences(self.n):
            parent = parents_from_levels(seq)
            if self.delta_cap is not None and max(_degrees(parent)) > self.delta_cap:
                continue
            yield parent

    def __iter__(self) -> Iterator[Tree]:
        return (_tree_from_parents(p) for p in self.parent_arrays())


def free_trees(n: int, delta_cap: Optional[int] = None) -> TreeStream:
    return TreeStream(n, delta_cap)


# -- Pruefer oracle ---------------------------------------------------------


def prufer_decode(seq: Sequence[int], n: int) -> Tree:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [w for w in range(n) if degree[w] == 1]
    edges.append((u, v))
    return new_tree(n, edges)


def _multiset_perms(counts: List[int]) -> Iterator[List[int]]:
    total = sum(counts)
    out = [0] * total

    def rec(pos: int) -> Iterator[List[int]]:
        if pos == total:
            yield list(out)
            return
        for v, c in enumerate(counts):
            if c:
                counts[v] -= 1
                out[pos] = v
                yield from rec(pos + 1)
                counts[v] += 1

    return rec(0)


def _nonincreasing_counts(total: int, slots: int, cap: int) -> Iterator[List[int]]:
    if slots == 0:
        if total == 0:
            yield []
        return
    for c in range(min(total, cap), -1, -1):
        for tail in _nonincreasing_counts(total - c, slots - 1, c):
            yield [c] + tail


def prufer_free_trees(n: int) -> Dict[bytes, Tree]:
    """Free trees of order n from Pruefer sequences, deduplicated by code.

    Vertex v appears deg(v) - 1 times in a Pruefer sequence. Relabelling by
    decreasing degree shows every class has a labelled copy whose degrees
    are non-increasing in the label, so only those sequences are decoded.
    """
    if n <= 2:
        t = new_tree(n, [(0, 1)] if n == 2 else [])
        return {canonical_code(t): t}
    out: Dict[bytes, Tree] = {}
    for counts in _nonincreasing_counts(n - 2, n, n - 2):
        for seq in _multiset_perms(counts):
            t = prufer_decode(seq, n)
            out.setdefault(canonical_code(t), t)
    return out


def prufer_free_trees_full(n: int) -> Dict[bytes, Tree]:
    """Same as :func:`prufer_free_trees` over all n**(n-2) sequences."""
    if n <= 2:
        return prufer_free_trees(n)
    out: Dict[bytes, Tree] = {}
    for seq in itertools.product(range(n), repeat=n - 2):
        t = prufer_decode(seq, n)
        out.setdefault(canonical_code(t), t)
    return out


# -- exhaustive searches ----------------------------------------------------


def _guard(n: int, override: bool) -> None:
    if n > MAX_N and not override:
        raise BudgetExceeded(f"n={n} exceeds the enumeration guard n <= {MAX_N}")


def _batch_energies(parents: List[List[int]], n: int, chunk: int = 20000) -> np.ndarray:
    out = []
    for s in range(0, len(parents), chunk):
        block = np.asarray(parents[s : s + chunk])
        a = np.zeros((len(block), n, n))
        rows = np.repeat(np.arange(len(block)), n - 1)
        child = np.tile(np.arange(1, n), len(block))
        par = block[:, 1:].reshape(-1)
        a[rows, par, child] = 1.0
        a[rows, child, par] = 1.0
        out.append(np.abs(np.linalg.eigvalsh(a)).sum(axis=1))
    return np.concatenate(out) if out else np.zeros(0)


@dataclass
class ScreenedSet:
    """Free trees of one order with their float energies and max degrees."""

    n: int
    parents: List[List[int]]
    energies: np.ndarray
    max_degrees: np.ndarray

    def tree(self, i: int) -> Tree:
        return _tree_from_parents(self.parents[i])

    def select(self, delta: Optional[int] = None, cap: Optional[int] = None) -> np.ndarray:
        mask = np.ones(len(self.parents), dtype=bool)
        if delta is not None:
            mask &= self.max_degrees == delta
        if cap is not None:
            mask &= self.max_degrees <= cap
        return np.flatnonzero(mask)


@lru_cache(maxsize=8)
def screened(n: int, delta_cap: Optional[int] = None, override: bool = False) -> ScreenedSet:
    _guard(n, override)
    parents = list(TreeStream(n, delta_cap).parent_arrays())
    if n == 1:
        energies = np.zeros(1)
    else:
        energies = _batch_energies(parents, n)
    degs = np.array([max(_degrees(p)) for p in parents])
    return ScreenedSet(n, parents, energies, degs)


@dataclass
class MinEnergy:
    tree: Tree
    result: EnergyResult
    unique: bool
    runner_up: Optional[float]


def min_energy_tree(
    n: int,
    delta_cap: Optional[int] = None,
    tol: Optional[float] = None,
    delta_exact: Optional[int] = None,
    override: bool = False,
) -> MinEnergy:
    """Energy minimiser over trees of order n (max degree <= cap or == exact).

    Uniqueness means every other class sits more than twice the combined
    error bound above the minimum.
    """
    data = screened(n, delta_cap, override)
    idx = data.select(delta=delta_exact, cap=delta_cap)
    if len(idx) == 0:
        raise ValueError(f"no trees of order {n} with the requested degree")
    e = data.energies[idx]
    best = float(e.min())
    near = idx[e <= best + SCREEN_MARGIN]
    exact = [(spectral.energy(data.tree(i), tol), i) for i in near]
    exact.sort(key=lambda ri: ri[0].energy)
    res, i = exact[0]
    unique = True
    runner = None
    for other, _ in exact[1:]:
        if other.energy - res.energy <= 2 * (other.error_bound + res.error_bound):
            unique = False
    rest = np.delete(e, np.flatnonzero(idx == i)[0]) if len(e) > 1 else np.zeros(0)
    if len(rest):
        runner = float(rest.min())
    return MinEnergy(data.tree(i), res, unique, runner)


def exhaustive_verdict(
    n: int,
    delta: int,
    strong: bool,
    tol: Optional[float] = None,
    override: bool = False,
) -> bool:
    """Does some tree of order n with max degree exactly delta certify?"""
    from .classify import certify

    _guard(n, override)
    data = screened(n, None, override)
    idx = data.select(delta=delta)
    threshold = n - 1 if strong else n
    for i in idx[data.energies[idx] < threshold + SCREEN_MARGIN]:
        if certify(data.tree(i), strong, tol):
            return True
    return False


def trees_with_degree(n: int, delta: int, override: bool = False) -> List[Tree]:
    data = screened(n, None, override)
    return [data.tree(i) for i in data.select(delta=delta)]


def filtered_post_hoc(n: int, cap: int) -> List[Tree]:
    return [t for t in free_trees(n) if max_degree(t) <= cap]

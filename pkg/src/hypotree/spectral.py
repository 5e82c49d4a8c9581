"""Characteristic polynomials, nullity, eigenvalues and energy of trees.

Two independent eigenvalue routes are provided:

* ``exact_roots``: the characteristic polynomial of a tree is its matching
  polynomial, ``x**n0 * g(x**2)``. The positive roots of ``g`` are isolated
  with Sturm chains in exact integer arithmetic, so the energy comes with a
  rigorous error bound.
* ``dense``: parallel cyclic Jacobi rotations on the adjacency matrix.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import polyroots as pr
from .tree import Tree, _bfs_order

EXACT = "exact_roots"
DENSE = "dense_eigensolver"
METHODS = (EXACT, DENSE)

DEFAULT_TOL = 1e-9

_EPS = np.finfo(float).eps


def default_tol() -> float:
    """Default tolerance, overridable through ``HYPOTREE_TOL``."""
    raw = os.environ.get("HYPOTREE_TOL")
    return float(raw) if raw else DEFAULT_TOL


class NonConvergence(RuntimeError):
    pass


class InternalInconsistency(RuntimeError):
    pass


@dataclass(frozen=True)
class CharPoly:
    """Integer coefficients of det(xI - A), lowest degree first."""

    coeffs: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def matching_counts(self) -> List[int]:
        """m_k = number of k-matchings, read off the alternating coefficients."""
        n = self.degree
        return [(-1) ** k * self.coeffs[n - 2 * k] for k in range(n // 2 + 1)]

    def trailing_zeros(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return len(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


@dataclass
class EnergyResult:
    n: int
    energy: float
    error_bound: float
    eigenvalues: List[float]
    nullity: int
    method: str
    char_poly: Optional[CharPoly] = field(default=None, repr=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("char_poly")
        d["char_poly_coeffs"] = (
            [str(c) for c in self.char_poly.coeffs] if self.char_poly else []
        )
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


# -- exact polynomial side --------------------------------------------------


def char_poly(t: Tree) -> CharPoly:
    """Characteristic polynomial via the rooted two-polynomial recursion.

    For a vertex v with children c_j, p_v is the characteristic polynomial of
    the subtree at v and q_v that of the subtree with v deleted:
    ``p_v = x*prod(p_c) - sum_j q_cj * prod_{i != j} p_ci``, ``q_v = prod(p_c)``.
    """
    parent, order = _bfs_order(t, 0)
    p: List[Optional[pr.Poly]] = [None] * t.n
    q: List[Optional[pr.Poly]] = [None] * t.n
    for v in reversed(order):
        kids = [c for c in t.adjacency[v] if c != parent[v]]
        k = len(kids)
        prefix = [[1]]
        for c in kids:
            prefix.append(pr.mul(prefix[-1], p[c]))
        suffix = [[1]] * (k + 1)
        for j in range(k - 1, -1, -1):
            suffix[j] = pr.mul(suffix[j + 1], p[kids[j]])
        prod_all = prefix[k]
        pv = [0] + prod_all
        for j, c in enumerate(kids):
            pv = pr.sub(pv, pr.mul(q[c], pr.mul(prefix[j], suffix[j + 1])))
        p[v] = pv
        q[v] = prod_all
        for c in kids:
            p[c] = q[c] = None
    return CharPoly(tuple(p[0]))


def matching_number(t: Tree) -> int:
    """Maximum matching size: greedily match leaves to parents bottom-up."""
    parent, order = _bfs_order(t, 0)
    matched = [False] * t.n
    size = 0
    for v in reversed(order):
        u = parent[v]
        if u >= 0 and not matched[v] and not matched[u]:
            matched[u] = matched[v] = True
            size += 1
    return size


def nullity(t: Tree, cp: Optional[CharPoly] = None) -> int:
    by_matching = t.n - 2 * matching_number(t)
    cp = cp if cp is not None else char_poly(t)
    by_poly = cp.trailing_zeros()
    if by_matching != by_poly:
        raise InternalInconsistency(
            f"nullity mismatch: n-2*mu={by_matching}, char poly gives {by_poly}"
        )
    return by_matching


def reduced_poly(cp: CharPoly, n0: int) -> pr.Poly:
    """g(y) with det(xI - A) = x**n0 * g(x**2)."""
    return [cp.coeffs[j] for j in range(n0, len(cp.coeffs), 2)]


def energy_upper_bound(t: Tree) -> float:
    """sqrt(2 m (n - n0)) with m = n - 1 edges."""
    return math.sqrt(2 * (t.n - 1) * (t.n - nullity(t)))


# -- eigenvalue backends ----------------------------------------------------


def _exact_spectrum(t: Tree, tol: float):
    cp = char_poly(t)
    n0 = nullity(t, cp)
    g = reduced_poly(cp, n0)
    width = Fraction(tol) ** 2
    # (value estimate, |error| bound, multiplicity) of each positive eigenvalue
    pos: List[Tuple[float, float, int]] = []
    for factor, mult in pr.squarefree_decomposition(g):
        for lo, hi in pr.isolate_positive_roots(factor, width):
            slo, shi = math.sqrt(lo), math.sqrt(hi)
            pos.append(((slo + shi) / 2, shi - slo, mult))
    pos.sort()
    return cp, n0, pos


def _jacobi_eigenvalues(a: np.ndarray, tol: float, max_sweeps: int = 60):
    """Parallel cyclic Jacobi; returns (eigenvalues, off-norm, sweeps)."""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if n == 1:
        return a.diagonal().copy(), 0.0, 0
    players = list(range(n)) + ([-1] if n % 2 else [])
    m = len(players)

    off_mask = ~np.eye(n, dtype=bool)

    def off_norm(x):
        return float(np.linalg.norm(x[off_mask]))

    for sweep in range(max_sweeps):
        off = off_norm(a)
        if off < tol:
            return np.sort(np.diag(a)), off, sweep
        # round-robin schedule: m - 1 rounds of m / 2 disjoint pairs
        ring = players[:]
        for _ in range(m - 1):
            pairs = [(ring[i], ring[m - 1 - i]) for i in range(m // 2)]
            ps = np.array([min(x, y) for x, y in pairs if x >= 0 and y >= 0], dtype=int)
            qs = np.array([max(x, y) for x, y in pairs if x >= 0 and y >= 0], dtype=int)
            ring = [ring[0], ring[-1]] + ring[1:-1]
            apq = a[ps, qs]
            active = np.abs(apq) > 0
            if not active.any():
                continue
            ps, qs, apq = ps[active], qs[active], apq[active]
            theta = (a[qs, qs] - a[ps, ps]) / (2.0 * apq)
            with np.errstate(over="ignore"):
                # theta**2 overflows only when a_pq is negligible; t -> 0 then
                tt = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            tt[theta == 0] = 1.0
            c = 1.0 / np.sqrt(tt * tt + 1.0)
            s = tt * c
            rot = np.eye(n)
            rot[ps, ps] = c
            rot[qs, qs] = c
            rot[ps, qs] = s
            rot[qs, ps] = -s
            a = rot.T @ a @ rot
            a = (a + a.T) / 2
    off = off_norm(a)
    if off < tol:
        return np.sort(np.diag(a)), off, max_sweeps
    raise NonConvergence(f"off-diagonal norm {off:.3e} still above tol={tol:.1e}")


def adjacency_matrix(t: Tree) -> np.ndarray:
    a = np.zeros((t.n, t.n))
    for u, v in t.edges:
        a[u, v] = a[v, u] = 1.0
    return a


def eigenvalues(t: Tree, tol: float = DEFAULT_TOL, method: str = EXACT) -> List[float]:
    return energy(t, tol, method).eigenvalues


def energy(t: Tree, tol: Optional[float] = None, method: str = EXACT) -> EnergyResult:
    """Energy sum(|lambda_i|) with a guaranteed bound on |reported - true|."""
    tol = default_tol() if tol is None else tol
    if not tol > 0:
        raise ValueError("tol must be positive")
    if method == EXACT:
        cp, n0, pos = _exact_spectrum(t, tol)
        eig: List[float] = []
        for val, _, mult in pos:
            eig += [val] * mult
        eig = sorted([-x for x in eig] + [0.0] * n0 + eig)
        total = 2 * math.fsum(val * mult for val, _, mult in pos)
        # interval widths plus float rounding of sqrt / summation
        err = 2 * math.fsum(w * mult for _, w, mult in pos)
        err += 8 * t.n * _EPS * max(total, 1.0)
        return EnergyResult(t.n, total, err, eig, n0, EXACT, cp)
    if method in (DENSE, "dense"):
        a = adjacency_matrix(t)
        vals, off, sweeps = _jacobi_eigenvalues(a, tol)
        total = math.fsum(abs(float(x)) for x in vals)
        # Hoffman-Wielandt: sum|d_i - lambda_i| <= sqrt(n) * ||off||_F,
        # plus backward error of the accumulated rotations
        norm_a = math.sqrt(2 * (t.n - 1))
        err = math.sqrt(t.n) * off + 16 * (sweeps + 1) * t.n * _EPS * max(norm_a, 1.0)
        cp = char_poly(t)
        return EnergyResult(
            t.n, total, err, [float(x) for x in vals], nullity(t, cp), DENSE, cp
        )
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def batch_energies(trees: Sequence[Tree]) -> np.ndarray:
    """Float64 energies via LAPACK for screening large tree sets (uncertified)."""
    if not trees:
        return np.zeros(0)
    n = trees[0].n
    a = np.zeros((len(trees), n, n))
    for i, t in enumerate(trees):
        for u, v in t.edges:
            a[i, u, v] = a[i, v, u] = 1.0
    return np.abs(np.linalg.eigvalsh(a)).sum(axis=1)

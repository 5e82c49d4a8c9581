"""Existence of (strongly) hypoenergetic trees for given order and max degree.

Verdicts come from the closed-form classification; numerics are only used
to certify witness trees, never to flip a verdict.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, List, Optional, Tuple

from . import constructions as con
from . import spectral
from .spectral import EnergyResult
from .tree import Tree, coalesce, max_degree, serialize_edge_list

STRONG_DELTA4_SMALL = frozenset({9, 13, 17, 20, 21})

# energies of T*(n, 3) quoted for the orders where Delta = 4 fails
TSTAR3_NEGATIVE_ROWS = {
    10: 9.61686, 11: 10.36308, 12: 11.13490, 14: 13.39786, 15: 14.26512,
    16: 15.01712, 18: 17.24606, 19: 18.13157, 22: 21.06862,
}


class NoWitnessFound(RuntimeError):
    pass


@dataclass
class Verdict:
    n: int
    delta: int
    feasible: bool
    hypo_exists: bool
    strong_exists: bool
    clause: str
    strong: bool = False
    witness: Optional[Tree] = None
    certificate: Optional[EnergyResult] = None

    @property
    def exists(self) -> bool:
        return self.strong_exists if self.strong else self.hypo_exists

    @property
    def margin(self) -> Optional[float]:
        if self.certificate is None:
            return None
        threshold = self.n - 1 if self.strong else self.n
        return threshold - self.certificate.energy

    def to_dict(self) -> dict:
        d = {
            "n": self.n,
            "delta": self.delta,
            "feasible": self.feasible,
            "hypo": self.hypo_exists,
            "strong": self.strong_exists,
            "clause": self.clause,
        }
        if self.witness is not None:
            d["witness_edges"] = [list(e) for e in self.witness.edges]
        if self.certificate is not None:
            d["energy"] = self.certificate.energy
            d["error_bound"] = self.certificate.error_bound
            d["margin"] = self.margin
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


# -- the classification table -----------------------------------------------


def hypo_rule(n: int, delta: int) -> Tuple[bool, str]:
    if not con.feasible(n, delta):
        return False, f"infeasible: no tree of order {n} has maximum degree {delta}"
    if delta == 0:
        return True, "single vertex: E = 0 < 1"
    if delta == 1:
        return False, "K2: E = 2 = n"
    if delta == 2:
        return n == 3, "max degree 2: only the path P3 (E = 2.828) is hypoenergetic"
    if delta == 3:
        return n in (4, 7), "max degree 3: hypoenergetic only for n = 4 (S4) and n = 7 (W)"
    return True, f"max degree {delta} >= 4: hypoenergetic trees for every n >= {delta + 1}"


def strong_rule(n: int, delta: int) -> Tuple[bool, str]:
    if not con.feasible(n, delta):
        return False, f"infeasible: no tree of order {n} has maximum degree {delta}"
    if delta <= 3:
        return False, "max degree <= 3: no strongly hypoenergetic trees"
    if delta == 4:
        yes = n in STRONG_DELTA4_SMALL or n >= 23
        clause = "max degree 4: strongly hypoenergetic only for n in {9,13,17,20,21} or n >= 23"
        if n in TSTAR3_NEGATIVE_ROWS:
            clause += (
                f"; minimum-energy tree T*({n},3) has E = {TSTAR3_NEGATIVE_ROWS[n]}"
                f" >= {n - 1}"
            )
        return yes, clause
    if delta == 5:
        return n == 6 or n >= 9, "max degree 5: strongly hypoenergetic only for n = 6 or n >= 9"
    return True, f"max degree {delta} >= 6: strongly hypoenergetic trees for every n >= {delta + 1}"


def nullity_condition(n: int, delta: int) -> bool:
    """ceil((n-1)/delta) <= (n-1)/4: max-nullity trees are then strongly
    hypoenergetic (nullity >= (n+1)/2)."""
    return 4 * con.ceil_div(n - 1, delta) <= n - 1


# -- certification ----------------------------------------------------------


def certificate(t: Tree, strong: bool, tol: Optional[float] = None) -> Tuple[bool, EnergyResult]:
    res = spectral.energy(t, tol)
    threshold = t.n - 1 if strong else t.n
    return bool(res.energy + res.error_bound < threshold), res


def certify(t: Tree, strong: bool, tol: Optional[float] = None) -> bool:
    """E + error < n (or n - 1): never certifies inside the error bound."""
    return certificate(t, strong, tol)[0]


# -- witness battery --------------------------------------------------------


def _last_leaf(t: Tree) -> int:
    return t.leaves[-1] if t.n > 1 else 0


def glue_at_leaves(g: Tree, h: Tree) -> Tree:
    """Coalesce a leaf of g with a leaf of h (the highest-numbered ones)."""
    return coalesce(g, _last_leaf(g), h, _last_leaf(h))


def star5_chain(base: Tree, n: int) -> Optional[Tree]:
    """base o S5 o S5 o ... reaching order n, or None if n is off the lattice."""
    if n < base.n or (n - base.n) % 4:
        return None
    t = base
    s5 = con.star(5)
    while t.n < n:
        t = glue_at_leaves(t, s5)
    return t


def _chain_bases(delta: int) -> Iterator[Tuple[str, Tree]]:
    if delta == 4:
        for m in (20, 23, 26):
            yield f"T*({m},3)", con.tstar(m, 3)
        yield "T6", con.t6()
        for m in (9, 13, 17, 21):
            yield f"maxnull({m},4)", con.max_nullity_tree(m, 4)
    elif delta >= 5:
        for m in range(delta + 1, delta + 10):
            if nullity_condition(m, delta):
                yield f"maxnull({m},{delta})", con.max_nullity_tree(m, delta)


def _candidates(n: int, delta: int, strong: bool) -> Iterator[Tuple[str, Callable[[], Optional[Tree]]]]:
    if n == delta + 1:
        yield "star", lambda: con.star(n)
    if con.feasible(n, delta) and delta >= 2:
        yield f"maxnull({n},{delta})", lambda: con.max_nullity_tree(n, delta)
    if delta == 4 and n >= 5:
        yield f"T*({n},3)", lambda: con.tstar(n, 3)
    if delta == 4 and n % 4 == 2 and n >= 10:
        yield f"T6 o T{n - 5}", lambda: _t6_chain(n)
    if delta == 5 and n == 12:
        yield "T11 o P2", lambda: glue_at_leaves(con.t11(), con.path(2))
    for name, base in _chain_bases(delta):
        yield f"{name} o S5 chain", lambda base=base: star5_chain(base, n)
    if delta >= 5 and n >= delta + 2:
        yield f"maxnull({n - 1},{delta}) o P2", lambda: (
            glue_at_leaves(con.max_nullity_tree(n - 1, delta), con.path(2))
            if con.feasible(n - 1, delta) else None
        )


def _t6_chain(n: int) -> Optional[Tree]:
    """T6 glued at a leaf to a strongly hypoenergetic Delta-4 tree of order n-5."""
    try:
        tail, _ = witness(n - 5, 4, strong=True)
    except (NoWitnessFound, ValueError):
        return None
    return glue_at_leaves(con.t6(), tail)


WITNESS_SEARCH_MAX_N = 18


@lru_cache(maxsize=4096)
def witness(
    n: int, delta: int, strong: bool, tol: Optional[float] = None
) -> Tuple[Tree, EnergyResult]:
    """First certified tree of order n and max degree exactly delta."""
    exists = strong_rule(n, delta)[0] if strong else hypo_rule(n, delta)[0]
    if not exists:
        raise ValueError(f"no {'strongly ' if strong else ''}hypoenergetic tree for ({n}, {delta})")
    if delta <= 3 and not strong:
        sporadic = {1: "S1", 3: "S3", 4: "S4", 7: "W"}
        t = con.figure1(sporadic[n])
        ok, res = certificate(t, strong, tol)
        if ok:
            return t, res
    for _, build in _candidates(n, delta, strong):
        t = build()
        if t is None or t.n != n or max_degree(t) != delta:
            continue
        ok, res = certificate(t, strong, tol)
        if ok:
            return t, res
    if n <= WITNESS_SEARCH_MAX_N:
        from .enumeration import min_energy_tree

        best = min_energy_tree(n, delta_exact=delta, tol=tol)
        ok, res = certificate(best.tree, strong, tol)
        if ok:
            return best.tree, res
    raise NoWitnessFound(f"battery exhausted for n={n}, delta={delta}, strong={strong}")


def witness_label(n: int, delta: int, strong: bool, tol: Optional[float] = None) -> str:
    """Name of the battery strategy that produced the witness."""
    t, _ = witness(n, delta, strong, tol)
    if delta <= 3 and not strong:
        return "sporadic"
    for name, build in _candidates(n, delta, strong):
        c = build()
        if c is not None and c.n == n and serialize_edge_list(c) == serialize_edge_list(t):
            return name
    return "exhaustive search"


def _verdict(n: int, delta: int, strong: bool, with_witness: bool, tol) -> Verdict:
    hypo, hclause = hypo_rule(n, delta)
    strg, sclause = strong_rule(n, delta)
    v = Verdict(
        n, delta, con.feasible(n, delta), hypo, strg,
        sclause if strong else hclause, strong,
    )
    if with_witness and v.exists:
        v.witness, v.certificate = witness(n, delta, strong, tol)
    return v


def hypo_exists(n: int, delta: int, with_witness: bool = True, tol: Optional[float] = None) -> Verdict:
    return _verdict(n, delta, False, with_witness, tol)


def strong_exists(n: int, delta: int, with_witness: bool = True, tol: Optional[float] = None) -> Verdict:
    return _verdict(n, delta, True, with_witness, tol)

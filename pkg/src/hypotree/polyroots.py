"""Exact integer-polynomial arithmetic and real root isolation.

Polynomials are lists of Python ints, lowest degree first. Root isolation
uses Sturm sequences to separate distinct roots, then plain sign-change
bisection on a square-free factor. All interval endpoints are dyadic
rationals ``num / 2**shift`` so evaluation stays in integers.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

Poly = List[int]


def trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence[int]) -> int:
    return len(p) - 1


def mul(a: Sequence[int], b: Sequence[int]) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def sub(a: Sequence[int], b: Sequence[int]) -> Poly:
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return trim(out)


def derivative(p: Sequence[int]) -> Poly:
    return trim([i * c for i, c in enumerate(p)][1:])


def content(p: Sequence[int]) -> int:
    g = 0
    for c in p:
        g = gcd(g, c)
    return g


def primitive(p: Sequence[int]) -> Poly:
    """Divide by the content and make the leading coefficient positive."""
    p = trim(p)
    if not p:
        return []
    g = content(p)
    if p[-1] < 0:
        g = -g
    return [c // g for c in p]


def pseudo_rem(a: Sequence[int], b: Sequence[int]) -> Poly:
    """Remainder r with |lc(b)|**k * a = q*b + r, k = deg a - deg b + 1.

    Using |lc(b)| keeps the sign of r equal to the sign of the true
    remainder, which Sturm chains rely on.
    """
    r = trim(a)
    b = trim(b)
    db = degree(b)
    lc = b[-1]
    k = degree(r) - db + 1
    if k <= 0:
        return r
    steps = 0
    while r and degree(r) >= db:
        shift = degree(r) - db
        top = r[-1]
        r = [c * lc for c in r]
        for i, c in enumerate(b):
            r[i + shift] -= top * c
        r = trim(r)
        steps += 1
    # account for skipped steps, then fix the sign of lc**k
    lc_abs_pow = abs(lc) ** (k - steps)
    r = [c * lc_abs_pow for c in r]
    if lc < 0 and steps % 2 == 1:
        r = [-c for c in r]
    return r


def exact_div(a: Sequence[int], b: Sequence[int]) -> Poly:
    """Quotient a / b, assuming b divides a in Z[x]."""
    r = trim(a)
    b = trim(b)
    db = degree(b)
    q = [0] * max(degree(r) - db + 1, 0)
    while r and degree(r) >= db:
        shift = degree(r) - db
        coef, rem = divmod(r[-1], b[-1])
        if rem:
            raise ArithmeticError("divisor does not divide dividend exactly")
        q[shift] = coef
        for i, c in enumerate(b):
            r[i + shift] -= coef * c
        r = trim(r)
    if r:
        raise ArithmeticError("non-zero remainder in exact division")
    return q


def poly_gcd(a: Sequence[int], b: Sequence[int]) -> Poly:
    """Primitive gcd via the primitive pseudo-remainder sequence."""
    a, b = primitive(a), primitive(b)
    while b:
        a, b = b, primitive(pseudo_rem(a, b))
    return a


def squarefree_decomposition(p: Sequence[int]) -> List[Tuple[Poly, int]]:
    """Yun's algorithm: p ~ prod f_i**i with f_i square-free and coprime.

    Every divisor is primitive, so by Gauss's lemma all quotients stay in
    Z[x] and keep the relative scaling Yun's recurrence depends on.
    """
    p = primitive(p)
    if degree(p) <= 0:
        return []
    dp = derivative(p)
    a = poly_gcd(p, dp)
    b = exact_div(p, a)
    c = exact_div(dp, a)
    d = sub(c, derivative(b))
    out = []
    i = 1
    while degree(b) > 0:
        f = poly_gcd(b, d) if d else primitive(b)
        if degree(f) > 0:
            out.append((f, i))
        b = exact_div(b, f)
        c = exact_div(d, f) if d else []
        d = sub(c, derivative(b))
        i += 1
    return out


def sign_at(p: Sequence[int], num: int, shift: int) -> int:
    """Sign of p(num / 2**shift)."""
    d = len(p) - 1
    acc = p[d]
    for i in range(d - 1, -1, -1):
        acc = acc * num + (p[i] << (shift * (d - i)))
    return (acc > 0) - (acc < 0)


def sturm_chain(p: Sequence[int]) -> List[Poly]:
    """Sturm chain p0=p, p1=p', p_{i+1} = -rem(p_{i-1}, p_i) / positive content."""
    p0 = trim(p)
    chain = [p0, derivative(p0)]
    while chain[-1] and degree(chain[-1]) > 0:
        r = pseudo_rem(chain[-2], chain[-1])
        if not r:
            break
        g = content(r)
        chain.append([-c // g for c in r])
    return chain


def variations(chain: Sequence[Sequence[int]], num: int, shift: int) -> int:
    count = 0
    last = 0
    for q in chain:
        s = sign_at(q, num, shift)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def cauchy_bound_exponent(p: Sequence[int]) -> int:
    """Smallest e with every root modulus < 2**e (Cauchy: 1 + max|c_i/c_d|)."""
    lead = abs(p[-1])
    m = max((abs(c) for c in p[:-1]), default=0)
    bound = 1 + -(-m // lead)
    e = 0
    while (1 << e) <= bound:
        e += 1
    return e


Interval = Tuple[Fraction, Fraction]


def isolate_positive_roots(p: Sequence[int], width: Fraction) -> List[Interval]:
    """Intervals [lo, hi] of width <= ``width``, one per positive root of p.

    ``p`` must be square-free. A root hit exactly is returned as [r, r].
    """
    p = trim(p)
    if degree(p) <= 0:
        return []
    chain = sturm_chain(p)
    e = cauchy_bound_exponent(p)
    # work at a common dyadic scale: endpoints num / 2**shift
    found: List[Interval] = []
    stack = [(0, 1 << e, 0)]
    while stack:
        lo, hi, shift = stack.pop()
        n_roots = variations(chain, lo, shift) - variations(chain, hi, shift)
        if n_roots == 0:
            continue
        if n_roots == 1:
            found.append(_refine(p, lo, hi, shift, width))
            continue
        mid = lo + hi
        stack.append((2 * lo, mid, shift + 1))
        stack.append((mid, 2 * hi, shift + 1))
    found.sort()
    return [iv for iv in found if iv[1] > 0]


def _refine(p: Sequence[int], lo: int, hi: int, shift: int, width: Fraction) -> Interval:
    """Bisect (lo, hi] / 2**shift holding exactly one simple root."""
    s_hi = sign_at(p, hi, shift)
    if s_hi == 0:
        r = Fraction(hi, 1 << shift)
        return r, r
    while Fraction(hi - lo, 1 << shift) > width:
        mid = lo + hi
        lo, hi, shift = 2 * lo, 2 * hi, shift + 1
        s_mid = sign_at(p, mid, shift)
        if s_mid == 0:
            r = Fraction(mid, 1 << shift)
            return r, r
        if s_mid == s_hi:
            hi = mid
        else:
            lo = mid
    return Fraction(lo, 1 << shift), Fraction(hi, 1 << shift)

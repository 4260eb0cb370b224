"""Slow definitional oracles shared by the test modules.

Everything here is written for clarity, not speed: dict-of-exponents
arithmetic and direct sums straight from the defining formulas.  Library
results are checked against these, never the other way around.
"""

from __future__ import annotations

from fractions import Fraction

from qstrange.exactpoly import IntPoly


# -- dict-based polynomial arithmetic ---------------------------------------

def dmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def dadd(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def dscale(a: dict, c) -> dict:
    return {e: c * ca for e, ca in a.items() if c * ca}


def to_poly(d: dict) -> IntPoly:
    if not d:
        return IntPoly()
    top = max(d)
    return IntPoly(tuple(d.get(e, 0) for e in range(top + 1)))


def from_poly(p) -> dict:
    return {e: c for e, c in enumerate(p.coeffs) if c}


# -- definitional building blocks -------------------------------------------

def poch_def(n: int, step: int = 1) -> dict:
    """(q;q)_n or (q;q^2)_n as a raw product of binomial factors."""
    out = {0: 1}
    for j in range(1, n + 1):
        e = j if step == 1 else 2 * j - 1
        out = dmul(out, {0: 1, e: -1})
    return out


def qbinom_def(n: int, k: int, base_power: int = 1) -> dict:
    """Gaussian binomial via the Pascal recurrence, optionally in base q^base_power."""
    if k < 0 or k > n:
        return {}
    row = [{0: 1}]
    for m in range(1, n + 1):
        new = [{0: 1}]
        for j in range(1, m):
            new.append(dadd(row[j - 1], dmul({base_power * j: 1}, row[j])))
        new.append({0: 1})
        row = new
    return row[k]


def hikami_f_def(m: int, alpha: int, n: int) -> dict:
    """Coefficient polynomial of the Hikami family by raw tuple enumeration.

    k_m = n and k_0 = 0; every inner index ranges with slack past its
    neighbor, relying on the out-of-range binomial being zero.
    """
    from itertools import product

    if m == 1:
        return {0: 1}
    total: dict = {}
    bound = n + m + 1
    for ks in product(range(bound + 1), repeat=m - 1):
        k = (0,) + ks + (n,)
        prod = {0: 1}
        for i in range(1, m):
            arg = k[i + 1] + (1 if i == alpha else 0)
            prod = dmul(prod, qbinom_def(arg, k[i]))
            if not prod:
                break
        if not prod:
            continue
        e = sum(k[i] ** 2 for i in range(1, m)) + sum(k[i] for i in range(alpha + 1, m))
        total = dadd(total, {ee + e: c for ee, c in prod.items()})
    return total


def gk_g_def(k: int, n: int) -> dict:
    """Coefficient polynomial of the G_k family by descending-chain enumeration."""
    total: dict = {}

    def rec(level: int, upper: int, exp: int, prod: dict):
        nonlocal total
        if level == 0:
            total = dadd(total, {e + exp: c for e, c in prod.items()})
            return
        for t in range(upper + 1):
            rec(level - 1, t, exp + 2 * t * t + 2 * t,
                dmul(prod, qbinom_def(upper, t, base_power=2)))

    rec(k - 1, n, n, {0: 1})
    return total


def subst_def(p: IntPoly, cap: int) -> IntPoly:
    """p(1-q) truncated at cap, via direct binomial expansion of each term."""
    acc = {0: 0}
    one_minus_q = {0: 1, 1: -1}
    for e, c in enumerate(p.coeffs):
        if not c:
            continue
        term = {0: 1}
        for _ in range(e):
            term = dmul(term, one_minus_q)
            term = {x: v for x, v in term.items() if x <= cap}
        acc = dadd(acc, dscale(term, c))
    acc = {x: v for x, v in acc.items() if x <= cap}
    return to_poly(acc)

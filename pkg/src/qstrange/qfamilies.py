"""Habiro-type family constructors and exact partial sums.

A family is a kernel kind plus a rule n -> coefficient polynomial: F-type
families sum f_n(q)*(q;q)_n, G-type families sum g_n(q)*(q;q^2)_n.  The
built-in rules cover the Kontsevich-Zagier series ("kz"), the Hikami
hierarchy ("hikami:m=<m>,alpha=<a>"), and the G_k ladder ("gk:k=<k>");
inline JSON descriptors give finite user-defined families.

The built-in coefficient polynomials are nested sums of Gaussian binomials
weighted by q^(t^2+c*t).  Rather than enumerate tuples, each nesting level
is computed by a column recurrence derived from the Pascal rule

    A_c(n) = A_c(n-1) + Q^(n+c) * A_(c+1)(n-1),

where column c+1 carries the weight sequence shifted by one.  Every update
is a shift-and-add, so the whole table costs O(steps^2) polynomial
additions and no multiplications.  Tests check the ladder against direct
tuple enumeration.
"""

from __future__ import annotations

import json
import threading
from typing import Sequence

from qstrange.exactpoly import IntPoly, pochhammer

__all__ = [
    "FamilySpec",
    "PartialSum",
    "InvalidParam",
    "ParseError",
    "parse_family",
    "term_poly",
    "kernel_poly",
    "partial_sum",
    "partial_sum_prefix",
]


class InvalidParam(ValueError):
    """Family parameter outside its legal range."""


class ParseError(ValueError):
    """Malformed family descriptor."""


# -- the ladder --------------------------------------------------------------

def _ladder_values(weights: Sequence[IntPoly], c0: int, steps: int, base: int,
                   cap: int | None = None) -> list[IntPoly]:
    """Values A(n) = sum_t Q^(t^2 + c0*t) * w(t) * [n choose t]_Q for n = 0..steps.

    Q = q**base.  Column c (c = c0..c0+steps) holds the ladder of the weight
    sequence shifted by c-c0; its n=0 value is w(c-c0).  Updating columns in
    ascending order lets each step read the previous step's neighbor before
    it is overwritten.  With cap set, all work is truncated above that degree.
    """
    if len(weights) < steps + 1:
        raise ValueError("need weights up to index steps")
    cols = [list(weights[i].coeffs) for i in range(steps + 1)]
    if cap is not None:
        cols = [c[: cap + 1] for c in cols]
    out = [IntPoly(cols[0])]
    for n in range(1, steps + 1):
        for idx in range(steps - n + 1):
            src = cols[idx + 1]
            off = base * (n + c0 + idx)
            stop = len(src)
            if cap is not None:
                stop = min(stop, cap + 1 - off)
                if stop <= 0:
                    continue
            dst = cols[idx]
            need = off + stop
            if len(dst) < need:
                dst.extend([0] * (need - len(dst)))
            for i in range(stop):
                v = src[i]
                if v:
                    dst[off + i] += v
        out.append(IntPoly(cols[0]))
    return out


# -- coefficient-polynomial rules --------------------------------------------

def _weights_kz(params, upper: int, cap: int | None) -> list[IntPoly]:
    return [IntPoly.one()] * (upper + 1)


def _weights_hikami(params, upper: int, cap: int | None) -> list[IntPoly]:
    m, alpha = params
    # levels run with slack so the alpha-level shift (binomial argument +1)
    # never runs off the end of the previous level's value table
    vals = [IntPoly.one()] * (upper + 2 * m + 3)
    for level in range(1, m):
        c0 = 1 if level > alpha else 0
        got = _ladder_values(vals, c0, len(vals) - 1, 1, cap)
        vals = got[1:] if level == alpha else got
    return vals[: upper + 1]


def _weights_gk(params, upper: int, cap: int | None) -> list[IntPoly]:
    (k,) = params
    vals = [IntPoly.one()] * (upper + 1)
    for _ in range(k - 1):
        vals = _ladder_values(vals, 1, upper, 2, cap)
    out = []
    for n, t in enumerate(vals):
        g = t.shift(n)
        out.append(g.truncate(cap) if cap is not None else g)
    return out


def _weights_inline(params, upper: int, cap: int | None) -> list[IntPoly]:
    out = list(params[: upper + 1])
    out.extend([IntPoly()] * (upper + 1 - len(out)))
    if cap is not None:
        out = [p.truncate(cap) for p in out]
    return out


_RULES = {
    "kz": _weights_kz,
    "hikami": _weights_hikami,
    "gk": _weights_gk,
    "inline": _weights_inline,
}


class FamilySpec:
    """Immutable family descriptor: kernel kind, label, coefficient rule."""

    __slots__ = ("kernel", "label", "_kind", "_params")

    kernel: str  # "F" or "G"
    label: str

    def __init__(self, kernel: str, label: str, kind: str, params: tuple):
        if kernel not in ("F", "G"):
            raise InvalidParam(f"unknown kernel {kernel!r}")
        object.__setattr__(self, "kernel", kernel)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "_kind", kind)
        object.__setattr__(self, "_params", params)

    def __setattr__(self, name, value):
        raise AttributeError("FamilySpec is immutable")

    def __eq__(self, other):
        return isinstance(other, FamilySpec) and self.label == other.label

    def __hash__(self):
        return hash(self.label)

    def __repr__(self):
        return f"FamilySpec({self.label!r})"

    def __str__(self):
        return self.label

    def coefficient_polys(self, upper: int) -> list[IntPoly]:
        """f_0..f_upper (or g_0..g_upper), exact, cached per label."""
        if upper < 0:
            raise ValueError("upper must be nonnegative")
        with _LOCK:
            have = _WEIGHT_CACHE.get(self.label)
            if have is None or len(have) <= upper:
                have = _RULES[self._kind](self._params, upper, None)
                _WEIGHT_CACHE[self.label] = have
            return have[: upper + 1]


class PartialSum:
    """partial_sum result: the family, the truncation N, and the exact value."""

    __slots__ = ("family", "upper", "value")

    family: FamilySpec
    upper: int
    value: IntPoly

    def __init__(self, family: FamilySpec, upper: int, value: IntPoly):
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("PartialSum is immutable")

    def __repr__(self):
        return f"PartialSum({self.family.label!r}, N={self.upper})"


# session caches; the lock covers both (coarse but contention-free in practice)
_LOCK = threading.RLock()
_WEIGHT_CACHE: dict[str, list[IntPoly]] = {}
_SUM_CACHE: dict[str, dict[int, IntPoly]] = {}


def parse_family(descriptor: str) -> FamilySpec:
    """Build a FamilySpec from "kz", "hikami:m=..,alpha=..", "gk:k=..", or inline JSON."""
    if not isinstance(descriptor, str):
        raise ParseError("descriptor must be a string")
    text = descriptor.strip()
    if text.startswith("{"):
        return _parse_inline(text)
    if text == "kz":
        return FamilySpec("F", "kz", "kz", ())
    head, _, tail = text.partition(":")
    if head == "hikami":
        args = _parse_kv(tail, ("m", "alpha"), text)
        m, alpha = args["m"], args["alpha"]
        if m < 1:
            raise InvalidParam(f"m must be >= 1, got {m}")
        if not 0 <= alpha < m:
            raise InvalidParam(f"alpha must lie in 0..{m - 1}, got {alpha}")
        return FamilySpec("F", f"hikami:m={m},alpha={alpha}", "hikami", (m, alpha))
    if head == "gk":
        args = _parse_kv(tail, ("k",), text)
        k = args["k"]
        if k < 1:
            raise InvalidParam(f"k must be >= 1, got {k}")
        return FamilySpec("G", f"gk:k={k}", "gk", (k,))
    raise ParseError(f"unknown family descriptor {descriptor!r}")


def _parse_kv(tail: str, names: tuple, full: str) -> dict:
    parts = tail.split(",") if tail else []
    if len(parts) != len(names):
        raise ParseError(f"expected {','.join(n + '=<int>' for n in names)} in {full!r}")
    out = {}
    for part, name in zip(parts, names):
        key, eq, val = part.partition("=")
        if key.strip() != name or not eq:
            raise ParseError(f"expected {name}=<int> in {full!r}")
        try:
            out[name] = int(val)
        except ValueError:
            raise ParseError(f"bad integer for {name} in {full!r}") from None
    return out


def _parse_inline(text: str) -> FamilySpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad inline family JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ParseError("inline family must be a JSON object")
    kernel = obj.get("kernel")
    if kernel not in ("F", "G"):
        raise InvalidParam(f"inline family kernel must be 'F' or 'G', got {kernel!r}")
    terms = obj.get("terms")
    if not isinstance(terms, list):
        raise ParseError("inline family needs a 'terms' list")
    try:
        polys = tuple(IntPoly.from_json_obj(t) for t in terms)
    except ValueError as exc:
        raise ParseError(f"bad term polynomial: {exc}") from None
    canon = {"kernel": kernel, "terms": [p.to_json_obj() for p in polys]}
    label = json.dumps(canon, sort_keys=True, separators=(",", ":"))
    return FamilySpec(kernel, label, "inline", polys)


def kernel_poly(family: FamilySpec, n: int) -> IntPoly:
    """(q;q)_n or (q;q^2)_n according to the family's kernel kind."""
    return pochhammer(n, 1 if family.kernel == "F" else 2)


def term_poly(family: FamilySpec, n: int) -> IntPoly:
    """The coefficient polynomial f_n(q) (F-type) or g_n(q) (G-type)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return family.coefficient_polys(n)[n]


def partial_sum(family: FamilySpec, upper: int) -> PartialSum:
    """Sum of term_poly(n)*kernel(n) for n = 0..upper, exactly.

    Built incrementally on top of the largest cached truncation for the
    same family; the cache is invisible in results.
    """
    if upper < 0:
        raise ValueError("upper must be nonnegative")
    with _LOCK:
        per = _SUM_CACHE.setdefault(family.label, {})
        if upper in per:
            return PartialSum(family, upper, per[upper])
        start = max((n for n in per if n < upper), default=-1)
        value = per[start] if start >= 0 else IntPoly()
        weights = family.coefficient_polys(upper)
        for n in range(start + 1, upper + 1):
            value = value + weights[n] * kernel_poly(family, n)
            per[n] = value
        return PartialSum(family, upper, value)


def partial_sum_prefix(family: FamilySpec, upper: int, cap: int) -> IntPoly:
    """partial_sum(family, upper).value truncated at degree cap, computed
    entirely inside the quotient ring Z[q]/(q^(cap+1)).

    Exact for the coefficients it returns; the point is that the truncated
    run never builds the huge high-degree tails of the exact sum.
    """
    if upper < 0 or cap < 0:
        raise ValueError("upper and cap must be nonnegative")
    weights = _RULES[family._kind](family._params, upper, cap)
    step = 1 if family.kernel == "F" else 2
    kern = IntPoly.one()
    total = IntPoly()
    for n in range(upper + 1):
        if n:
            e = n if step == 1 else 2 * n - 1
            if e <= cap:
                kern = (kern - kern.shift(e)).truncate(cap)
        total = total + (weights[n] * kern).truncate(cap)
    return total

"""Exact arithmetic in the cyclotomic fields Q(zeta_k).

An element is stored as its canonical residue mod the k-th cyclotomic
polynomial: a rational polynomial in zeta of degree below phi(k).  All
operations stay exact; the only numeric hook is embed(), which maps an
element to an arbitrary-precision complex number for cross-checking.
"""

from __future__ import annotations

import functools
from fractions import Fraction

from qstrange.exactpoly import RatPoly, cyclotomic

__all__ = ["CycloNum", "ConductorMismatch", "eval_at_root"]


class ConductorMismatch(ValueError):
    """Arithmetic tried to mix elements of different cyclotomic fields."""


@functools.lru_cache(maxsize=None)
def _phi_rat(k: int) -> RatPoly:
    return cyclotomic(k).to_rat()


def _reduce(k: int, rep: RatPoly) -> RatPoly:
    phi = _phi_rat(k)
    if rep.degree < phi.degree:
        return rep
    _, r = rep.divmod_by(phi)
    return r


class CycloNum:
    """One element of Q(zeta_k), zeta_k = exp(2*pi*i/k)."""

    __slots__ = ("k", "rep")

    k: int
    rep: RatPoly

    def __init__(self, k: int, rep):
        if k < 1:
            raise ValueError("k must be positive")
        if not isinstance(rep, RatPoly):
            rep = RatPoly(rep)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "rep", _reduce(k, rep))

    def __setattr__(self, name, value):
        raise AttributeError("CycloNum is immutable")

    @classmethod
    def rational(cls, k: int, x) -> "CycloNum":
        return cls(k, (Fraction(x),))

    @classmethod
    def zeta(cls, k: int, power: int = 1) -> "CycloNum":
        """zeta_k**power, any integer power."""
        return cls(k, RatPoly.monomial(power % k))

    # -- predicates ----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.rep)

    def is_rational(self) -> bool:
        return self.rep.degree <= 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.rep[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloNum):
            if isinstance(other, (int, Fraction)):
                return self.is_rational() and self.as_fraction() == other
            return NotImplemented
        if self.k != other.k:
            raise ConductorMismatch(f"fields Q(zeta_{self.k}) and Q(zeta_{other.k})")
        return self.rep == other.rep

    def __hash__(self) -> int:
        return hash((self.k, self.rep))

    # -- arithmetic ----------------------------------------------------------

    def _match(self, other) -> "CycloNum":
        if isinstance(other, (int, Fraction)):
            return CycloNum.rational(self.k, other)
        if not isinstance(other, CycloNum):
            raise TypeError(f"cannot combine CycloNum with {type(other).__name__}")
        if other.k != self.k:
            raise ConductorMismatch(f"fields Q(zeta_{self.k}) and Q(zeta_{other.k})")
        return other

    def __add__(self, other):
        other = self._match(other)
        return CycloNum(self.k, self.rep + other.rep)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._match(other)
        return CycloNum(self.k, self.rep - other.rep)

    def __rsub__(self, other):
        return self._match(other) - self

    def __neg__(self):
        return CycloNum(self.k, -self.rep)

    def __mul__(self, other):
        other = self._match(other)
        return CycloNum(self.k, self.rep * other.rep)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = CycloNum.rational(self.k, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "CycloNum":
        return CycloNum(self.k, self.rep.scale(Fraction(c)))

    def lift(self, m: int) -> "CycloNum":
        """Reinterpret in the larger field Q(zeta_m); requires k | m."""
        if m % self.k:
            raise ConductorMismatch(f"{self.k} does not divide {m}")
        return CycloNum(m, self.rep.dilate(m // self.k) if self.rep else self.rep)

    # -- output --------------------------------------------------------------

    def embed(self, prec_bits: int = 200):
        """Numeric value as an mpmath complex at the requested precision."""
        import mpmath

        with mpmath.workprec(prec_bits):
            total = mpmath.mpc(0)
            for e, c in enumerate(self.rep.coeffs):
                if not c:
                    continue
                w = mpmath.expjpi(mpmath.mpf(2 * e) / self.k)
                total += w * mpmath.mpf(c.numerator) / c.denominator
            return total

    def __repr__(self) -> str:
        return f"CycloNum(k={self.k}, {self.rep.coeffs})"

    def __str__(self) -> str:
        return f"[{self.rep}]_zeta{self.k}"


def eval_at_root(p, k: int, power: int = 1) -> CycloNum:
    """Value of a polynomial at q = zeta_k**power, folding exponents mod k first."""
    folded = [Fraction(0)] * k
    for e, c in enumerate(p.coeffs):
        if c:
            folded[(e * power) % k] += Fraction(c)
    return CycloNum(k, folded)

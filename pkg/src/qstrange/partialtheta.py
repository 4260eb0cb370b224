"""Characters with quadratic exponents and their partial theta machinery.

A character here is a periodic rational-valued function chi together with
the exponent data (a, b) and the weight nu, so that the attached partial
theta series is sum over n >= 0 of n^nu * chi(n) * q^((n^2-a)/b).  The
module validates the support condition (integrality of the exponent) and
the mean-zero condition, builds the twisted sequences C(n) = zeta^((n^2-a)/b)
* chi(n) at a root of unity, computes L(-n, C) exactly through Bernoulli
sums, and assembles the asymptotic expansion coefficients gamma_n(zeta).

Everything is exact: values are Fractions, twisted entries are CycloNum.
"""

from __future__ import annotations

import functools
import math
import threading
from fractions import Fraction

from qstrange.cyclofield import CycloNum
from qstrange.exactpoly import RatPoly
from qstrange.qfamilies import InvalidParam, ParseError, _parse_kv

__all__ = [
    "Character",
    "TwistedSeq",
    "CharacterInvalid",
    "IntegralityViolation",
    "MeanValueNonzero",
    "get_character",
    "character_from_json_obj",
    "validate_character",
    "twisted_sequence",
    "bernoulli_number",
    "bernoulli_poly",
    "l_value",
    "gamma_coeff",
    "theta_truncated",
]


class CharacterInvalid(ValueError):
    """Character data violates one of the admissibility conditions."""


class IntegralityViolation(CharacterInvalid):
    """Some supported n has (n^2 - a)/b outside the integers."""


class MeanValueNonzero(CharacterInvalid):
    """The (twisted) mean over one period is not zero."""


class Character:
    """Periodic rational character with quadratic exponent data (a, b, nu)."""

    __slots__ = ("a", "b", "nu", "period", "values", "label")

    a: int
    b: int
    nu: int
    period: int
    values: tuple
    label: str

    def __init__(self, a: int, b: int, nu: int, period: int, values, label: str = "custom"):
        if b < 1:
            raise CharacterInvalid("b must be positive")
        if a < 0:
            raise CharacterInvalid("a must be nonnegative")
        if nu not in (0, 1):
            raise CharacterInvalid("nu must be 0 or 1")
        if period < 1:
            raise CharacterInvalid("period must be positive")
        if isinstance(values, dict):
            table = [Fraction(0)] * period
            for key, val in values.items():
                n = int(key)
                if not 0 <= n < period:
                    raise CharacterInvalid(f"residue {n} outside 0..{period - 1}")
                table[n] = Fraction(val)
        else:
            table = [Fraction(v) for v in values]
            if len(table) != period:
                raise CharacterInvalid("values length must equal the period")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "values", tuple(table))
        object.__setattr__(self, "label", label)

    def __setattr__(self, name, value):
        raise AttributeError("Character is immutable")

    def value(self, n: int) -> Fraction:
        return self.values[n % self.period]

    def exponent(self, n: int) -> int:
        """(n^2 - a)/b for a supported n; exact integer or IntegralityViolation."""
        num = n * n - self.a
        if num % self.b:
            raise IntegralityViolation(f"(({n})^2 - {self.a})/{self.b} is not an integer")
        return num // self.b

    def _key(self):
        return (self.a, self.b, self.nu, self.period, self.values)

    def __eq__(self, other):
        return isinstance(other, Character) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Character({self.label!r}, a={self.a}, b={self.b}, nu={self.nu}, T={self.period})"

    def to_json_obj(self) -> dict:
        vals = {str(n): str(v) for n, v in enumerate(self.values) if v}
        return {"a": self.a, "b": self.b, "nu": self.nu,
                "period": self.period, "values": vals}


def character_from_json_obj(obj: dict, label: str = "custom") -> Character:
    if not isinstance(obj, dict):
        raise ParseError("character JSON must be an object")
    try:
        return validate_character(Character(
            int(obj["a"]), int(obj["b"]), int(obj["nu"]),
            int(obj["period"]), obj.get("values", {}), label))
    except KeyError as exc:
        raise ParseError(f"character JSON missing field {exc}") from None


def validate_character(char: Character) -> Character:
    """Check (chi1) integrality and (chi2) zero untwisted mean.

    Integrality is scanned over lcm(T, b) indices, which covers every
    residue of n mod b occurring on the support; one bare period is not
    enough since the exponent map has period b, not T.
    """
    span = math.lcm(char.period, char.b)
    for n in range(span):
        if char.value(n):
            char.exponent(n)  # raises IntegralityViolation when fractional
    if sum(char.values, Fraction(0)):
        raise MeanValueNonzero(f"character mean over one period is {sum(char.values)}")
    return char


# -- built-ins ----------------------------------------------------------------

def _chi_kz() -> Character:
    return Character(1, 24, 1, 12,
                     {1: Fraction(-1, 2), 11: Fraction(-1, 2),
                      5: Fraction(1, 2), 7: Fraction(1, 2)}, "chi_kz")


def _chi6() -> Character:
    return Character(1, 3, 0, 6, {1: 1, 2: 1, 4: -1, 5: -1}, "chi6")


def _chi_hikami(m: int, alpha: int) -> Character:
    if m < 1:
        raise InvalidParam(f"m must be >= 1, got {m}")
    if not 0 <= alpha < m:
        raise InvalidParam(f"alpha must lie in 0..{m - 1}, got {alpha}")
    T = 8 * m + 4
    minus = ((2 * m - 2 * alpha - 1) % T, (6 * m + 2 * alpha + 5) % T)
    plus = ((2 * m + 2 * alpha + 3) % T, (6 * m - 2 * alpha + 1) % T)
    assert len(set(minus + plus)) == 4
    vals = {n: Fraction(-1, 2) for n in minus}
    vals.update({n: Fraction(1, 2) for n in plus})
    return Character((2 * m - 2 * alpha - 1) ** 2, 8 * (2 * m + 1), 1, T, vals,
                     f"chi_hikami:m={m},alpha={alpha}")


def _chi_gk(k: int) -> Character:
    if k < 1:
        raise InvalidParam(f"k must be >= 1, got {k}")
    T = 4 * k + 2
    vals = {k: Fraction(1), k + 1: Fraction(1),
            (-k) % T: Fraction(-1), (-k - 1) % T: Fraction(-1)}
    return Character(k * k, 2 * k + 1, 0, T, vals, f"chi_gk:k={k}")


def get_character(name: str) -> Character:
    """Built-in character by name; see module docstring for the catalogue."""
    text = name.strip()
    if text == "chi_kz":
        return _chi_kz()
    if text == "chi6":
        return _chi6()
    head, _, tail = text.partition(":")
    if head == "chi_hikami":
        args = _parse_kv(tail, ("m", "alpha"), text)
        return _chi_hikami(args["m"], args["alpha"])
    if head == "chi_gk":
        args = _parse_kv(tail, ("k",), text)
        return _chi_gk(args["k"])
    raise ParseError(f"unknown character name {name!r}")


# -- twisted sequences ---------------------------------------------------------

class TwistedSeq:
    """C(n) = zeta^((n^2-a)/b) * chi(n) tabulated over one full period."""

    __slots__ = ("character", "k", "j", "period", "table")

    def __init__(self, character: Character, k: int, j: int, period: int, table):
        table = tuple(table)
        if len(table) != period:
            raise ValueError("table length must equal the period")
        total = CycloNum.rational(k, 0)
        for entry in table:
            total = total + entry
        if total:
            raise MeanValueNonzero(
                f"twisted mean of {character.label} at zeta_{k}^{j} is nonzero")
        object.__setattr__(self, "character", character)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "table", table)

    def __setattr__(self, name, value):
        raise AttributeError("TwistedSeq is immutable")

    def entry(self, n: int) -> CycloNum:
        return self.table[n % self.period]

    def __repr__(self):
        return (f"TwistedSeq({self.character.label!r}, zeta_{self.k}^{self.j}, "
                f"P={self.period})")


_SEQ_LOCK = threading.Lock()
_SEQ_CACHE: dict = {}


def _raw_entry(char: Character, k: int, j: int, n: int) -> CycloNum:
    c = char.value(n)
    if not c:
        return CycloNum.rational(k, 0)
    return CycloNum.zeta(k, j * char.exponent(n)).scale(c)


def twisted_sequence(char: Character, k: int, j: int) -> TwistedSeq:
    """Tabulate C(n) over P = lcm(T, b*k) and re-verify periodicity and mean.

    The period claim is provable (b*k divides P forces the zeta-power ratio
    to one), but user-supplied characters get it re-checked over a second
    window anyway.
    """
    if k < 1:
        raise ValueError("conductor k must be positive")
    validate_character(char)
    j = j % k
    key = (char, k, j)
    with _SEQ_LOCK:
        hit = _SEQ_CACHE.get(key)
    if hit is not None:
        return hit
    P = math.lcm(char.period, char.b * k)
    table = [_raw_entry(char, k, j, n) for n in range(P)]
    for n in range(P):
        if _raw_entry(char, k, j, n + P) != table[n]:
            raise CharacterInvalid(
                f"{char.label}: twisted sequence not {P}-periodic at n={n}")
    seq = TwistedSeq(char, k, j, P, table)
    with _SEQ_LOCK:
        _SEQ_CACHE[key] = seq
    return seq


# -- Bernoulli machinery --------------------------------------------------------

@functools.lru_cache(maxsize=None)
def bernoulli_number(m: int) -> Fraction:
    """Bernoulli number B_m with B_1 = -1/2."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return Fraction(1)
    acc = Fraction(0)
    for jj in range(m):
        acc += math.comb(m + 1, jj) * bernoulli_number(jj)
    return -acc / (m + 1)


@functools.lru_cache(maxsize=None)
def bernoulli_poly(n: int) -> RatPoly:
    """Bernoulli polynomial B_n(x), exact rationals."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    coeffs = [math.comb(n, e) * bernoulli_number(n - e) for e in range(n + 1)]
    return RatPoly(coeffs)


def l_value(seq: TwistedSeq, n: int) -> CycloNum:
    """L(-n, C) = (-P^n/(n+1)) * sum_{m=1}^{P} C(m) B_{n+1}(m/P), exactly."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    P = seq.period
    bp = bernoulli_poly(n + 1)
    total = CycloNum.rational(seq.k, 0)
    for m in range(1, P + 1):
        c = seq.entry(m)
        if c:
            total = total + c.scale(bp.evaluate(Fraction(m, P)))
    return total.scale(Fraction(-(P ** n), n + 1))


def gamma_coeff(char: Character, k: int, j: int, n: int) -> CycloNum:
    """Asymptotic coefficient gamma_n(zeta_k^j) of the partial theta series.

    Cauchy product of the exp(a*t/b) prefactor series with the L-value
    expansion: gamma_n = sum_r (a/b)^(n-r)/(n-r)! * (-1)^r/(b^r r!) * L(-2r-nu, C).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    seq = twisted_sequence(char, k, j)
    a, b, nu = char.a, char.b, char.nu
    total = CycloNum.rational(k, 0)
    for r in range(n + 1):
        pre = (Fraction(a, b) ** (n - r) / math.factorial(n - r)
               * Fraction((-1) ** r, b ** r * math.factorial(r)))
        total = total + l_value(seq, 2 * r + nu).scale(pre)
    return total


def theta_truncated(char: Character, cap: int) -> RatPoly:
    """Partial theta series through degree cap; only meaningful for nu = 0."""
    if char.nu != 0:
        raise ValueError("theta_truncated requires a nu=0 character")
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    validate_character(char)
    coeffs = [Fraction(0)] * (cap + 1)
    n = 0
    # exponents grow like n^2/b; stop once a whole period stays above cap
    top = math.isqrt(char.a + char.b * cap) + char.period + 1
    while n <= top:
        c = char.value(n)
        if c:
            e = char.exponent(n)
            if e < 0:
                raise ValueError(f"negative exponent at n={n}")
            if e <= cap:
                coeffs[e] += c
        n += 1
    return RatPoly(coeffs)

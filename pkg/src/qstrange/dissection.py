"""s-dissections and executable divisibility certificates.

A dissection splits p(q) into parts A_0..A_{s-1} with p = sum q^i A_i(q^s);
the parts live in the reduced variable.  For a family partial sum whose
residue i avoids the quadratic residue set S_{a,b,chi}(s), the dissection
theorems predict an exact q-Pochhammer divisor: (q;q)_lambda for F-type
kernels, (q;q^2)_mu for G-type kernels at odd s.  verify_theorem runs the
divisions and returns the certificate; a failed division where the theorem
applies is a hard error, never a report row.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

from qstrange.exactpoly import IntPoly, NotDivisible, exact_div, pochhammer
from qstrange.partialtheta import Character, validate_character
from qstrange.qfamilies import FamilySpec, partial_sum

__all__ = [
    "Dissection",
    "DivisibilityRow",
    "DivisibilityReport",
    "OddModulusRequired",
    "DivisibilityFalsified",
    "dissect",
    "thresholds",
    "residue_set",
    "pochhammer_factorization",
    "verify_theorem",
]


class OddModulusRequired(ValueError):
    """G-type divisibility needs an odd dissection modulus."""


class DivisibilityFalsified(ArithmeticError):
    """A division the theorems guarantee has failed; inputs are inconsistent."""


class Dissection:
    """Parts A_0..A_{s-1} of p(q) = sum_i q^i A_i(q^s)."""

    __slots__ = ("modulus", "parts")

    modulus: int
    parts: tuple

    def __init__(self, modulus: int, parts):
        parts = tuple(parts)
        if modulus < 1 or len(parts) != modulus:
            raise ValueError("need exactly s parts for modulus s")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "parts", parts)

    def __setattr__(self, name, value):
        raise AttributeError("Dissection is immutable")

    def reassemble(self) -> IntPoly:
        total = IntPoly()
        for i, part in enumerate(self.parts):
            if part:
                total = total + part.dilate(self.modulus).shift(i)
        return total

    def __repr__(self):
        return f"Dissection(s={self.modulus}, degrees={[p.degree for p in self.parts]})"


def dissect(p: IntPoly, s: int) -> Dissection:
    """Bucket coefficients by exponent residue; part i is indexed by (e-i)/s."""
    if s < 1:
        raise ValueError("modulus must be positive")
    buckets = [[] for _ in range(s)]
    for e, c in enumerate(p.coeffs):
        i = e % s
        idx = e // s
        bucket = buckets[i]
        if len(bucket) <= idx:
            bucket.extend([0] * (idx + 1 - len(bucket)))
        bucket[idx] = c
    return Dissection(s, (IntPoly(b) for b in buckets))


def thresholds(N: int, s: int, k: int = 1) -> tuple[int, int]:
    """(lambda(N,s), mu(N,k,s)) = (floor((N+1)/s), floor(N/(s(2k-1)) + 1/2))."""
    if N < 0 or s < 1 or k < 1:
        raise ValueError("need N >= 0, s >= 1, k >= 1")
    lam = (N + 1) // s
    d = s * (2 * k - 1)
    mu = (2 * N + d) // (2 * d)
    return lam, mu


def residue_set(char: Character, s: int) -> frozenset:
    """S_{a,b,chi}(s): residues (n^2-a)/b mod s over the support of chi.

    One scan of lcm(T, b*s) indices is exhaustive: both chi and the residue
    map are periodic with that period.
    """
    if s < 1:
        raise ValueError("modulus must be positive")
    validate_character(char)
    out = set()
    for n in range(math.lcm(char.period, char.b * s)):
        if char.value(n):
            out.add(char.exponent(n) % s)
    return frozenset(out)


def pochhammer_factorization(n: int, step: int = 1) -> tuple[int, list[int]]:
    """Cyclotomic shape of the kernels: sign and exponent of each factor.

    step=1: (q;q)_n = (-1)^n * prod_{k=1..n} Phi_k^(floor(n/k)).
    step=2: (q;q^2)_n = (-1)^n * prod_{k=1..n} Phi_(2k-1)^e(k) where e(k)
    counts odd multiples of 2k-1 up to 2n-1.
    """
    if step not in (1, 2):
        raise ValueError("step must be 1 or 2")
    if n < 0:
        raise ValueError("n must be nonnegative")
    sign = -1 if n % 2 else 1
    if step == 1:
        exps = [n // k for k in range(1, n + 1)]
    else:
        exps = [(2 * n - 1 + m) // (2 * m) for m in (2 * k - 1 for k in range(1, n + 1))]
    return sign, exps


class DivisibilityRow:
    """One residue class line of a certificate."""

    __slots__ = ("i", "in_s", "divisor_name", "verdict", "quotient")

    def __init__(self, i: int, in_s: bool, divisor_name: str, verdict: str,
                 quotient: IntPoly | None):
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "in_s", in_s)
        object.__setattr__(self, "divisor_name", divisor_name)
        object.__setattr__(self, "verdict", verdict)
        object.__setattr__(self, "quotient", quotient)

    def __setattr__(self, name, value):
        raise AttributeError("DivisibilityRow is immutable")

    def to_json_obj(self) -> dict:
        obj = {"i": self.i, "in_S": self.in_s, "divisor": self.divisor_name,
               "verdict": self.verdict}
        if self.quotient is not None:
            obj["quotient"] = self.quotient.to_json_obj()
        return obj


class DivisibilityReport:
    """Full certificate for one (family, character, s, N) instance."""

    __slots__ = ("family_label", "s", "upper", "residues", "rows")

    def __init__(self, family_label: str, s: int, upper: int, residues: frozenset, rows):
        object.__setattr__(self, "family_label", family_label)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "residues", residues)
        object.__setattr__(self, "rows", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("DivisibilityReport is immutable")

    def to_json_obj(self) -> dict:
        return {"family": self.family_label, "s": self.s, "N": self.upper,
                "S": sorted(self.residues),
                "rows": [r.to_json_obj() for r in self.rows]}


def verify_theorem(family: FamilySpec, char: Character, s: int, N: int,
                   jobs: int | None = None) -> DivisibilityReport:
    """Dissect the partial sum and certify the predicted kernel divisors.

    Rows for i outside S must divide (anything else raises
    DivisibilityFalsified); rows inside S record "divides" when the division
    happens to work and "not-claimed" when it does not.
    """
    if N < 0 or s < 1:
        raise ValueError("need N >= 0 and s >= 1")
    validate_character(char)
    if family.kernel == "G" and s % 2 == 0:
        raise OddModulusRequired(f"G-type divisibility needs odd s, got {s}")
    lam, mu = thresholds(N, s, 1)
    if family.kernel == "F":
        divisor, divisor_name = pochhammer(lam), f"(q;q)_{lam}"
    else:
        divisor, divisor_name = pochhammer(mu, 2), f"(q;q2)_{mu}"
    parts = dissect(partial_sum(family, N).value, s).parts
    in_s = residue_set(char, s)

    def attempt(i: int) -> DivisibilityRow:
        try:
            quotient = exact_div(parts[i], divisor) if parts[i] else IntPoly()
        except NotDivisible:
            if i not in in_s:
                raise DivisibilityFalsified(
                    f"{family.label}, s={s}, N={N}: part i={i} is outside "
                    f"S={sorted(in_s)} yet {divisor_name} does not divide it")
            return DivisibilityRow(i, True, divisor_name, "not-claimed", None)
        return DivisibilityRow(i, i in in_s, divisor_name, "divides", quotient)

    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(attempt, range(s)))
    else:
        rows = [attempt(i) for i in range(s)]
    return DivisibilityReport(family.label, s, N, in_s, rows)

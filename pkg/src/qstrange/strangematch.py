"""Matching strange series against partial theta expansions at roots of unity.

At a root of unity zeta the Pochhammer kernel of a strange series picks up
zeros of growing multiplicity, so only finitely many terms survive when the
series or any fixed q-derivative of it is evaluated there.  The surviving
value lives in a cyclotomic field and can be computed exactly.  On the other
side, the companion partial theta function has an asymptotic expansion at
zeta whose coefficients are L-values of a twisted character sequence.  The
matching claim is that

    F(zeta * exp(-t)) ~ sum_l gamma_l * t**l      (t -> 0+)

holds with gamma_l = (-1)**l / l! * (q d/dq)**l F evaluated at zeta, and that
these agree with the L-value coefficients.  Both sides are computed here in
exact arithmetic and compared coefficient by coefficient.

The module also carries the derivative bookkeeping used to extract single
dissection pieces from a series: applying (q d/dq)**l to q**i * g(q**s)
produces a fixed integer combination of shifted derivatives of g, and
``c_array`` tabulates those combinations.
"""

import math
from fractions import Fraction

from .cyclofield import CycloNum, eval_at_root
from .exactpoly import theta_deriv
from .partialtheta import gamma_coeff, validate_character
from .qfamilies import InvalidParam, partial_sum


class OddOrderRequired(ValueError):
    """A G-kernel series has no stable value at a root of even order."""


def stable_derivative(family, k: int, ell: int) -> int:
    """Least partial-sum index past which (q d/dq)**ell is exact at order-k roots.

    For an F kernel the factor (q;q)_n has a zero of multiplicity n // k at
    every primitive k-th root of unity, so terms with n >= k*(ell+1) vanish
    under ell derivatives.  For a G kernel the odd-index factors of (q;q^2)_n
    meet multiples of k only when k is odd; even k is rejected because the
    terms never die off and no finite truncation is faithful.
    """
    if k < 1:
        raise InvalidParam("root order must be positive")
    if ell < 0:
        raise InvalidParam("derivative order must be nonnegative")
    if family.kernel == "F":
        return k * (ell + 1) - 1
    if k % 2 == 0:
        raise OddOrderRequired(
            "kernel (q;q^2)_n does not vanish at roots of even order")
    return (k * (2 * ell + 1)) // 2


def expansion_coeff(family, k: int, j: int, ell: int) -> CycloNum:
    """Exact t**ell coefficient of the series at q = zeta_k**j * exp(-t)."""
    if k < 1:
        raise InvalidParam("root order must be positive")
    j %= k
    order = k // math.gcd(j, k)
    n_star = stable_derivative(family, order, ell)
    p = theta_deriv(partial_sum(family, n_star).value, ell)
    val = eval_at_root(p, k, j)
    return val.scale(Fraction((-1) ** ell, math.factorial(ell)))


class MatchReport:
    """Outcome of comparing series and partial theta coefficients at one root."""

    __slots__ = ("family_label", "character_label", "k", "j",
                 "checked_through", "verdict", "first_mismatch")

    def __init__(self, family_label, character_label, k, j,
                 checked_through, verdict, first_mismatch=None):
        for name, value in (
                ("family_label", family_label),
                ("character_label", character_label),
                ("k", k), ("j", j),
                ("checked_through", checked_through),
                ("verdict", verdict),
                ("first_mismatch", first_mismatch)):
            object.__setattr__(self, name, value)

    def __setattr__(self, name, value):
        raise AttributeError("MatchReport is immutable")

    def to_json_obj(self):
        obj = {
            "family": self.family_label,
            "character": self.character_label,
            "k": self.k,
            "j": self.j,
            "checked_through": self.checked_through,
            "verdict": self.verdict,
        }
        if self.first_mismatch is not None:
            obj["first_mismatch"] = self.first_mismatch
        return obj


def match_expansion(family, char, k: int, j: int, depth: int) -> MatchReport:
    """Compare expansion coefficients through order ``depth`` at zeta_k**j.

    Both sides are exact elements of Q(zeta_k).  The report says "match" when
    every order agrees and otherwise records the first failing order; nothing
    is rounded, so a mismatch is a theorem about the inputs rather than a
    numerical artifact.
    """
    validate_character(char)
    if depth < 0:
        raise InvalidParam("depth must be nonnegative")
    if k < 1:
        raise InvalidParam("root order must be positive")
    j %= k
    first_bad = None
    for ell in range(depth + 1):
        lhs = expansion_coeff(family, k, j, ell)
        rhs = gamma_coeff(char, k, j, ell)
        if lhs != rhs:
            first_bad = ell
            break
    verdict = "match" if first_bad is None else "mismatch"
    return MatchReport(family.label, char.label or "custom", k, j,
                       depth, verdict, first_bad)


def c_array(ell: int, i: int, s: int) -> list:
    """Coefficients C_{ell,i,j}(s) with (q d/dq)**ell [q**i g(q**s)]
    = sum_j C_{ell,i,j}(s) q**(i+j*s) g^(j)(q**s).

    Row ell is built from row ell-1 by C <- (i+j*s)*C_j + s*C_{j-1}; the
    working row keeps a j = ell+1 slot so the recursion never truncates the
    carry coming from j = ell.  Returned list has entries j = 0 .. ell.
    """
    if ell < 0:
        raise InvalidParam("derivative order must be nonnegative")
    row = [1] + [0] * (ell + 1)
    for _ in range(ell):
        nxt = [0] * (ell + 2)
        for jj in range(ell + 2):
            nxt[jj] = (i + jj * s) * row[jj]
            if jj:
                nxt[jj] += s * row[jj - 1]
        row = nxt
    return row[:ell + 1]


def extraction_identity_check(p, s: int, ell: int) -> bool:
    """Verify the two identities behind dissection extraction on a sample poly.

    First the root-of-unity filter: averaging zeta_s**(-i*r) * p(zeta_s**r q)
    over r must reproduce the i-th dissection piece, checked with exact
    cyclotomic coefficients.  Second the derivative ladder: applying
    (q d/dq)**ell to q**i A_i(q**s) must equal the c_array combination of
    plain derivatives of A_i.  Returns False on the first discrepancy.
    """
    from .dissection import dissect

    if s < 1:
        raise InvalidParam("modulus must be positive")
    if ell < 0:
        raise InvalidParam("derivative order must be nonnegative")
    parts = dissect(p, s).parts
    inv_s = Fraction(1, s)
    for i in range(s):
        piece = parts[i].dilate(s).shift(i)
        # filter check, coefficient by coefficient in Q(zeta_s)
        for e, c in enumerate(p.coeffs):
            acc = CycloNum.rational(s, 0)
            for r in range(s):
                acc = acc + CycloNum.zeta(s, r * (e - i)).scale(Fraction(c))
            acc = acc.scale(inv_s)
            want = CycloNum.rational(s, c if e % s == i else 0)
            if acc != want:
                return False
        # derivative ladder check over Z[q]
        lhs = theta_deriv(piece, ell)
        coeffs = c_array(ell, i, s)
        deriv = parts[i]
        rhs = type(p).zero()
        for jj, cf in enumerate(coeffs):
            rhs = rhs + deriv.dilate(s).shift(i + jj * s).scale(cf)
            deriv = deriv.derivative()
        if lhs != rhs:
            return False
    return True

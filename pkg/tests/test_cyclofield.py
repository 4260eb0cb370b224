import random
from fractions import Fraction

import mpmath
import pytest

from qstrange.cyclofield import ConductorMismatch, CycloNum, eval_at_root
from qstrange.exactpoly import IntPoly, RatPoly, cyclotomic


EMBED_TOL = mpmath.mpf(10) ** -30


def embed_close(a, b):
    return abs(a - b) < EMBED_TOL


class TestConstruction:
    def test_reduction(self):
        # zeta_3^2 reduces against 1 + q + q^2
        z2 = CycloNum(3, RatPoly.monomial(2))
        assert z2.rep.coeffs == (Fraction(-1), Fraction(-1))

    def test_zeta_power_wraps(self):
        assert CycloNum.zeta(5, 7) == CycloNum.zeta(5, 2)
        assert CycloNum.zeta(5, -1) == CycloNum.zeta(5, 4)
        assert CycloNum.zeta(5, 0) == 1

    def test_rational_predicates(self):
        x = CycloNum.rational(7, Fraction(3, 2))
        assert x.is_rational()
        assert x.as_fraction() == Fraction(3, 2)
        z = CycloNum.zeta(7)
        assert not z.is_rational()
        with pytest.raises(ValueError):
            z.as_fraction()

    def test_immutable(self):
        z = CycloNum.zeta(4)
        with pytest.raises(AttributeError):
            z.k = 5


class TestArithmetic:
    def test_conjugate_product(self):
        # (1 + zeta_3)(1 + zeta_3^2) = 1
        z = CycloNum.zeta(3)
        assert (1 + z) * (1 + z * z) == 1

    def test_geometric_sum_vanishes(self):
        for k in (2, 3, 5, 6, 12):
            z = CycloNum.zeta(k)
            total = CycloNum.rational(k, 0)
            for j in range(k):
                total = total + z ** j
            assert not total

    def test_pow_matches_repeated_mul(self):
        z = CycloNum.zeta(8) + CycloNum.rational(8, Fraction(1, 2))
        acc = CycloNum.rational(8, 1)
        for n in range(6):
            assert z ** n == acc
            acc = acc * z

    def test_conductor_mismatch(self):
        with pytest.raises(ConductorMismatch):
            CycloNum.zeta(3) + CycloNum.zeta(4)
        with pytest.raises(ConductorMismatch):
            CycloNum.zeta(3) == CycloNum.zeta(4)

    def test_scalar_ops(self):
        z = CycloNum.zeta(5)
        assert 2 * z - z == z
        assert (z - 1) + (1 - z) == 0
        assert z.scale(Fraction(1, 3)) * 3 == z

    def test_lift(self):
        z3 = CycloNum.zeta(3)
        z12 = z3.lift(12)
        assert z12.k == 12
        assert z12 == CycloNum.zeta(12, 4)
        with pytest.raises(ConductorMismatch):
            z3.lift(8)

    def test_field_axioms_random(self):
        rng = random.Random(1453)
        k = 12
        deg = cyclotomic(k).degree

        def rand_elt():
            return CycloNum(k, [Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                                for _ in range(deg + 2)])

        for _ in range(40):
            a, b, c = rand_elt(), rand_elt(), rand_elt()
            assert a * (b + c) == a * b + a * c
            assert (a * b) * c == a * (b * c)
            assert a - a == 0


class TestEvalAtRoot:
    def test_folding(self):
        # q^5 at zeta_4: 5 = 1 mod 4
        p = IntPoly.monomial(5)
        assert eval_at_root(p, 4) == CycloNum.zeta(4)

    def test_power_argument(self):
        p = IntPoly((0, 1))  # q
        assert eval_at_root(p, 6, 2) == CycloNum.zeta(6, 2)

    def test_cyclotomic_vanishes_at_primitive_root(self):
        for k in (1, 2, 3, 4, 6, 10, 12):
            assert not eval_at_root(cyclotomic(k), k)

    def test_cyclotomic_nonzero_at_nonprimitive(self):
        assert eval_at_root(cyclotomic(4), 4, 2)  # zeta_4^2 = -1 is not primitive

    def test_matches_slow_substitution(self):
        rng = random.Random(8)
        for _ in range(25):
            k = rng.randint(1, 12)
            j = rng.randint(0, 2 * k)
            p = IntPoly(tuple(rng.randint(-5, 5) for _ in range(rng.randint(0, 18))))
            z = CycloNum.zeta(k, j)
            slow = CycloNum.rational(k, 0)
            for e, c in enumerate(p.coeffs):
                slow = slow + (z ** e).scale(c)
            assert eval_at_root(p, k, j) == slow


class TestEmbed:
    def test_zeta_values(self):
        with mpmath.workprec(200):
            z = CycloNum.zeta(4).embed()
            assert embed_close(z, mpmath.mpc(0, 1))
            z6 = CycloNum.zeta(6).embed()
            assert embed_close(z6, mpmath.mpc(mpmath.mpf(1) / 2, mpmath.sqrt(3) / 2))

    def test_embedding_is_ring_map(self):
        rng = random.Random(99)
        k = 7
        for _ in range(10):
            a = CycloNum(k, [Fraction(rng.randint(-3, 3)) for _ in range(8)])
            b = CycloNum(k, [Fraction(rng.randint(-3, 3)) for _ in range(8)])
            with mpmath.workprec(200):
                assert embed_close((a * b).embed(), a.embed() * b.embed())
                assert embed_close((a + b).embed(), a.embed() + b.embed())

    def test_poly_eval_consistency(self):
        rng = random.Random(512)
        for _ in range(10):
            k = rng.randint(2, 9)
            p = IntPoly(tuple(rng.randint(-4, 4) for _ in range(12)))
            direct = eval_at_root(p, k).embed()
            with mpmath.workprec(200):
                z = mpmath.expjpi(mpmath.mpf(2) / k)
                numeric = sum(int(c) * z ** e for e, c in enumerate(p.coeffs))
            assert embed_close(direct, numeric)

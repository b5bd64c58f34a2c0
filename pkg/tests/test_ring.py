import random
from fractions import Fraction

import pytest

from strucmaps.ring import (
    ContextMismatch,
    ExactDivisionError,
    NotAPerfectSquare,
    Ring,
    gcd_list,
    poly_gcd,
)


def pf_ring():
    names = ["x%d%d" % (i, j) for i in range(1, 6) for j in range(i + 1, 6)]
    return Ring(names + ["y"], [1] * len(names) + [2])


def random_poly(ring, rng, nterms=4, maxdeg=2, maxc=6):
    p = ring.zero()
    for _ in range(nterms):
        exps = [0] * ring.nvars
        for _ in range(rng.randint(0, maxdeg)):
            exps[rng.randrange(ring.nvars)] += 1
        p = p + ring.monomial(exps, Fraction(rng.randint(-maxc, maxc), rng.randint(1, 3)))
    return p


def test_ring_rejects_duplicates():
    with pytest.raises(ValueError):
        Ring(["a", "a"])


def test_product_of_sum_and_difference():
    r = Ring(["x", "y"])
    x, y = r.var("x"), r.var("y")
    assert (x + y) * (x - y) == x * x - y * y


def test_context_mismatch():
    a = Ring(["x"]).var("x")
    b = Ring(["x", "y"]).var("x")
    with pytest.raises(ContextMismatch):
        a + b
    # structurally identical rings are interchangeable
    assert a + Ring(["x"]).var("x") == a * 2


def test_canonical_string():
    r = Ring(["x12", "y", "b_135"], [1, 2, 0])
    p = r.var("x12") * r.var("y") * 3 - r.var("b_135") * Fraction(1, 2)
    assert str(p) == "3*x12*y - 1/2*b_135"
    assert str(r.zero()) == "0"
    assert str(r.one() - 2) == "-1"
    assert str(r.var("y") ** 3 * -1 + r.var("x12")) == "-y^3 + x12"


def test_parse_round_trip():
    r = pf_ring()
    rng = random.Random(7)
    for _ in range(40):
        p = random_poly(r, rng)
        assert r.parse(str(p)) == p
    assert r.parse("0") == r.zero()
    assert r.parse("y^2 + 1") == r.var("y") ** 2 + 1
    assert r.parse("-x12*x34") == -(r.var("x12") * r.var("x34"))
    assert r.parse("3*x12*y - 1/2*x45") == r.var("x12") * r.var("y") * 3 - r.var(
        "x45"
    ) * Fraction(1, 2)


def test_parse_rejects_garbage():
    r = Ring(["x"])
    for bad in ["", "x +", "z", "x ^", "1//2*x"]:
        with pytest.raises((ValueError, KeyError)):
            r.parse(bad)


def test_substitution_is_a_homomorphism():
    r = pf_ring()
    rng = random.Random(11)
    target = Ring(["s", "t"])
    for _ in range(15):
        a = random_poly(r, rng, nterms=3)
        b = random_poly(r, rng, nterms=3)
        mapping = {
            name: random_poly(target, rng, nterms=2, maxdeg=1) for name in r.names
        }
        fa = a.substitute(mapping, target)
        fb = b.substitute(mapping, target)
        assert (a * b).substitute(mapping, target) == fa * fb
        assert (a + b).substitute(mapping, target) == fa + fb


def test_substitute_zero_into_zero():
    r = Ring(["x"])
    assert r.zero().substitute({"x": 0}) == r.zero()


def test_substitution_specializes_defect_variables():
    r = Ring(["e1", "b16", "b26"], [1, 0, 0])
    v = r.var("e1") + r.var("b16") * 2 + r.var("b26")
    out = v.substitute({"b16": 0, "b26": 0})
    assert out == r.var("e1")


def test_weighted_degree_and_homogeneity():
    r = pf_ring()
    x12, y = r.var("x12"), r.var("y")
    p = x12 * x12 + y
    assert p.degree() == 2
    assert p.is_homogeneous(2)
    assert not (p + x12).is_homogeneous()
    # all weight-2 monomials in 10 weight-1 variables plus one weight-2
    assert len(r.monomials_of_weight(2)) == 56
    assert len(r.monomials_of_weight(0)) == 1
    assert r.monomials_of_weight(-1) == []


def test_exact_division():
    r = pf_ring()
    rng = random.Random(3)
    for _ in range(25):
        p = random_poly(r, rng)
        q = random_poly(r, rng)
        if q.is_zero():
            continue
        assert (p * q).exact_div(q) == p
    with pytest.raises(ExactDivisionError):
        (r.var("x12") + 1).exact_div(r.var("y"))


def test_sqrt_basics():
    r = pf_ring()
    y, x12 = r.var("y"), r.var("x12")
    assert (y * y).sqrt() == y
    assert (y * y * x12 * x12).sqrt() == y * x12
    with pytest.raises(NotAPerfectSquare):
        (y * y + 1).sqrt()
    with pytest.raises(NotAPerfectSquare):
        (-(y * y)).sqrt()


def test_sqrt_random_squares_and_sign_convention():
    r = pf_ring()
    rng = random.Random(19)
    for _ in range(20):
        p = random_poly(r, rng, nterms=3)
        if p.is_zero():
            continue
        s = (p * p).sqrt()
        assert s * s == p * p
        assert s == (p * (-1) * (p * (-1))).sqrt()
        _, lead = s.leading()
        assert lead > 0


def test_content_and_primitive():
    r = Ring(["x", "y"])
    x, y = r.var("x"), r.var("y")
    p = x * 4 - y * 6
    c, prim = p.primitive()
    assert c == 2
    assert prim == x * 2 - y * 3
    c2, prim2 = (-p).primitive()
    assert c2 == -2 and prim2 == prim


def test_gcd_examples():
    r = pf_ring()
    y, x12, x13, x45 = (r.var(n) for n in ["y", "x12", "x13", "x45"])
    assert poly_gcd(y * x12, y * x13) == y
    p1 = r.parse("x23*x45 - x24*x35 + x25*x34")
    assert poly_gcd(p1 * y, p1 * x45) == p1
    p = r.parse("2*x12*y - 4*x13")
    assert poly_gcd(p, r.zero()) == r.parse("x12*y - 2*x13")
    assert poly_gcd(r.zero(), r.zero()) == r.zero()


def test_gcd_of_constructed_products():
    r = Ring(["x", "y", "z"])
    rng = random.Random(23)
    for _ in range(12):
        g = random_poly(r, rng, nterms=2, maxdeg=2)
        a = random_poly(r, rng, nterms=2, maxdeg=1)
        b = random_poly(r, rng, nterms=2, maxdeg=1)
        if g.is_zero() or a.is_zero() or b.is_zero():
            continue
        d = poly_gcd(g * a, g * b)
        # gcd must contain g (up to scalar): g divides d's product witnesses
        assert d.divides(g * a) and d.divides(g * b)
        assert g.primitive()[1].divides(d)


def test_gcd_list():
    r = pf_ring()
    y = r.var("y")
    polys = [y * r.var("x12"), y * y, y * r.var("x34") * 5]
    assert gcd_list(polys) == y

import random
from fractions import Fraction
from itertools import permutations

import pytest

from strucmaps.linalg import Mat, NoSolution, mat_vec, solve_linear_graded, solve_rational
from strucmaps.ring import Ring

from test_ring import pf_ring, random_poly


QQ = Ring([])


def rational_mat(rng, nrows, ncols, maxc=5):
    return Mat.from_scalars(
        QQ,
        [
            [Fraction(rng.randint(-maxc, maxc)) for _ in range(ncols)]
            for _ in range(nrows)
        ],
    )


def permanent_free_det(m):
    """Leibniz-formula determinant oracle (exponential; for small tests only)."""
    n = m.nrows
    total = m.ring.zero()
    for perm in permutations(range(n)):
        sign = 1
        seen = [False] * n
        for i in range(n):
            if seen[i]:
                continue
            j = i
            length = 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        term = m.ring.one()
        for i in range(n):
            term = term * m.rows[i][perm[i]]
        total = total + term if sign > 0 else total - term
    return total


def test_identity_det():
    assert Mat.identity(QQ, 27).det() == QQ.one()


def test_det_matches_leibniz_oracle():
    rng = random.Random(5)
    for _ in range(10):
        m = rational_mat(rng, 4, 4)
        assert m.det() == permanent_free_det(m)
    r = pf_ring()
    for _ in range(4):
        m = Mat(r, [[random_poly(r, rng, nterms=2, maxdeg=1) for _ in range(3)] for _ in range(3)])
        assert m.det() == permanent_free_det(m)


def test_det_singular():
    rng = random.Random(9)
    m = rational_mat(rng, 3, 3)
    m2 = Mat(QQ, [m.rows[0], m.rows[1], [a + b for a, b in zip(m.rows[0], m.rows[1])]])
    assert m2.det() == QQ.zero()


def test_pfaffian_base_case():
    r = Ring(["a"])
    a = r.var("a")
    m = Mat(r, [[r.zero(), a], [-a, r.zero()]])
    assert m.pfaffian() == a


def generic_skew(ring, n, offset=1):
    z = ring.zero()
    rows = [[z] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = ring.var("x%d%d" % (i + offset, j + offset))
            rows[i][j] = v
            rows[j][i] = -v
    return Mat(ring, rows)


def test_pfaffian_principal_subset():
    r = pf_ring()
    m = generic_skew(r, 5)
    # rows/cols 2..5 in 1-based labels
    assert m.pfaffian(subset=[1, 2, 3, 4]) == r.parse("x23*x45 - x24*x35 + x25*x34")
    assert m.pfaffian(subset=[]) == r.one()


def test_pfaffian_squares_to_det():
    names = ["x%d%d" % (i, j) for i in range(1, 7) for j in range(i + 1, 7)]
    r = Ring(names)
    for n in (2, 4, 6):
        m = generic_skew(r, n)
        pf = m.pfaffian()
        assert pf * pf == m.det()
    assert len(generic_skew(r, 6).pfaffian().terms) == 15
    rng = random.Random(13)
    for n in (2, 4, 6):
        vals = [
            [Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)
        ]
        rows = [
            [
                QQ.const(vals[i][j] if i < j else (-vals[j][i] if j < i else 0))
                for j in range(n)
            ]
            for i in range(n)
        ]
        m = Mat(QQ, rows)
        assert m.pfaffian() * m.pfaffian() == m.det()


def test_pfaffian_input_validation():
    r = Ring(["a"])
    a = r.var("a")
    with pytest.raises(ValueError):
        Mat(r, [[r.zero(), a], [a, r.zero()]]).pfaffian()
    with pytest.raises(ValueError):
        generic_skew(pf_ring(), 5).pfaffian(subset=[0, 1, 2])


def test_rank():
    rng = random.Random(17)
    for _ in range(8):
        target = rng.randint(0, 3)
        a = rational_mat(rng, 4, target) if target else Mat.zeros(QQ, 4, 1)
        b = rational_mat(rng, target, 5) if target else Mat.zeros(QQ, 1, 5)
        assert (a * b).rank() <= target
    assert Mat.identity(QQ, 6).rank() == 6


def test_wedge_power():
    r = Ring(["a", "b", "c", "d"])
    m = Mat(r, [[r.var("a"), r.var("b")], [r.var("c"), r.var("d")]])
    w2 = m.wedge_power(2)
    assert w2.nrows == 1 and w2.ncols == 1
    assert w2[0, 0] == m.det()
    assert Mat.identity(QQ, 5).wedge_power(3) == Mat.identity(QQ, 10)


def test_solve_rational_and_kernel():
    rng = random.Random(21)
    for _ in range(20):
        nr, nc = rng.randint(1, 5), rng.randint(1, 5)
        a = [[Fraction(rng.randint(-3, 3)) for _ in range(nc)] for _ in range(nr)]
        xtrue = [Fraction(rng.randint(-3, 3)) for _ in range(nc)]
        b = [sum(a[i][j] * xtrue[j] for j in range(nc)) for i in range(nr)]
        sols, kernel = solve_rational(a, [b])
        x = sols[0]
        assert x is not None
        assert all(sum(a[i][j] * x[j] for j in range(nc)) == b[i] for i in range(nr))
        for k in kernel:
            assert all(sum(a[i][j] * k[j] for j in range(nc)) == 0 for i in range(nr))
        # rank-nullity on the candidate space
        red_rank = len([1 for row in a if any(row)])
        assert len(kernel) >= nc - nr


def test_solve_rational_inconsistent():
    sols, _ = solve_rational([[Fraction(1)], [Fraction(1)]], [[Fraction(1), Fraction(2)]])
    assert sols[0] is None


def test_solve_linear_graded_simple():
    r = pf_ring()
    x12, y = r.var("x12"), r.var("y")
    a = Mat(r, [[x12]])
    x, kernel = solve_linear_graded(a, [x12 * y])
    assert x == [y]
    assert kernel == []


def test_solve_linear_graded_kernel():
    r = pf_ring()
    x12, y = r.var("x12"), r.var("y")
    a = Mat(r, [[x12, -y]])
    x, kernel = solve_linear_graded(a, [r.zero()], degrees=[2, 1])
    assert x == [r.zero(), r.zero()]
    assert any(k == [y, x12] or k == [-y, -x12] for k in kernel)
    for k in kernel:
        assert all(v.is_zero() for v in mat_vec(a, k))


def test_solve_linear_graded_no_solution():
    r = pf_ring()
    a = Mat(r, [[r.var("x12")]])
    with pytest.raises(NoSolution):
        solve_linear_graded(a, [r.var("y")], degrees=[1])


def test_solve_linear_graded_zero_system():
    r = pf_ring()
    a = Mat.zeros(r, 2, 2)
    x, kernel = solve_linear_graded(a, [r.zero(), r.zero()], degrees=[1, 1])
    assert x == [r.zero(), r.zero()]
    # kernel is everything at the forced degree: 10 monomials per coordinate
    assert len(kernel) == 20


def test_solve_linear_graded_weight_zero_variables():
    # constant matrix, rhs polynomial in weight-0 defect variables
    r = Ring(["b1", "b2"], [0, 0])
    a = Mat.from_scalars(r, [[1, 0, 1], [0, 1, 1]])
    b1, b2 = r.var("b1"), r.var("b2")
    x, kernel = solve_linear_graded(a, [b1 * b2, b2 * 3], degrees=[0, 0, 0])
    assert mat_vec(a, x) == [b1 * b2, b2 * 3]
    assert len(kernel) >= 1
    for k in kernel:
        assert all(v.is_zero() for v in mat_vec(a, k))

"""Length-four free complexes of format (1, n, 2n-2, n, 1).

A :class:`FreeComplex` stores the four differential matrices together with
basis labels and internal degrees per basis element.  The middle module G
carries the hyperbolic bilinear form Q = [[0, I], [I, 0]] in the fixed
basis order (eh1..eh_{n-1}, e1..e_{n-1}) — hatted block first.  Both
canonical builders live here: the split exact complex (with either dual
labeling convention) and the pfaffian hyperplane section resolving
(P_1hat, ..., P_5hat, y).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .linalg import Mat, solve_rational
from .ring import Poly, Ring, RingError


class ZeroMap(RingError):
    """A differential has lower rank than the format requires."""


class NonConstantEntries(RingError):
    """hyperbolic_normalize needs a Gram matrix over the coefficient field."""


class NoRationalIsotropicVector(RingError):
    """No rational isotropic vector was found (field not quadratically closed)."""


def pfaffian_ring(extra=(), extra_weights=()):
    """The ring Q[x12..x45, y] with weights x:1, y:2 (plus optional extras)."""
    names = ["x%d%d" % (i, j) for i in range(1, 6) for j in range(i + 1, 6)]
    weights = [1] * len(names)
    names.append("y")
    weights.append(2)
    return Ring(tuple(names) + tuple(extra), tuple(weights) + tuple(extra_weights))


def xvar(ring, i, j):
    """x_{ij} for any i != j, with x_{ji} = -x_{ij}."""
    if i == j:
        return ring.zero()
    if i < j:
        return ring.var("x%d%d" % (i, j))
    return -ring.var("x%d%d" % (j, i))


def generic_skew_matrix(ring, n=5):
    """The generic skew matrix X with X[i][j] = x_{i+1,j+1}."""
    return Mat(ring, [[xvar(ring, i + 1, j + 1) for j in range(n)] for i in range(n)])


def sub_pfaffian(ring, i):
    """P_ihat: the pfaffian of the generic 5x5 skew matrix with row/col i removed."""
    x = generic_skew_matrix(ring)
    return x.pfaffian(subset=[k for k in range(5) if k != i - 1])


class FreeComplex:
    """A free complex 0 -> F4 -> F3 -> G -> F1 -> F0 with labeled graded bases."""

    __slots__ = ("ring", "n", "d", "labels", "degrees", "convention")

    def __init__(self, ring, n, d, labels, degrees, convention=None):
        self.ring = ring
        self.n = n
        self.d = dict(d)
        self.labels = {k: tuple(v) for k, v in labels.items()}
        self.degrees = {k: tuple(v) for k, v in degrees.items()}
        self.convention = convention
        shapes = {1: (1, n), 2: (n, 2 * n - 2), 3: (2 * n - 2, n), 4: (n, 1)}
        for k, (nr, nc) in shapes.items():
            m = self.d[k]
            if (m.nrows, m.ncols) != (nr, nc):
                raise ValueError("d%d has shape %dx%d, want %dx%d" % (k, m.nrows, m.ncols, nr, nc))
        ranks = {0: 1, 1: n, 2: 2 * n - 2, 3: n, 4: 1}
        for k, r in ranks.items():
            if len(self.labels[k]) != r or len(self.degrees[k]) != r:
                raise ValueError("module %d labels/degrees length mismatch" % k)

    @property
    def m(self):
        """Rank of each half of G."""
        return self.n - 1

    def q_form(self):
        """The hyperbolic form on G in the (eh-block, e-block) basis order."""
        m = self.m
        z = Mat.zeros(self.ring, m, m)
        i = Mat.identity(self.ring, m)
        return Mat.from_blocks([[z, i], [i, z]])

    # -- verification ----------------------------------------------------

    def _graded_ok(self, k):
        src = self.degrees[k]
        tgt = self.degrees[k - 1]
        mat = self.d[k]
        for i in range(mat.nrows):
            for j in range(mat.ncols):
                p = mat.rows[i][j]
                if not p.is_zero() and not p.is_homogeneous(src[j] - tgt[i]):
                    return False
        return True

    def verify(self):
        """Report on complex, self-duality, hyperbolicity and gradedness."""
        checks = []
        for k in (1, 2, 3):
            ok = (self.d[k] * self.d[k + 1]).is_zero()
            checks.append(("d%d*d%d = 0" % (k, k + 1), ok, ""))
        q = self.q_form()
        ok_d3 = self.d[3] == q * self.d[2].transpose()
        checks.append(("self-dual: d3 = Q*d2^T", ok_d3, ""))
        ok_d4 = self.d[4] == self.d[1].transpose()
        checks.append(("self-dual: d4 = d1^T", ok_d4, ""))
        checks.append(("hyperbolic form on G", q == q.transpose(), ""))
        graded = all(self._graded_ok(k) for k in (1, 2, 3, 4))
        checks.append(("graded differentials", graded, ""))
        report = {
            "passed": all(ok for _, ok, _ in checks),
            "checks": [
                {"name": name, "passed": ok, "detail": detail}
                for name, ok, detail in checks
            ],
        }
        return report

    # -- serialization ---------------------------------------------------

    def to_json(self):
        payload = {
            "n": self.n,
            "convention": self.convention,
            "ring": {
                "variables": list(self.ring.names),
                "weights": list(self.ring.weights),
            },
            "labels": {("F%d" % k): list(self.labels[k]) for k in range(5)},
            "degrees": {("F%d" % k): list(self.degrees[k]) for k in range(5)},
        }
        for k in (1, 2, 3, 4):
            payload["d%d" % k] = [[str(p) for p in row] for row in self.d[k].rows]
        return payload

    @classmethod
    def from_json(cls, payload):
        ring = Ring(payload["ring"]["variables"], payload["ring"]["weights"])
        n = payload["n"]
        d = {}
        for k in (1, 2, 3, 4):
            d[k] = Mat(
                ring, [[ring.parse(s) for s in row] for row in payload["d%d" % k]]
            )
        labels = {k: payload["labels"]["F%d" % k] for k in range(5)}
        degrees = {k: payload["degrees"]["F%d" % k] for k in range(5)}
        return cls(ring, n, d, labels, degrees, payload.get("convention"))

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def loads(cls, text):
        return cls.from_json(json.loads(text))


def g_labels(n):
    m = n - 1
    return tuple("eh%d" % i for i in range(1, m + 1)) + tuple(
        "e%d" % i for i in range(1, m + 1)
    )


def f_labels(n, dual=False):
    star = "*" if dual else ""
    return tuple("f%d%s" % (i, star) for i in range(1, n + 1))


def build_split(n=6, convention="alpha1", ring=None):
    """The split exact complex of format (1, n, 2n-2, n, 1).

    All entries are constants: d4 = (0..0,1)^T, d3(f_i) = eh_i for
    i < n and d3(f_n) = 0, d2 = d3^T Q, d1 = d4^T.  The two labeling
    conventions produce identical matrices and differ only in which side
    carries the dual stars on the f-bases.
    """
    if n < 5:
        raise ValueError("format requires n >= 5")
    if convention not in ("alpha1", "alpha2"):
        raise ValueError("convention must be alpha1 or alpha2")
    if ring is None:
        ring = Ring([])
    m = n - 1
    z, o = ring.zero(), ring.one()
    d4 = Mat(ring, [[o if i == n - 1 else z] for i in range(n)])
    d3 = Mat(ring, [[o if (i < m and i == j) else z for j in range(n)] for i in range(2 * m)])
    q = Mat.from_blocks(
        [
            [Mat.zeros(ring, m, m), Mat.identity(ring, m)],
            [Mat.identity(ring, m), Mat.zeros(ring, m, m)],
        ]
    )
    d2 = d3.transpose() * q
    d1 = d4.transpose()
    f1_dual = convention == "alpha1"
    labels = {
        0: ("1",),
        1: f_labels(n, dual=f1_dual),
        2: g_labels(n),
        3: f_labels(n, dual=not f1_dual),
        4: ("1",),
    }
    degrees = {0: (0,), 1: (0,) * n, 2: (0,) * (2 * m), 3: (0,) * n, 4: (0,)}
    return FreeComplex(ring, n, {1: d1, 2: d2, 3: d3, 4: d4}, labels, degrees, convention)


def build_pfaffian_section(ring=None, convention="alpha1"):
    """The graded complex resolving the Gorenstein ideal (P_1hat..P_5hat, y).

    d4 is the column (P_1hat, ..., P_5hat, y); d3 has hatted rows
    (-y*I5 | P_hat column) and unhatted rows (B | 0) with the skew matrix
    B_ij = (-1)^(i+j+1) x_ij; d2 = d3^T Q and d1 = d4^T.
    """
    if ring is None:
        ring = pfaffian_ring()
    y = ring.var("y")
    phat = [sub_pfaffian(ring, i) for i in range(1, 6)]
    d4 = Mat.column(ring, phat + [y])
    z = ring.zero()
    rows = []
    for i in range(1, 6):  # hatted rows
        row = [(-y if j == i else z) for j in range(1, 6)]
        row.append(phat[i - 1])
        rows.append(row)
    for i in range(1, 6):  # unhatted rows
        row = []
        for j in range(1, 6):
            b = xvar(ring, i, j)
            if (i + j) % 2 == 0:
                b = -b
            row.append(b)
        row.append(z)
        rows.append(row)
    d3 = Mat(ring, rows)
    m = 5
    q = Mat.from_blocks(
        [
            [Mat.zeros(ring, m, m), Mat.identity(ring, m)],
            [Mat.identity(ring, m), Mat.zeros(ring, m, m)],
        ]
    )
    d2 = d3.transpose() * q
    d1 = d4.transpose()
    f1_dual = convention == "alpha1"
    labels = {
        0: ("1",),
        1: f_labels(6, dual=f1_dual),
        2: g_labels(6),
        3: f_labels(6, dual=not f1_dual),
        4: ("1",),
    }
    degrees = {0: (0,), 1: (2,) * 6, 2: (3,) * 5 + (4,) * 5, 3: (5,) * 6, 4: (7,)}
    return FreeComplex(
        ring, 6, {1: d1, 2: d2, 3: d3, 4: d4}, labels, degrees, convention
    )


def verify_complex(c):
    """Convenience wrapper returning c.verify()."""
    return c.verify()


# -- hyperbolic normalization ------------------------------------------


_LAMBDA_SEARCH = [Fraction(a, b) for a in (1, -1, 2, -2, 3, -3) for b in (1, 2, 3)]


def hyperbolic_normalize(gram):
    """Change of basis P with P^T * gram * P = [[0, I], [I, 0]].

    ``gram`` must be symmetric and invertible with constant rational
    entries of even size.  Hyperbolic pairs are split off one at a time:
    an isotropic vector is searched among the current basis vectors and
    the combinations b_i + lambda*b_j (exact quadratic solve first, then a
    small search set), its pairing partner is normalized and isotropized,
    and the procedure recurses on the orthogonal complement.
    """
    ring = gram.ring
    nn = gram.nrows
    if gram.ncols != nn or nn % 2:
        raise ValueError("gram must be square of even size")
    b = []
    for row in gram.rows:
        frow = []
        for p in row:
            if not p.is_constant():
                raise NonConstantEntries("gram entry %s is not constant" % p)
            frow.append(p.constant_value())
        b.append(frow)
    for i in range(nn):
        for j in range(nn):
            if b[i][j] != b[j][i]:
                raise ValueError("gram is not symmetric")

    def bil(u, v):
        return sum(u[i] * b[i][j] * v[j] for i in range(nn) for j in range(nn))

    def find_isotropic(basis):
        for v in basis:
            if bil(v, v) == 0:
                return v
        for ii in range(len(basis)):
            for jj in range(len(basis)):
                if ii == jj:
                    continue
                u, v = basis[ii], basis[jj]
                qu, qv, buv = bil(u, u), bil(v, v), bil(u, v)
                # q(u + t v) = qu + 2 t buv + t^2 qv = 0
                disc = buv * buv - qu * qv
                if qv != 0 and disc >= 0:
                    num, den = disc.numerator, disc.denominator
                    rn, rd = _isqrt_exact(num), _isqrt_exact(den)
                    if rn is not None and rd is not None:
                        root = Fraction(rn, rd)
                        t = (-buv + root) / qv
                        return [a + t * c for a, c in zip(u, v)]
                for t in _LAMBDA_SEARCH:
                    if qu + 2 * t * buv + t * t * qv == 0:
                        return [a + t * c for a, c in zip(u, v)]
        raise NoRationalIsotropicVector(
            "no rational isotropic vector found; base field not quadratically closed enough"
        )

    basis = [[Fraction(1 if i == j else 0) for j in range(nn)] for i in range(nn)]
    vs, ws = [], []
    while basis:
        v = find_isotropic(basis)
        w = None
        for cand in basis:
            if bil(v, cand) != 0:
                w = cand
                break
        if w is None:
            raise ValueError("gram is degenerate")
        scale = Fraction(1) / bil(v, w)
        w = [scale * x for x in w]
        qw = bil(w, w)
        w = [x - qw / 2 * y for x, y in zip(w, v)]
        vs.append(v)
        ws.append(w)
        # orthogonal complement of (v, w) inside the current span
        rows = [[bil(v, u) for u in basis], [bil(w, u) for u in basis]]
        _, kernel = solve_rational(rows, [])
        basis = [
            [sum(k[t] * basis[t][i] for t in range(len(basis))) for i in range(nn)]
            for k in kernel
        ]
    cols = vs + ws
    p = Mat(
        ring,
        [[ring.const(cols[j][i]) for j in range(len(cols))] for i in range(nn)],
    )
    # defining identity, asserted rather than trusted
    target = Mat.from_blocks(
        [
            [Mat.zeros(ring, nn // 2, nn // 2), Mat.identity(ring, nn // 2)],
            [Mat.identity(ring, nn // 2), Mat.zeros(ring, nn // 2, nn // 2)],
        ]
    )
    if p.transpose() * gram * p != target:
        raise RingError("hyperbolic normalization failed its defining identity")
    return p


def _isqrt_exact(k):
    from math import isqrt

    if k < 0:
        return None
    r = isqrt(k)
    return r if r * r == k else None

"""Exact linear algebra over polynomial rings.

Matrices are dense lists of :class:`~strucmaps.ring.Poly` entries.  The
heavy lifting is fraction-free (Bareiss) elimination for determinants and
rank, a recursive-expansion pfaffian, exterior powers via minors, and the
graded lifting solver ``solve_linear_graded`` that every cycle-lifting
computation in the package goes through.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .ring import ExactDivisionError, Poly, RingError


class NoSolution(RingError):
    """A linear system has no solution in the requested degree range."""


class Mat:
    """A matrix of Poly entries over a fixed ring."""

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring, rows):
        self.ring = ring
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged rows")
            for x in r:
                if not isinstance(x, Poly) or x.ring != ring:
                    raise ValueError("entry not a Poly over the matrix ring")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        z = ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero(), ring.one()
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_scalars(cls, ring, rows):
        return cls(ring, [[ring.const(x) for x in r] for r in rows])

    @classmethod
    def column(cls, ring, entries):
        return cls(ring, [[e] for e in entries])

    @classmethod
    def row_vector(cls, ring, entries):
        return cls(ring, [list(entries)])

    @classmethod
    def from_blocks(cls, blocks):
        """Assemble from a 2D list of Mat blocks with consistent shapes."""
        ring = blocks[0][0].ring
        rows = []
        for brow in blocks:
            h = brow[0].nrows
            for b in brow:
                if b.nrows != h:
                    raise ValueError("inconsistent block heights")
            for i in range(h):
                rows.append([x for b in brow for x in b.rows[i]])
        return cls(ring, rows)

    # -- basics ----------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        return [x for r in self.rows for x in r]

    def column_entries(self, j):
        return [self.rows[i][j] for i in range(self.nrows)]

    def is_zero(self):
        return all(x.is_zero() for r in self.rows for x in r)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and all(
                self.rows[i][j] == other.rows[i][j]
                for i in range(self.nrows)
                for j in range(self.ncols)
            )
        )

    def __repr__(self):
        return "Mat(%dx%d over %r)" % (self.nrows, self.ncols, self.ring)

    def transpose(self):
        return Mat(self.ring, [list(col) for col in zip(*self.rows)])

    def __add__(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch")
        return Mat(
            self.ring,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return Mat(self.ring, [[x * c for x in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise ValueError(
                    "shape mismatch %dx%d * %dx%d"
                    % (self.nrows, self.ncols, other.nrows, other.ncols)
                )
            z = self.ring.zero()
            out = []
            ocols = other.transpose().rows
            for r in self.rows:
                orow = []
                for c in ocols:
                    s = z
                    for a, b in zip(r, c):
                        if a.terms and b.terms:
                            s = s + a * b
                    orow.append(s)
                out.append(orow)
            return Mat(self.ring, out)
        return self.scale(other)

    def map(self, fn):
        return Mat(self.ring, [[fn(x) for x in r] for r in self.rows])

    def substitute(self, mapping, ring=None):
        out_ring = ring
        rows = []
        for r in self.rows:
            row = [x.substitute(mapping, ring) for x in r]
            rows.append(row)
            if out_ring is None and row:
                out_ring = row[0].ring
        return Mat(out_ring or self.ring, rows)

    def transfer(self, ring):
        return Mat(ring, [[x.transfer(ring) for x in r] for r in self.rows])

    def submatrix(self, rows, cols):
        return Mat(self.ring, [[self.rows[i][j] for j in cols] for i in rows])

    # -- determinants and friends ---------------------------------------

    def det(self):
        """Fraction-free Bareiss determinant (exact)."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of non-square matrix")
        n = self.nrows
        if n == 0:
            return self.ring.one()
        a = [row[:] for row in self.rows]
        sign = 1
        prev = self.ring.one()
        for k in range(n - 1):
            if a[k][k].is_zero():
                for i in range(k + 1, n):
                    if not a[i][k].is_zero():
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return self.ring.zero()
            pivot = a[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = a[i][j] * pivot - a[i][k] * a[k][j]
                    a[i][j] = num.exact_div(prev)
                a[i][k] = self.ring.zero()
            prev = pivot
        d = a[n - 1][n - 1]
        return d if sign > 0 else -d

    def minor(self, rows, cols):
        return self.submatrix(rows, cols).det()

    def rank(self):
        """Rank over the fraction field, via fraction-free elimination."""
        a = [row[:] for row in self.rows]
        nr, nc = self.nrows, self.ncols
        r = 0
        prev = self.ring.one()
        for c in range(nc):
            piv = None
            for i in range(r, nr):
                if not a[i][c].is_zero():
                    piv = i
                    break
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            pivot = a[r][c]
            for i in range(r + 1, nr):
                for j in range(c + 1, nc):
                    a[i][j] = (a[i][j] * pivot - a[i][c] * a[r][j]).exact_div(prev)
                a[i][c] = self.ring.zero()
            prev = pivot
            r += 1
            if r == nr:
                break
        return r

    def pfaffian(self, subset=None):
        """Pfaffian of a skew-symmetric (sub)matrix by recursive expansion.

        Sign convention: Pf([[0, a], [-a, 0]]) = a.
        """
        if self.nrows != self.ncols:
            raise ValueError("pfaffian of non-square matrix")
        idx = list(range(self.nrows)) if subset is None else sorted(subset)
        if len(idx) % 2:
            raise ValueError("pfaffian needs an even-size index subset")
        for i in idx:
            for j in idx:
                if not (self.rows[i][j] + self.rows[j][i]).is_zero():
                    raise ValueError("matrix is not skew-symmetric")
                if i == j and not self.rows[i][j].is_zero():
                    raise ValueError("nonzero diagonal in skew matrix")
        return self._pf(tuple(idx))

    def _pf(self, idx):
        if not idx:
            return self.ring.one()
        if len(idx) == 2:
            return self.rows[idx[0]][idx[1]]
        total = self.ring.zero()
        i0 = idx[0]
        rest = idx[1:]
        for pos, j in enumerate(rest):
            a = self.rows[i0][j]
            if a.is_zero():
                continue
            sub = rest[:pos] + rest[pos + 1 :]
            term = a * self._pf(sub)
            total = total + term if pos % 2 == 0 else total - term
        return total

    def wedge_power(self, k):
        """Exterior power: rows/cols indexed by sorted k-subsets (lex order)."""
        row_sets = list(combinations(range(self.nrows), k))
        col_sets = list(combinations(range(self.ncols), k))
        return Mat(
            self.ring,
            [[self.minor(rs, cs) for cs in col_sets] for rs in row_sets],
        )


# -- exact rational elimination ----------------------------------------


def rref(rows):
    """Reduced row echelon form of a list of Fraction rows.

    Returns (rref rows, pivot column indices).  Input is not modified.
    """
    a = [list(map(Fraction, r)) for r in rows]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = Fraction(1) / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return a, pivots


def solve_rational(a_rows, rhs_cols):
    """Solve A·x = b over Q for several right-hand sides at once.

    ``a_rows``: list of Fraction rows; ``rhs_cols``: list of right-hand-side
    vectors.  Returns (solutions, kernel_basis) where ``solutions`` has one
    entry per rhs (``None`` if inconsistent) and the particular solutions
    take value 0 on all free columns; kernel basis vectors have value 1 on
    their own free column.  Fully deterministic.
    """
    nr = len(a_rows)
    nc = len(a_rows[0]) if nr else 0
    nrhs = len(rhs_cols)
    aug = [list(a_rows[i]) + [Fraction(col[i]) for col in rhs_cols] for i in range(nr)]
    if nr == 0:
        aug = []
    red, pivots = rref(aug) if nr else ([], [])
    bad = set()
    for row in red:
        if all(x == 0 for x in row[:nc]):
            for k in range(nrhs):
                if row[nc + k] != 0:
                    bad.add(k)
    pivots = [p for p in pivots if p < nc]
    free = [c for c in range(nc) if c not in pivots]
    sols = []
    for k in range(nrhs):
        if k in bad:
            sols.append(None)
            continue
        x = [Fraction(0)] * nc
        for r, p in enumerate(pivots):
            x[p] = red[r][nc + k]
        sols.append(x)
    kernel = []
    for f in free:
        v = [Fraction(0)] * nc
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        kernel.append(v)
    return sols, kernel


# -- the graded lifting solver ------------------------------------------


def _w0_split(ring, exps):
    """Split an exponent vector into (weight-0 part, positive-weight part)."""
    zero = [0] * ring.nvars
    pos = [0] * ring.nvars
    for i, e in enumerate(exps):
        if e:
            if ring.weights[i] == 0:
                zero[i] = e
            else:
                pos[i] = e
    return tuple(zero), tuple(pos)


def _merge(e1, e2):
    return tuple(a + b for a, b in zip(e1, e2))


def candidate_monomials(ring, degree, rhs_polys, allowed=None):
    """Exponent vectors available to a lift entry of the given weighted degree.

    Positive-weight variables contribute every monomial of that weighted
    degree; weight-0 variables only contribute the weight-0 monomial parts
    that actually occur in the right-hand side (plus 1), since a matrix
    without weight-0 entries cannot mix them.
    """
    pos_part = ring.monomials_of_weight(degree, allowed)
    w0_parts = {(0,) * ring.nvars}
    for p in rhs_polys:
        for exps in p.terms:
            z, _ = _w0_split(ring, exps)
            w0_parts.add(z)
    return sorted(
        {_merge(z, m) for z in w0_parts for m in pos_part},
        key=ring.order_key,
        reverse=True,
    )


def infer_degrees(a, b_col):
    """Forced homogeneous degree of each unknown in A·x = b.

    Works from any nonzero entry of A in the column together with the
    matching rhs entry; consistency is not re-checked here (the solver
    verifies A·x = b exactly afterwards).  Columns whose degree cannot be
    inferred (zero column, or zero rhs rows) get None and are solved over
    the kernel-candidate degrees supplied by the caller.
    """
    degs = []
    b_deg = {}
    for i, p in enumerate(b_col):
        if not p.is_zero():
            b_deg[i] = p.degree()
    for j in range(a.ncols):
        d = None
        for i in range(a.nrows):
            aij = a.rows[i][j]
            if aij.is_zero() or i not in b_deg:
                continue
            d = b_deg[i] - aij.degree()
            break
        degs.append(d)
    return degs


def solve_linear_graded(a, b, degrees=None, allowed=None):
    """Exact graded solve of A·x = b over a polynomial ring.

    ``a`` is a Mat, ``b`` a list of Poly (length a.nrows), ``degrees`` a
    list of forced weighted degrees for the unknowns (inferred from the
    grading when omitted; a None entry means "same degree as inferred from
    the kernel column").  Each unknown is expanded over its candidate
    monomials, the coefficient equations are solved exactly over Q, and
    the result is returned as ``(x, kernel)``:

    * ``x``: list of Poly with A·x = b exactly, value 0 on all free
      coordinates (deterministic canonical lift);
    * ``kernel``: list of Poly vectors spanning the homogeneous kernel of A
      in the same candidate space.

    Raises NoSolution if b is not in the image within the candidate space.
    """
    ring = a.ring
    if len(b) != a.nrows:
        raise ValueError("rhs length mismatch")
    if degrees is None:
        degrees = infer_degrees(a, b)
    if len(degrees) != a.ncols:
        raise ValueError("degrees length mismatch")
    cand = []
    for j, d in enumerate(degrees):
        if d is None or d < 0:
            cand.append([])
        else:
            cand.append(candidate_monomials(ring, d, list(b) + a.entries(), allowed))
    unknowns = [(j, m) for j in range(a.ncols) for m in cand[j]]
    index = {u: k for k, u in enumerate(unknowns)}
    # coefficient rows indexed by (equation row, result monomial)
    rows_map = {}
    for i in range(a.nrows):
        for j in range(a.ncols):
            aij = a.rows[i][j]
            if aij.is_zero():
                continue
            for ae, ac in aij.terms.items():
                for m in cand[j]:
                    tgt = (i, _merge(ae, m))
                    row = rows_map.setdefault(tgt, {})
                    k = index[(j, m)]
                    row[k] = row.get(k, Fraction(0)) + ac
    for i, p in enumerate(b):
        for e in p.terms:
            rows_map.setdefault((i, e), {})
    targets = sorted(rows_map)
    nunk = len(unknowns)
    a_rows = []
    rhs = []
    for tgt in targets:
        row = rows_map[tgt]
        a_rows.append([row.get(k, Fraction(0)) for k in range(nunk)])
        i, e = tgt
        rhs.append(b[i].terms.get(e, Fraction(0)))
    if not a_rows:
        a_rows = [[Fraction(0)] * nunk]
        rhs = [Fraction(0)]
    sols, kernel = solve_rational(a_rows, [rhs])
    if sols[0] is None:
        raise NoSolution("rhs not in the image at the forced degrees")

    def unpack(vec):
        polys = [ring.zero() for _ in range(a.ncols)]
        for k, (j, m) in enumerate(unknowns):
            if vec[k]:
                polys[j] = polys[j] + ring.monomial(m, vec[k])
        return polys

    x = unpack(sols[0])
    ker = [unpack(v) for v in kernel]
    # exact re-verification: the solver must never return an approximate lift
    for i in range(a.nrows):
        s = ring.zero()
        for j in range(a.ncols):
            s = s + a.rows[i][j] * x[j]
        if s != b[i]:
            raise NoSolution("internal check failed: A·x != b")
    return x, ker


def mat_vec(a, x):
    """A·x for a Mat and a list of Poly."""
    out = []
    for r in a.rows:
        s = a.ring.zero()
        for aij, xj in zip(r, x):
            if aij.terms and xj.terms:
                s = s + aij * xj
        out.append(s)
    return out

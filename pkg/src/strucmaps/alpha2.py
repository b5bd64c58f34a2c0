"""The second family of higher structure maps: multiplication on F.

Comparing a length-four resolution F of a six-generated ideal with the
Koszul complex on the ideal generators produces a graded multiplicative
structure on F.  Four layers of it are computed here:

  w61 : Lambda^2 F1 -> F2    lift through d2 of the Koszul comparison
                             cycle d1(f_j) f_i - d1(f_i) f_j
  w11 : Lambda^4 F1 -> R     the four-form obtained by pairing two w61
                             values under the hyperbolic form on F2
  w62 : Lambda^5 F1 -> F2    lift through d2 of the signed w11-expansion
  w12 : Lambda^6 F1 (x) F1 -> R   composite of w62 and w61 through the
                             hyperbolic form

On the split complex every lift has a five-dimensional ambiguity.  The
first-layer ambiguities are the 75 coefficients t^k_{i,j} of hatted
generators; demanding that the induced four-form is alternating (so that
w11 is well defined and the products of the hyperbolic basis vectors
stay isotropic) cuts them down to 20 independent parameters b^k_{i,j}
indexed by triples k < i < j.  The second-layer ambiguities are 30
coefficients c^k_m; the four-argument product relation (palmer_check)
reduces them to the single free parameter c1_1, with every other c
eliminated into a pfaffian-type polynomial in the b's.

On the pfaffian-section complex the grading makes both lifts unique, so
the maps are canonical and carry no defect parameters.
"""

from fractions import Fraction
from itertools import combinations

from .alpha1 import (
    LiftFailure,
    _lift,
    _pfaffian_pairs,
    _unit_vec,
    _vec_add,
    _vec_is_zero,
    _zero_vec,
)
from .complexes import FreeComplex
from .linalg import mat_vec

__all__ = [
    "B_TRIPLES",
    "C_PAIRS",
    "StructureMapsAlpha2",
    "b_name",
    "b_value",
    "build_alpha2",
    "c_name",
    "compute_multiplication",
    "derive_defect_relations",
    "derive_multiplication_constraints",
    "palmer_check",
    "pf_minor",
    "pf_mixed",
    "wedge_sort",
]


# -- exterior-algebra bookkeeping ---------------------------------------


def wedge_sort(indices):
    """Sort a tuple of basis indices, tracking the wedge sign.

    Returns (sign, sorted_tuple); the sign is 0 when an index repeats.
    """
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return 0, tuple(idx)
    return sign, tuple(idx)


def _dual_slot(v):
    """Index of the Q-dual basis vector of G (eh_k at k-1 pairs with e_k at 4+k)."""
    return v + 5 if v < 5 else v - 5


def _q_dot(ring, u, v):
    """Hyperbolic pairing of two F2 vectors: Q(eh_k, e_k) = 1."""
    out = ring.zero()
    for k in range(5):
        out = out + u[k] * v[5 + k] + u[5 + k] * v[k]
    return out


# -- defect parameters --------------------------------------------------

B_TRIPLES = list(combinations(range(1, 7), 3))
C_PAIRS = [(k, m) for k in range(1, 6) for m in range(1, 7)]


def b_name(k, i, j):
    """Name of the independent first-layer parameter b^k_{i,j}, k < i < j."""
    return "b%d_%d%d" % (k, i, j)


def c_name(k, m):
    """Name of the raw second-layer parameter c^k_m (hatted slot k, wedge
    missing index m)."""
    return "c%d_%d" % (k, m)


def b_value(ring, k, i, j):
    """The first-layer coefficient b^k_{i,j} through the 20 independents.

    The three indices behave as an alternating triple: the value vanishes
    when any two coincide, is antisymmetric in the lower pair (i, j), and
    for triples not containing 6 satisfies the signed permutation rule
    that moves the upper index.  For a lower 6 only the pair rule
    b^k_{i,6} = -b^i_{k,6} applies.
    """
    if i == j or k == i or k == j:
        return ring.zero()
    sign = 1
    if i > j:
        i, j, sign = j, i, -sign
    if j == 6:
        if k < i:
            return ring.var(b_name(k, i, 6)) * sign
        return ring.var(b_name(i, k, 6)) * (-sign)
    s2, srt = wedge_sort((k, i, j))
    return ring.var(b_name(*srt)) * (sign * s2)


def pf_minor(ring, i, j):
    """Pfaffian of the upper-index-i parameters on the complement of {i, j}."""
    elems = [t for t in range(1, 7) if t not in (i, j)]
    out = ring.zero()
    for sgn, (a, b), (c, d) in _pfaffian_pairs(elems):
        out = out + b_value(ring, i, a, b) * b_value(ring, i, c, d) * sgn
    return out


def pf_mixed(ring, i, j):
    """Polarized pfaffian mixing upper indices i and j on comp{i, j}."""
    elems = [t for t in range(1, 7) if t not in (i, j)]
    out = ring.zero()
    for sgn, p1, p2 in _pfaffian_pairs(elems):
        term = (
            b_value(ring, i, *p1) * b_value(ring, j, *p2)
            + b_value(ring, i, *p2) * b_value(ring, j, *p1)
        )
        out = out + term * sgn
    return out


# -- first layer: pair products and the four-form -----------------------


def koszul_cycle(c, i, j):
    """The comparison cycle d1(f_j) f_i - d1(f_i) f_j as an F1 vector."""
    g = c.d[1].rows[0]
    vec = _zero_vec(c.ring, c.n)
    vec[i - 1] = vec[i - 1] + g[j - 1]
    vec[j - 1] = vec[j - 1] - g[i - 1]
    return vec


def _assert_hat_kernel(cx, what):
    """Generic defect parametrization needs d2(eh_k) = 0 (split convention)."""
    for k in range(5):
        if not _vec_is_zero(cx.d[2].column_entries(k)):
            raise LiftFailure(
                "%s: hatted generators are not d2-cycles; generic defect "
                "parameters are only available on the split complex" % what
            )


def _multiplication(cx, with_defects):
    """Pair products w61 and the four-form w11 on the given complex."""
    ring = cx.ring
    w61 = {}
    for i, j in combinations(range(1, 7), 2):
        q = koszul_cycle(cx, i, j)
        x, _ = _lift(
            cx.d[2], q, cx.degrees[1], cx.degrees[2],
            "w61(f%d^f%d)" % (i, j),
            fallback=cx.degrees[1][i - 1] + cx.degrees[1][j - 1],
        )
        if with_defects:
            for k in range(1, 6):
                x[k - 1] = x[k - 1] + b_value(ring, k, i, j)
        if mat_vec(cx.d[2], x) != q:
            raise LiftFailure("w61(f%d^f%d): lift does not reproduce the cycle" % (i, j))
        w61[(i, j)] = x

    w11 = {}
    for quad in combinations(range(1, 7), 4):
        a, b, c, d = quad
        w11[quad] = _q_dot(ring, w61[(a, b)], w61[(c, d)])

    # the four-form must be alternating: every splitting of every ordered
    # four-tuple has to reproduce the same value, and overlapping pairs
    # have to pair to zero.
    pairs = list(combinations(range(1, 7), 2))
    for a in range(len(pairs)):
        for b in range(a, len(pairs)):
            p1, p2 = pairs[a], pairs[b]
            val = _q_dot(ring, w61[p1], w61[p2])
            sgn, srt = wedge_sort(p1 + p2)
            want = ring.zero() if sgn == 0 else w11[srt] * sgn
            if val != want:
                raise LiftFailure(
                    "four-form not alternating at %r * %r" % (p1, p2)
                )
    return w61, w11


def compute_multiplication(c, generic=False):
    """Pair products and the induced four-form on the complex ``c``.

    With ``generic=True`` the lift ambiguity of every pair product is
    parametrized by the canonical weight-0 coefficients b^k_{i,j}
    (k < i < j, 20 of them) adjoined to the ring; the parametrization is
    validated against the alternation constraints of the four-form.  With
    ``generic=False`` the deterministic lifts are used unchanged.
    """
    if generic:
        names = [b_name(*t) for t in B_TRIPLES]
        ring = c.ring.extend(names, [0] * len(names))
        cx = FreeComplex(
            ring,
            c.n,
            {k: c.d[k].transfer(ring) for k in (1, 2, 3, 4)},
            c.labels,
            c.degrees,
            c.convention,
        )
    else:
        cx = c
    return _multiplication(cx, generic)


def derive_multiplication_constraints(c):
    """Re-derive the first-layer constraints from a raw parametrization.

    One raw weight-0 parameter t^k_{i,j} is attached to every hatted
    kernel direction of every pair lift (75 in all, split complex only).
    Alternation of the induced four-form then forces a homogeneous linear
    constraint system; the returned triple is (constraints, dimension of
    the solution space, raw parameter names).  The constraint list
    contains exactly the vanishing of the diagonal-upper coefficients,
    the symmetrized pairs with lower index 6, and the signed permutation
    rule among triples without 6 - leaving the 20 canonical independents.
    """
    names = ["t%d_%d%d" % (k, i, j) for (i, j) in combinations(range(1, 7), 2)
             for k in range(1, 6)]
    ring = c.ring.extend(names, [0] * len(names))
    cx = FreeComplex(
        ring,
        c.n,
        {k: c.d[k].transfer(ring) for k in (1, 2, 3, 4)},
        c.labels,
        c.degrees,
        c.convention,
    )
    _assert_hat_kernel(cx, "derive_multiplication_constraints")
    raw = {}
    for i, j in combinations(range(1, 7), 2):
        q = koszul_cycle(cx, i, j)
        x, _ = _lift(
            cx.d[2], q, cx.degrees[1], cx.degrees[2],
            "raw w61(f%d^f%d)" % (i, j),
            fallback=cx.degrees[1][i - 1] + cx.degrees[1][j - 1],
        )
        for k in range(1, 6):
            x[k - 1] = x[k - 1] + ring.var("t%d_%d%d" % (k, i, j))
        raw[(i, j)] = x

    constraints = []
    seen = set()
    pairs = list(combinations(range(1, 7), 2))
    for a in range(len(pairs)):
        for b in range(a, len(pairs)):
            p1, p2 = pairs[a], pairs[b]
            val = _q_dot(ring, raw[p1], raw[p2])
            sgn, srt = wedge_sort(p1 + p2)
            if sgn != 0:
                canon = (srt[0], srt[1]), (srt[2], srt[3])
                if (p1, p2) == canon:
                    continue
                val = val - _q_dot(ring, raw[canon[0]], raw[canon[1]]) * sgn
            if val.is_zero():
                continue
            key = val if next(iter(sorted(val.terms.items())))[1] > 0 else -val
            if key not in seen:
                seen.add(key)
                constraints.append(key)

    # rank of the homogeneous system over the rationals
    col = {ring.index(nm): p for p, nm in enumerate(names)}
    rows = []
    for poly in constraints:
        row = [Fraction(0)] * len(names)
        for exps, coef in poly.terms.items():
            live = [(idx, e) for idx, e in enumerate(exps) if e]
            if len(live) != 1 or live[0][1] != 1 or live[0][0] not in col:
                raise LiftFailure("constraint is not linear in the raw parameters")
            row[col[live[0][0]]] += coef
        rows.append(row)
    rank = _rational_rank(rows)
    return constraints, len(names) - rank, names


def _rational_rank(rows):
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for j in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][j]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = Fraction(1) / rows[rank][j]
        rows[rank] = [v * inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][j]:
                f = rows[i][j]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[rank])]
        rank += 1
    return rank


# -- the container ------------------------------------------------------


class StructureMapsAlpha2:
    """The four multiplication layers on a (1, 6, 10, 6, 1) resolution."""

    __slots__ = ("complex", "ring", "defects", "elimination",
                 "w61", "w11", "w62", "w12")

    def __init__(self, complex_, ring, defects):
        self.complex = complex_
        self.ring = ring
        self.defects = list(defects)
        self.elimination = {}
        self.w61 = {}
        self.w11 = {}
        self.w62 = {}
        self.w12 = []

    # -- source expansions ---------------------------------------------

    def q_6_1(self, i, j):
        """Koszul comparison cycle of the pair (f_i, f_j)."""
        sgn, (a, b) = wedge_sort((i, j))[0], tuple(sorted((i, j)))
        if sgn == 0:
            return _zero_vec(self.ring, self.complex.n)
        vec = koszul_cycle(self.complex, a, b)
        return vec if sgn > 0 else [-p for p in vec]

    def q_6_2(self, wedge):
        """Signed four-form expansion of a five-wedge, as an F1 vector.

        For an ascending wedge (i1 .. i5) the value is
        sum_pos (-1)^pos w11(wedge minus position) * f_(position).
        """
        sgn, srt = wedge_sort(tuple(wedge))
        vec = _zero_vec(self.ring, self.complex.n)
        if sgn == 0:
            return vec
        for pos in range(5):
            rest = srt[:pos] + srt[pos + 1:]
            coeff = self.w11[rest] * (sgn if pos % 2 == 0 else -sgn)
            vec[srt[pos] - 1] = vec[srt[pos] - 1] + coeff
        return vec

    # -- serialization ---------------------------------------------------

    def to_json(self):
        def wl(t):
            return "^".join("f%d" % i for i in t)

        def vec(v):
            return [str(p) for p in v]

        full = tuple(range(1, 7))
        return {
            "family": "alpha2",
            "n": self.complex.n,
            "ring": list(self.ring.names),
            "defects": list(self.defects),
            "elimination": {k: str(v) for k, v in sorted(self.elimination.items())},
            "w61": {wl(p): vec(v) for p, v in sorted(self.w61.items())},
            "w11": {wl(q): str(v) for q, v in sorted(self.w11.items())},
            "w62": {
                wl(tuple(t for t in full if t != m)): vec(v)
                for m, v in sorted(self.w62.items())
            },
            "w12": vec(self.w12),
        }


# -- the four-argument product relation ---------------------------------


def palmer_check(c, maps, v1, v2, xs):
    """Evaluate both sides of the four-argument product relation.

    ``v1``/``v2`` are G basis indices (0..4 the hatted, 5..9 the
    unhatted generators), ``xs`` a tuple of four F1 basis indices.  The
    relation says

      Q(v1, w62(d2(v2) ^ xs)) + Q(v2, w62(d2(v1) ^ xs))
        = w11(xs) Q(v1, v2)
          - sum over the six ordered splittings of the four arguments
            into two pairs of
            sgn * Q(v1, w61(x_s1 ^ x_s2)) Q(v2, w61(x_s3 ^ x_s4))

    Returns (lhs, rhs, lhs == rhs).  The maps must have been built on
    ``c`` (or on its defect-ring transfer, which is then used).
    """
    cx = maps.complex
    ring = maps.ring
    xs = tuple(xs)

    def side(va, vb):
        col = cx.d[2].column_entries(vb)
        slot = _dual_slot(va)
        total = ring.zero()
        for l in range(1, 7):
            coef = col[l - 1]
            if coef.is_zero():
                continue
            sgn, srt = wedge_sort((l,) + xs)
            if sgn == 0:
                continue
            missing = next(t for t in range(1, 7) if t not in srt)
            total = total + coef * maps.w62[missing][slot] * sgn
        return total

    lhs = side(v1, v2) + side(v2, v1)

    sgn_x, srt_x = wedge_sort(xs)
    four = ring.zero() if sgn_x == 0 else maps.w11[srt_x] * sgn_x
    qv = ring.one() if _dual_slot(v1) == v2 else ring.zero()
    rhs = four * qv

    def triple(v, a, b):
        sgn, pair = wedge_sort((a, b))
        if sgn == 0:
            return ring.zero()
        return maps.w61[pair][_dual_slot(v)] * sgn

    for first in combinations(range(4), 2):
        second = tuple(t for t in range(4) if t not in first)
        s, _ = wedge_sort(first + second)
        t1 = triple(v1, xs[first[0]], xs[first[1]])
        if t1.is_zero():
            continue
        t2 = triple(v2, xs[second[0]], xs[second[1]])
        if t2.is_zero():
            continue
        rhs = rhs - t1 * t2 * s
    return lhs, rhs, lhs == rhs


def derive_defect_relations(c, maps):
    """Solve the four-argument relations for the second-layer parameters.

    All basis instances of palmer_check are assembled into a linear
    system over the raw coefficients c^k_m; the system is solved with
    c1_1 kept as the preferred free parameter.  Returns (substitution,
    free_names) where the substitution eliminates every pivot c into a
    polynomial in the b's and the free parameters.  Instances without
    c-content are required to hold identically.
    """
    ring = maps.ring
    cols = [c_name(k, m) for (k, m) in C_PAIRS if (k, m) != (1, 1)]
    cols.append(c_name(1, 1))
    col_of = {}
    for p, nm in enumerate(cols):
        col_of[ring.index(nm)] = p

    rows = []
    seen = set()
    for v1 in range(10):
        for v2 in range(v1, 10):
            for xs in combinations(range(1, 7), 4):
                lhs, rhs, _ = palmer_check(c, maps, v1, v2, xs)
                diff = lhs - rhs
                if diff.is_zero() or diff in seen:
                    continue
                seen.add(diff)
                row = [Fraction(0)] * len(cols)
                rem = ring.zero()
                for exps, coef in diff.terms.items():
                    live = [(idx, e) for idx, e in enumerate(exps)
                            if e and idx in col_of]
                    if not live:
                        rem = rem + ring.monomial(exps, coef)
                    elif len(live) == 1 and live[0][1] == 1 and sum(
                        e for idx, e in enumerate(exps) if e and idx not in col_of
                    ) == 0:
                        row[col_of[live[0][0]]] += coef
                    else:
                        raise LiftFailure(
                            "relation is not linear in the c parameters"
                        )
                if not any(row):
                    raise LiftFailure(
                        "parameter-free relation fails identically: "
                        "v1=%d v2=%d xs=%r (%s)" % (v1, v2, xs, rem)
                    )
                rows.append((row, rem))

    # gaussian elimination, eliminating the earliest columns first so the
    # trailing c1_1 survives as the free parameter
    pivots = {}
    reduced = []
    for j in range(len(cols)):
        found = None
        for idx, (row, rem) in enumerate(rows):
            if row[j] and all(row[jj] == 0 for jj in pivots):
                found = idx
                break
        if found is None:
            continue
        row, rem = rows.pop(found)
        inv = Fraction(1) / row[j]
        row = [v * inv for v in row]
        rem = rem * inv
        for rr, (orow, orem) in enumerate(rows):
            if orow[j]:
                f = orow[j]
                rows[rr] = (
                    [v - f * w for v, w in zip(orow, row)],
                    orem - rem * f,
                )
        for done_j, (drow, drem) in list(pivots.items()):
            if drow[j]:
                f = drow[j]
                pivots[done_j] = (
                    [v - f * w for v, w in zip(drow, row)],
                    drem - rem * f,
                )
        pivots[j] = (row, rem)
    for row, rem in rows:
        if any(row):
            raise LiftFailure("elimination left an unreduced relation")
        if not rem.is_zero():
            raise LiftFailure("the relation system is inconsistent: %s" % rem)

    free = [cols[j] for j in range(len(cols)) if j not in pivots]
    subs = {}
    for j, (row, rem) in pivots.items():
        expr = -rem
        for jj, coef in enumerate(row):
            if jj != j and coef:
                expr = expr - ring.var(cols[jj]) * coef
        subs[cols[j]] = expr
    return subs, free


# -- assembly -----------------------------------------------------------


def _compose_w12(maps):
    """Top layer: contract w62 against w61 through the hyperbolic form.

    The six-wedge against f_l expands as
    sum_i (-1)^i (wedge missing i) (x) (f_l ^ f_i), so
    w12(f_l) = sum_{i != l} (-1)^i Q(w62(missing i), w61(f_l ^ f_i)).
    The five nonzero contraction channels contribute equally, so the sum
    is divided by five to report the value of a single channel.
    """
    ring = maps.ring
    out = []
    for l in range(1, 7):
        total = ring.zero()
        for i in range(1, 7):
            if i == l:
                continue
            sgn, pair = wedge_sort((l, i))
            term = _q_dot(ring, maps.w62[i], maps.w61[pair])
            total = total + term * (sgn * (-1) ** i)
        out.append(total * Fraction(1, 5))
    return out


def build_alpha2(c, defects=True):
    """Compute the multiplication layers on ``c``.

    With ``defects=True`` (split complex) the ring is extended by the 20
    canonical first-layer parameters and the 30 raw second-layer
    parameters; the four-argument relations then eliminate all second
    layer parameters but c1_1, leaving 21 independents.  With
    ``defects=False`` the deterministic lifts are used unchanged.
    """
    if defects:
        names = [b_name(*t) for t in B_TRIPLES]
        names += [c_name(k, m) for (k, m) in C_PAIRS]
        ring = c.ring.extend(names, [0] * len(names))
        cx = FreeComplex(
            ring,
            c.n,
            {k: c.d[k].transfer(ring) for k in (1, 2, 3, 4)},
            c.labels,
            c.degrees,
            c.convention,
        )
        _assert_hat_kernel(cx, "build_alpha2")
    else:
        ring = c.ring
        cx = c

    maps = StructureMapsAlpha2(cx, ring, [])
    maps.w61, maps.w11 = _multiplication(cx, defects)

    total_deg = sum(cx.degrees[1]) - cx.degrees[4][0]
    for missing in range(1, 7):
        wedge = tuple(t for t in range(1, 7) if t != missing)
        q = maps.q_6_2(wedge)
        x, _ = _lift(
            cx.d[2], q, cx.degrees[1], cx.degrees[2],
            "w62(missing f%d)" % missing,
            fallback=total_deg - cx.degrees[1][missing - 1],
        )
        if defects:
            for k in range(1, 6):
                x[k - 1] = x[k - 1] + ring.var(c_name(k, missing))
        if mat_vec(cx.d[2], x) != q:
            raise LiftFailure("w62(missing f%d): lift does not reproduce the "
                              "expansion" % missing)
        maps.w62[missing] = x

    if defects:
        subs, free = derive_defect_relations(cx, maps)
        if free != [c_name(1, 1)]:
            raise LiftFailure("unexpected free second-layer parameters: %r" % free)
        maps.elimination = subs
        maps.w62 = {
            m: [p.substitute(subs, ring) for p in v] for m, v in maps.w62.items()
        }
        maps.defects = [b_name(*t) for t in B_TRIPLES] + [c_name(1, 1)]

    maps.w12 = _compose_w12(maps)
    return maps

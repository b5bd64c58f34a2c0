"""Assembly of structure maps into minuscule-representation coordinates.

The values of the second structure-map family on a (1, 6, 10, 6, 1)
resolution -- the first differential, the fifteen four-subset products
and the six dual-column entries -- fit into a single vector with one
coordinate per weight of the 27-dimensional minuscule representation of
E6, and that vector satisfies every Plucker quadric of the
highest-weight orbit.  On the split complex the two families together
fill an invertible 27 x 27 matrix whose generator rows restrict to the
first family and whose unit column restricts to the second; the matrix
is the permutation form at zero defects transported by a unipotent
factor on each side, so its determinant is a defect-independent
rational.  Finally, for a positively graded complex the four-subset
values rearrange into a 5 x 5 skew matrix whose submaximal pfaffians
together with one distinguished generator present the resolved ideal;
the presentation is certified by exact degreewise span comparison.
"""

from fractions import Fraction
from itertools import combinations

from .complexes import f_labels, g_labels
from .liecomb import DynkinGraph, build_minuscule_rep, check_plucker, plucker_ideal_basis
from .linalg import Mat
from .ring import Ring
from .spinor import odd_subsets


class AssemblyError(RuntimeError):
    """A self-check of the assembly failed."""


class ExtractionFailed(RuntimeError):
    """No distinguished generator yields a verified skew presentation."""


_CACHE = {}


def e6_rep():
    """The 27-dimensional minuscule representation of E6, built once."""
    rep = _CACHE.get("rep")
    if rep is None:
        rep = _CACHE["rep"] = build_minuscule_rep(DynkinGraph.e(6), 1)
    return rep


def plucker_quadrics():
    """The 27 orbit quadrics of the representation, built once."""
    qs = _CACHE.get("quadrics")
    if qs is None:
        qs = _CACHE["quadrics"] = plucker_ideal_basis(e6_rep())
    return qs


# -- weight-slot layout -------------------------------------------------


class SlotLayout:
    """Positions of the labeled display bases among the 27 weights.

    ``gen``/``quad``/``dual`` place the row-side basis (generators f_l,
    four-subsets, dual generators) and ``u``/``g`` the column-side basis
    (odd spinor subsets and the hyperbolic G-basis); ``g_sign`` is the
    basis gauge of the G-columns relative to the representation gauge.
    """

    __slots__ = ("gen", "quad", "dual", "u", "g", "g_sign")

    def __init__(self, gen, quad, dual, u, g, g_sign):
        self.gen = dict(gen)
        self.quad = dict(quad)
        self.dual = dict(dual)
        self.u = dict(u)
        self.g = dict(g)
        self.g_sign = dict(g_sign)


# Gauge of the hyperbolic G-columns against the representation basis;
# pinned by the requirement that the generator rows of the assembled
# square matrix reproduce the first-family maps (re-asserted on every
# assembly).
_G_SIGN = {
    "eh1": -1, "eh2": -1, "eh3": -1, "eh4": -1, "eh5": -1,
    "e1": -1, "e2": 1, "e3": -1, "e4": 1, "e5": -1,
}


def slot_layout(rep=None):
    """Derive the display-basis slot dictionaries from the weights.

    The six node-2-degree-0 slots form a chain under the drop order and
    host the generators top-down (f6 highest); four-subset slots are
    matched through their A5-restricted weights (nodes 1,3,4,5,6), the
    sixteen odd spinor subsets through their D5-restricted weights
    (nodes 2..6), and the G-columns pair hyperbolically: eh_k sits on
    the slot of weight -lambda_k and e_k on the slot of +lambda_k.
    """
    if rep is None:
        rep = e6_rep()
        cached = _CACHE.get("layout")
        if cached is not None:
            return cached
    drops = rep.root_drops
    total = [sum(d) for d in drops]

    def a5(s):
        w = rep.weights[s]
        return (w[0], w[2], w[3], w[4], w[5])

    def d5(s):
        return tuple(rep.weights[s][1:6])

    chain0 = sorted((s for s in range(27) if drops[s][1] == 0), key=lambda s: total[s])
    chain2 = sorted((s for s in range(27) if drops[s][1] == 2), key=lambda s: total[s])
    if len(chain0) != 6 or len(chain2) != 6:
        raise AssemblyError("node-2 boundary blocks are not 6-dimensional")
    gen = {6 - r: chain0[r] for r in range(6)}
    dual = {6 - r: chain2[r] for r in range(6)}

    eps = {l: a5(gen[l]) for l in range(1, 7)}
    mid = {}
    for s in range(27):
        if drops[s][1] == 1:
            if a5(s) in mid:
                raise AssemblyError("ambiguous A5 weight in the middle block")
            mid[a5(s)] = s
    quad = {}
    for q in combinations(range(1, 7), 4):
        target = tuple(sum(eps[l][t] for l in q) for t in range(5))
        if target not in mid:
            raise AssemblyError("no middle slot matches four-subset %r" % (q,))
        quad[q] = mid[target]

    # column side: anchors u_{i} share the generator slots, and the
    # remaining odd subsets follow from the solved weight letters.
    half = Fraction(1, 2)
    sigma = [Fraction(2, 3) * sum(d5(gen[i])[t] for i in range(1, 6)) for t in range(5)]
    lam = {
        i: tuple(sigma[t] * half - d5(gen[i])[t] for t in range(5))
        for i in range(1, 6)
    }
    lvl1 = {}
    for s in range(27):
        if drops[s][0] == 1:
            lvl1[d5(s)] = s
    u = {}
    for K in odd_subsets(5):
        target = tuple(
            sigma[t] * half - sum(lam[i][t] for i in K) for t in range(5)
        )
        if target not in lvl1:
            raise AssemblyError("no spinor slot matches subset %r" % (K,))
        u[K] = lvl1[target]
    for i in range(1, 6):
        if u[(i,)] != gen[i]:
            raise AssemblyError("spinor anchor disagrees with generator slot")

    lvl2 = {}
    for s in range(27):
        if drops[s][0] == 2:
            lvl2[d5(s)] = s
    g = {}
    for k in range(1, 6):
        minus = tuple(-c for c in lam[k])
        plus = tuple(lam[k])
        if minus not in lvl2 or plus not in lvl2:
            raise AssemblyError("hyperbolic column weight missing at index %d" % k)
        g["eh%d" % k] = lvl2[minus]
        g["e%d" % k] = lvl2[plus]

    layout = SlotLayout(gen, quad, dual, u, g, _G_SIGN)
    if rep is e6_rep():
        _CACHE["layout"] = layout
    return layout


# -- the 27-coordinate vector -------------------------------------------


def _quad_label(q):
    return "^".join("f%d" % i for i in q)


class W1Vector:
    """27 polynomial coordinates in the weight order of the representation.

    The three blocks are views: ``d1_block`` collects the six generator
    slots, ``w11_block`` the fifteen four-subset slots and ``w12_block``
    the six dual slots.
    """

    __slots__ = ("ring", "coords", "layout")

    def __init__(self, ring, coords, layout=None):
        coords = list(coords)
        if len(coords) != 27:
            raise ValueError("need 27 coordinates, got %d" % len(coords))
        self.ring = ring
        self.coords = coords
        self.layout = layout if layout is not None else slot_layout()

    @property
    def d1_block(self):
        return tuple(self.coords[self.layout.gen[l]] for l in range(1, 7))

    @property
    def w11_block(self):
        return {q: self.coords[s] for q, s in sorted(self.layout.quad.items())}

    @property
    def w12_block(self):
        return tuple(self.coords[self.layout.dual[l]] for l in range(1, 7))

    def check_plucker(self):
        """(True, None) if every orbit quadric vanishes, else the witness."""
        return check_plucker(plucker_quadrics(), self.coords)

    def to_json(self):
        return {
            "coords": [str(p) for p in self.coords],
            "d1": [str(p) for p in self.d1_block],
            "w11": {_quad_label(q): str(p) for q, p in self.w11_block.items()},
            "w12": [str(p) for p in self.w12_block],
        }


def assemble_w1(hsm2):
    """Slot the second-family values of ``hsm2`` into a W1Vector."""
    ring = hsm2.ring
    layout = slot_layout()
    coords = [ring.zero()] * 27
    d1 = hsm2.complex.d[1].rows[0]
    for l in range(1, 7):
        coords[layout.gen[l]] = d1[l - 1]
    for q, s in layout.quad.items():
        coords[s] = hsm2.w11[q]
    for l in range(1, 7):
        coords[layout.dual[l]] = hsm2.w12[l - 1]
    return W1Vector(ring, coords, layout)


# -- nilpotent matrix helpers -------------------------------------------


def _zeros(ring, n):
    z = ring.zero()
    return [[z] * n for _ in range(n)]


def _mat_mul(ring, a, b):
    n = len(a)
    out = _zeros(ring, n)
    for i in range(n):
        row = a[i]
        for k in range(n):
            if row[k].is_zero():
                continue
            brow = b[k]
            aik = row[k]
            orow = out[i]
            for j in range(n):
                if not brow[j].is_zero():
                    orow[j] = orow[j] + aik * brow[j]
    return out


def _mat_is_zero(a):
    return all(p.is_zero() for row in a for p in row)


def _exp_nilpotent(ring, n):
    """exp of a nilpotent matrix, exact over the rationals."""
    size = len(n)
    out = _zeros(ring, size)
    one = ring.one()
    for i in range(size):
        out[i][i] = one
    term = n
    k = 1
    while not _mat_is_zero(term):
        c = Fraction(1)
        for j in range(2, k + 1):
            c /= j
        for i in range(size):
            for j in range(size):
                if not term[i][j].is_zero():
                    out[i][j] = out[i][j] + term[i][j] * c
        term = _mat_mul(ring, term, n)
        k += 1
        if k > size:
            raise AssemblyError("matrix is not nilpotent")
    return out


def _lowering_sum(ring, rep, terms, size=27):
    """Sum of coefficient * lowering-matrix over (matrix, coefficient) pairs."""
    n = _zeros(ring, size)
    for F, coeff in terms:
        if coeff.is_zero():
            continue
        for a in range(size):
            row = F[a]
            for b in range(size):
                if row[b]:
                    n[a][b] = n[a][b] + coeff * row[b]
    return n


def _is_scaled_variable(p):
    """(variable index, coefficient) if p = c * x for a single variable."""
    if len(p.terms) != 1:
        return None
    (exps, coef), = p.terms.items()
    if sum(exps) != 1:
        return None
    return exps.index(1), coef


# -- the 27 x 27 split matrix -------------------------------------------


def _require_split(c):
    col = c.d[4]
    ring = c.ring
    for i in range(c.n):
        want = ring.one() if i == c.n - 1 else ring.zero()
        if col.rows[i][0] != want:
            raise ValueError("square-matrix assembly needs the split complex")


def _node1_terms(rep, layout, hsm1, ring):
    """Unipotent coefficients of the column-side factor, read off the
    f6-components of the first-family values."""
    terms = []
    for J in odd_subsets(5):
        s = layout.u[J]
        beta = rep.root_drops[s]
        F = rep.root_lowering(beta)
        eta = F[s][0]
        if eta not in (1, -1):
            raise AssemblyError("spinor slot %r is not reachable by its root" % (J,))
        val = hsm1.wn1[J][5].transfer(ring)
        terms.append((F, val * eta))
    return terms


def _node2_terms(rep, layout, coords, ring):
    """Unipotent coefficients of the row-side factor from a W1 column.

    Degree-1 roots acting on the top block are forced by the middle
    coordinates; the remaining degree-1 roots and the degree-2 root are
    solved from the slot of the sixth dual coordinate.  The solved
    column is re-checked against ``coords`` in full.
    """
    pos = rep.root_system.positive_roots
    gamma = next(r for r in pos if r[1] == 2)
    acting = [r for r in pos if r[1] == 1 and r[0] == 1]
    slot_of_drop = {tuple(d): i for i, d in enumerate(rep.root_drops)}
    s19 = layout.dual[6]
    w19 = coords[s19]

    terms = []
    partner_data = []
    for r in acting:
        s = slot_of_drop[tuple(r)]
        F = rep.root_lowering(r)
        eta = F[s][0]
        val = coords[s]
        terms.append((F, val * eta))
        if val.is_zero():
            continue
        sv = _is_scaled_variable(val)
        if sv is None:
            raise ValueError(
                "square-matrix assembly needs symbolic or zero defect values"
            )
        partner_data.append((r, s, sv))

    seen = set()
    for r, s, (vi, coef) in partner_data:
        if vi in seen:
            raise ValueError("defect variables must be distinct per slot")
        seen.add(vi)
        k = tuple(gamma[i] - r[i] for i in range(6))
        F_k = rep.root_lowering(k)
        P = F_k[s19][s]
        if P not in (1, -1):
            raise AssemblyError("missing degree-2 path for root %r" % (k,))
        partner = ring.zero()
        for exps, c in w19.terms.items():
            if exps[vi]:
                reduced = list(exps)
                reduced[vi] -= 1
                partner = partner + ring.monomial(tuple(reduced), c / coef)
        terms.append((F_k, partner * Fraction(2 * P)))

    n_partial = _lowering_sum(ring, rep, terms)
    partial = _exp_nilpotent(ring, n_partial)
    resid = w19 - partial[s19][0]
    F_g = rep.root_lowering(gamma)
    eta_g = F_g[s19][0]
    if eta_g not in (1, -1):
        raise AssemblyError("degree-2 root does not reach the dual slot")
    terms.append((F_g, resid * eta_g))

    n_full = _lowering_sum(ring, rep, terms)
    a_full = _exp_nilpotent(ring, n_full)
    for i in range(27):
        if a_full[i][0] != coords[i]:
            raise AssemblyError(
                "unipotent transport does not reproduce coordinate %d" % i
            )
    return n_full


def _assert_unipotent(rep, a):
    """Unit diagonal, nonzero entries strictly drop-increasing."""
    total = [sum(d) for d in rep.root_drops]
    one = None
    for i in range(27):
        for j in range(27):
            p = a[i][j]
            if i == j:
                if one is None:
                    one = p.ring.one()
                if p != one:
                    raise AssemblyError("transport diagonal is not 1")
            elif not p.is_zero() and total[i] <= total[j]:
                raise AssemblyError("transport is not strictly triangular")


def row_display_slots(layout):
    """Weight slots of the row display basis (f, four-subsets, duals)."""
    slots = [layout.gen[l] for l in range(1, 7)]
    slots += [layout.quad[q] for q in combinations(range(1, 7), 4)]
    slots += [layout.dual[l] for l in range(1, 7)]
    return slots


def column_display_slots(layout):
    """Weight slots and signs of the column display basis (1, u_K, G)."""
    slots = [layout.gen[6]]
    signs = [1]
    for K in odd_subsets(5):
        slots.append(layout.u[K])
        signs.append(1)
    for lbl in g_labels(6):
        slots.append(layout.g[lbl])
        signs.append(layout.g_sign[lbl])
    return slots, signs


def row_labels():
    labels = list(f_labels(6))
    labels += [_quad_label(q) for q in combinations(range(1, 7), 4)]
    labels += list(f_labels(6, dual=True))
    return labels


def column_labels():
    labels = ["1"]
    labels += ["u" + "".join(str(i) for i in K) for K in odd_subsets(5)]
    labels += list(g_labels(6))
    return labels


def _m_zero(ring):
    """The permutation form of the matrix at zero defects: generator
    rows hit their spinor anchors (f6 hits the unit column) and the
    interior is the identity in display order."""
    m = _zeros(ring, 27)
    one = ring.one()
    for i in range(1, 6):
        m[i - 1][i] = one
    m[5][0] = one
    for k in range(21):
        m[6 + k][6 + k] = one
    return m


class SquareMatrixM:
    """Invertible 27 x 27 matrix joining the two structure-map families.

    Rows are labeled by the display basis of the second family and
    columns by that of the first family; ``f_row(h)`` restricts to the
    first-family maps at generator h, ``unit_column()`` to the second
    family's assembled vector, and ``det()`` is the exact determinant.
    """

    __slots__ = ("ring", "mat", "row_labels", "col_labels", "_det")

    def __init__(self, ring, mat, rows, cols, det):
        self.ring = ring
        self.mat = mat
        self.row_labels = list(rows)
        self.col_labels = list(cols)
        self._det = Fraction(det)

    def det(self):
        return self._det

    def f_row(self, h):
        return list(self.mat.rows[h - 1])

    def unit_column(self):
        return [self.mat.rows[i][0] for i in range(27)]

    def entry(self, row_label, col_label):
        i = self.row_labels.index(row_label)
        j = self.col_labels.index(col_label)
        return self.mat.rows[i][j]

    def to_json(self):
        return {
            "rows": self.row_labels,
            "cols": self.col_labels,
            "entries": [[str(p) for p in row] for row in self.mat.rows],
            "det": str(self._det),
        }


def _joint_ring(r2, r1):
    names = list(r2.names)
    weights = list(r2.weights)
    have = set(names)
    for n, w in zip(r1.names, r1.weights):
        if n not in have:
            names.append(n)
            weights.append(w)
            have.add(n)
    return Ring(names, weights)


def assemble_M_split(params1, params2):
    """The 27 x 27 matrix of both families on the split complex.

    ``params1``/``params2`` are the first/second-family structure maps
    of the split complex, with defects either fully symbolic or zero.
    The zero-defect permutation form is transported by the unipotent
    exponential solved from each family; generator-row and unit-column
    restrictions are asserted before returning.
    """
    _require_split(params1.complex)
    _require_split(params2.complex)
    rep = e6_rep()
    layout = slot_layout()
    ring = _joint_ring(params2.ring, params1.ring)

    w1 = assemble_w1(params2)
    coords = [p.transfer(ring) for p in w1.coords]
    n2 = _node2_terms(rep, layout, coords, ring)
    n1 = _lowering_sum(ring, rep, _node1_terms(rep, layout, params1, ring))
    a2 = _exp_nilpotent(ring, n2)
    a1 = _exp_nilpotent(ring, n1)
    _assert_unipotent(rep, a2)
    _assert_unipotent(rep, a1)

    rslots = row_display_slots(layout)
    cslots, csigns = column_display_slots(layout)
    if sorted(rslots) != list(range(27)) or sorted(cslots) != list(range(27)):
        raise AssemblyError("display bases do not cover the weight slots")

    da2 = [[a2[rslots[r]][rslots[c]] for c in range(27)] for r in range(27)]
    da1 = [
        [a1[cslots[r]][cslots[c]] * (csigns[r] * csigns[c]) for c in range(27)]
        for r in range(27)
    ]
    m0 = _m_zero(ring)
    da1_t = [[da1[c][r] for c in range(27)] for r in range(27)]
    m = _mat_mul(ring, _mat_mul(ring, da2, m0), da1_t)

    det = Mat(ring, [[p for p in row] for row in m0]).det()
    det = Fraction(next(iter(det.terms.values()))) if det.terms else Fraction(0)
    if det == 0:
        raise AssemblyError("permutation form is singular")

    out = SquareMatrixM(ring, Mat(ring, m), row_labels(), column_labels(), det)
    _check_restrictions(out, params1, params2, ring)
    return out


def _check_restrictions(mm, params1, params2, ring):
    """Generator rows must equal the first-family maps and the unit
    column the second-family vector."""
    d4 = params1.complex.d[4]
    for h in range(1, 7):
        row = mm.f_row(h)
        want = [d4.rows[h - 1][0].transfer(ring)]
        for K in odd_subsets(5):
            want.append(params1.wn1[K][h - 1].transfer(ring))
        for gi in range(10):
            want.append(params1.w12[gi][h - 1].transfer(ring))
        if row != want:
            raise AssemblyError("generator row %d does not restrict" % h)
    col = mm.unit_column()
    w1 = assemble_w1(params2)
    rslots = row_display_slots(slot_layout())
    want = [w1.coords[s].transfer(ring) for s in rslots]
    if col != want:
        raise AssemblyError("unit column does not restrict")


# -- skew presentation extraction ---------------------------------------


def _perm_sign(seq):
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def skew_matrix_from_w11(hsm2, m):
    """The 5 x 5 skew matrix of four-subset values complementary to
    generator ``m``: entry (p, q) holds the value on {m} plus the three
    other generators, signed by the shuffle of (p, q) to the front."""
    ring = hsm2.ring
    others = [i for i in range(1, 7) if i != m]
    if len(others) != 5:
        raise ValueError("distinguished generator index must be 1..6")
    z = ring.zero()
    rows = [[z] * 5 for _ in range(5)]
    for p in range(5):
        for q in range(5):
            if p == q:
                continue
            rest = [o for o in others if o not in (others[p], others[q])]
            quad = tuple(sorted(rest + [m]))
            sgn = _perm_sign([others[p], others[q]] + rest)
            rows[p][q] = hsm2.w11[quad] * sgn
    return Mat(ring, rows)


def submaximal_pfaffians(s):
    """The five pfaffians of ``s`` deleting row/column p, p = 0..4."""
    return [
        s.pfaffian(subset=[r for r in range(5) if r != p]) for p in range(5)
    ]


def _poly_weight(p):
    exps = next(iter(p.terms))
    return p.ring.weighted_degree(exps)


def _echelon(rows):
    basis = []
    for r in rows:
        r = dict(r)
        for pk, pr in basis:
            c = r.get(pk)
            if c is not None:
                for k, v in pr.items():
                    nv = r.get(k, Fraction(0)) - c * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        if r:
            pk = min(r)
            c = r[pk]
            basis.append((pk, {k: v / c for k, v in r.items()}))
    return basis


def _same_span(vecs1, vecs2):
    r1 = len(_echelon(vecs1))
    r2 = len(_echelon(vecs2))
    return r1 == r2 == len(_echelon(vecs1 + vecs2))


def verify_presentation(c, s, y):
    """Degreewise span equality of the two generating sets.

    Compares, in every weighted degree up to the largest generator
    degree, the rational span of monomial multiples of the first
    differential's entries against that of the five submaximal
    pfaffians of ``s`` together with ``y``.  Every generator lies in a
    compared degree, so equality of all the compared spans is exact
    ideal equality.  Requires every ring variable to carry positive
    weight and all generators to be homogeneous.
    """
    ring = s.ring
    if any(w <= 0 for w in ring.weights):
        raise ValueError("presentation check needs positive variable weights")
    gens1 = [g.transfer(ring) for g in c.d[1].rows[0]]
    gens1 = [g for g in gens1 if not g.is_zero()]
    gens2 = [g for g in submaximal_pfaffians(s) + [y.transfer(ring)] if not g.is_zero()]
    if not gens1 or not gens2:
        return not gens1 and not gens2
    for g in gens1 + gens2:
        if not g.is_homogeneous(_poly_weight(g)):
            raise ValueError("presentation check needs homogeneous generators")
    dmax = max(_poly_weight(g) for g in gens1 + gens2)

    def layer(gens, d):
        out = []
        for g in gens:
            dg = _poly_weight(g)
            for exps in ring.monomials_of_weight(d - dg):
                out.append(dict((g * ring.monomial(exps)).terms))
        return out

    for d in range(1, dmax + 1):
        if not _same_span(layer(gens1, d), layer(gens2, d)):
            return False
    return True


class PfaffianPresentation:
    """A verified skew presentation: (J, y) with J the submaximal
    pfaffians of ``skew`` and ``y`` the distinguished generator at
    position ``index``."""

    __slots__ = ("skew", "y", "pfaffians", "index")

    def __init__(self, skew, y, pfaffians, index):
        self.skew = skew
        self.y = y
        self.pfaffians = list(pfaffians)
        self.index = index

    def to_json(self):
        return {
            "skew_matrix": [[str(p) for p in row] for row in self.skew.rows],
            "y": str(self.y),
            "pfaffians": [str(p) for p in self.pfaffians],
            "index": self.index,
        }


def extract_pfaffian_presentation(c, hsm2):
    """Search the six generators for a verified skew presentation.

    For each candidate index the complementary four-subset values are
    rearranged into a skew matrix, the candidate generator is taken as
    the extra element, and the pair is accepted as soon as
    verify_presentation certifies it.  Raises ExtractionFailed when no
    candidate verifies.
    """
    ring = hsm2.ring
    failures = []
    for m in range(1, 7):
        s = skew_matrix_from_w11(hsm2, m)
        y = c.d[1].rows[0][m - 1].transfer(ring)
        try:
            ok = verify_presentation(c, s, y)
        except ValueError as err:
            failures.append("index %d: %s" % (m, err))
            continue
        if ok:
            return PfaffianPresentation(s, y, submaximal_pfaffians(s), m)
        failures.append("index %d: span mismatch" % m)
    raise ExtractionFailed("; ".join(failures))

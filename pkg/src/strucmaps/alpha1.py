"""The first family of higher structure maps on (1, n, 2n-2, n, 1) resolutions.

Starting from the spinor coordinates w00 of a resolution (see spinor.py),
eight maps are built by repeated graded lifting through the differentials:

  w00          even subsets -> R          spinor coordinates
  wn1          odd subsets -> F           lift of the gamma-expansion of w00
  w11          (even subset, f_h) -> R    lift of the wn1/w00 mixed expansion
  w12          G basis -> F               lift of the quadratic spinor pairing
  w62          f_h -> R                   lift of the second-layer expansion
  w0_11        R -> R                     lift over the invariant tensor
  w0_12        so(10) basis -> R          lift over the equivariant tensors
  w0_2         odd subsets -> R           lift of the top-layer expansion

Each q-expansion is written in Clifford-normalized form: subset neighbors
enter with the position sign of the corresponding gamma action, and the
quadratic expansion is the canonical equivariant pairing assembled from
the gamma action and the reversal pairing.  Lifts use the deterministic
graded solver; lift ambiguities (nontrivial kernels of the first lift)
become named defect parameters b_H, one per odd subset on the split
complex.
"""

from fractions import Fraction

from .ring import Poly, Ring, RingError
from .linalg import Mat, NoSolution, solve_linear_graded
from .complexes import FreeComplex
from .spinor import (
    SpinorCoordinates,
    TensorElement,
    _gamma_on_subset,
    all_thetas,
    beta_sign,
    complement,
    dual_index,
    even_subsets,
    embed_so,
    embed_trivial,
    g_label,
    odd_subsets,
    sigma1_table,
    spinor_coordinates,
    subset_label,
)

__all__ = [
    "LiftFailure",
    "StructureMapsAlpha1",
    "SIGMA2",
    "build_alpha1",
    "calibrate_sigma2",
    "defect_name",
    "phi_table",
    "split_target_w62",
]


class LiftFailure(RingError):
    """A required graded lift does not exist (input is not a resolution)."""


# -- small vector helpers (elements of a free module as Poly lists) -----


def _zero_vec(ring, n):
    return [ring.zero() for _ in range(n)]


def _vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def _vec_scale(u, c):
    return [a * c for a in u]


def _vec_is_zero(u):
    return all(a.is_zero() for a in u)


def _unit_vec(ring, n, j, coeff=None):
    out = _zero_vec(ring, n)
    out[j] = ring.one() if coeff is None else coeff
    return out


def defect_name(H):
    """Name of the lift-ambiguity parameter attached to the odd subset H."""
    return "b_" + "".join(str(i) for i in H)


# -- graded lifting ----------------------------------------------------


def _lift(mat, rhs, row_degs, col_degs, what, fallback=None):
    """Solve mat*x = rhs with degrees forced by the complex grading.

    ``row_degs``/``col_degs`` are the generator degrees of the codomain and
    domain of ``mat``; the common element degree t of the right-hand side is
    read off its first nonzero entry (entry i is homogeneous of degree
    t - row_degs[i]) and each unknown j is then homogeneous of degree
    t - col_degs[j].  ``fallback`` supplies t when rhs is zero (so the
    kernel can still be produced at a definite degree).
    """
    t = None
    for p, d in zip(rhs, row_degs):
        if p.is_zero():
            continue
        td = p.degree() + d
        if t is None:
            t = td
        elif t != td:
            raise LiftFailure("%s: inhomogeneous right-hand side" % what)
    if t is None:
        if fallback is None:
            return _zero_vec(mat.ring, mat.ncols), []
        t = fallback
    degrees = [t - d for d in col_degs]
    try:
        return solve_linear_graded(mat, rhs, degrees=degrees)
    except NoSolution as e:
        raise LiftFailure("%s: %s" % (what, e))


# -- canonical quadratic pairing table ---------------------------------

_PHI = None


def phi_table(m=5):
    """Equivariant expansion of each G basis vector over unordered odd pairs.

    phi(g) = sum c * u_A . u_B (symmetric product) with the coefficient
    c(A, B) = -sign * beta_sign(A) whenever gamma_g u_B = sign * u_M and
    A = complement(M).  The table is symmetric in (A, B) and is stored once
    per unordered pair; it reproduces the displayed bilinear expansions of
    the split model and transports them equivariantly to every basis vector.
    """
    global _PHI
    if _PHI is not None and m == 5:
        return _PHI
    odd = odd_subsets(m)
    ordered = []
    for g in range(2 * m):
        table = {}
        for b_set in odd:
            r = _gamma_on_subset(g, b_set, m)
            if r is None:
                continue
            sign, m_set = r
            a_set = complement(m_set, m)
            table[(a_set, b_set)] = -Fraction(sign) * beta_sign(a_set, m)
        ordered.append(table)
    folded = []
    for g, table in enumerate(ordered):
        out = {}
        for (a_set, b_set), c in table.items():
            if table.get((b_set, a_set)) != c:
                raise RingError("quadratic pairing table is not symmetric")
            key = tuple(sorted((a_set, b_set), key=lambda s: (len(s), s)))
            out[key] = c
        folded.append(out)
    if m == 5:
        _PHI = folded
    return folded


def _sym_pairs(n):
    return [(a, b) for a in range(n) for b in range(a, n)]


def _sym_product_add(out, x, y, coeff, ring):
    """out += coeff * (x . y) in symmetric-square coordinates (a <= b)."""
    n = len(x)
    c = ring.const(coeff)
    for a in range(n):
        if x[a].is_zero():
            continue
        for b in range(n):
            if y[b].is_zero():
                continue
            key = (a, b) if a <= b else (b, a)
            out[key] = out.get(key, ring.zero()) + x[a] * y[b] * c
    return out


# -- calibrated second-layer signs -------------------------------------

# sigma2[(h, K)] is the sign of the term w11(u_K (x) f_h) * wn1(u_comp(K))
# in the second-layer expansion q62(f_h); pairs absent from the table are
# excluded from the sum (the middle-cardinality terms enter once per
# complementary pair, not twice).  Frozen from calibrate_sigma2().
SIGMA2 = {
    (1, ()): 1,
    (1, (2, 3)): 1,
    (1, (2, 4)): -1,
    (1, (2, 5)): 1,
    (1, (2, 3, 4, 5)): 1,
    (2, ()): 1,
    (2, (1, 3)): -1,
    (2, (1, 4)): 1,
    (2, (1, 5)): -1,
    (2, (1, 3, 4, 5)): -1,
    (3, ()): 1,
    (3, (1, 2)): 1,
    (3, (1, 4)): 1,
    (3, (1, 5)): -1,
    (3, (1, 2, 4, 5)): 1,
    (4, ()): 1,
    (4, (1, 2)): 1,
    (4, (1, 3)): -1,
    (4, (1, 5)): -1,
    (4, (1, 2, 3, 5)): -1,
    (5, ()): 1,
    (5, (1, 2)): 1,
    (5, (1, 3)): -1,
    (5, (1, 4)): 1,
    (5, (1, 2, 3, 4)): 1,
    (6, ()): 1,
    (6, (1, 2)): -1,
    (6, (1, 3)): 1,
    (6, (1, 4)): -1,
    (6, (1, 5)): 1,
    (6, (2, 3)): -1,
    (6, (2, 4)): 1,
    (6, (2, 5)): -1,
    (6, (3, 4)): -1,
    (6, (3, 5)): 1,
    (6, (4, 5)): -1,
}


def _pfaffian_pairs(elems):
    """Partitions of a sorted 4-set into two pairs, with pfaffian signs."""
    a, b, c, d = elems
    return [(1, (a, b), (c, d)), (-1, (a, c), (b, d)), (1, (a, d), (b, c))]


def split_target_w62(ring, h):
    """The split-model value of w62(f_h) over the defect ring."""
    b = lambda s: ring.var("b_" + "".join(str(i) for i in sorted(s)))
    if h == 6:
        return -b((1, 2, 3, 4, 5))
    comp = [i for i in range(1, 6) if i != h]
    p_h = ring.zero()
    for sign, s1, s2 in _pfaffian_pairs(comp):
        term = b((h,) + s1) * b((h,) + s2)
        p_h = p_h + (term if sign > 0 else -term)
    return b((h,)) * b((1, 2, 3, 4, 5)) + p_h + p_h


# -- the container ------------------------------------------------------


class StructureMapsAlpha1:
    """All eight structure maps of the first family on one resolution."""

    __slots__ = (
        "complex",
        "ring",
        "defects",
        "w00",
        "wn1",
        "w11",
        "w12",
        "w62",
        "w0_11",
        "w0_12",
        "w0_2",
    )

    def __init__(self, complex_, ring, defects):
        self.complex = complex_
        self.ring = ring
        self.defects = list(defects)
        self.w00 = None
        self.wn1 = {}
        self.w11 = {}
        self.w12 = {}
        self.w62 = {}
        self.w0_11 = None
        self.w0_12 = {}
        self.w0_2 = {}

    # -- q-expansions (recomputable from the stored layers) ------------

    def q_n_1(self, H):
        """Gamma-expansion of w00 at the odd subset H, as a G vector."""
        ring = self.ring
        m = self.complex.m
        vec = _zero_vec(ring, 2 * m)
        for g in range(2 * m):
            r = _gamma_on_subset(g, tuple(H), m)
            if r is None:
                continue
            sign, K2 = r
            v = self.w00[K2]
            vec[g] = v if sign > 0 else -v
        return vec

    def q_1_1(self, K, h):
        """Mixed wn1/w00 expansion at (even subset K, generator f_h)."""
        c = self.complex
        ring = self.ring
        m = c.m
        n = c.n
        col = c.d[3].column_entries(h - 1)
        vec = _zero_vec(ring, n)
        for g in range(2 * m):
            coeff = col[dual_index(g, m)]
            if coeff.is_zero():
                continue
            r = _gamma_on_subset(g, tuple(K), m)
            if r is None:
                continue
            sign, H2 = r
            w = self.wn1[H2]
            s = coeff if sign > 0 else -coeff
            vec = _vec_add(vec, _vec_scale(w, s))
        vec[h - 1] = vec[h - 1] - self.w00[tuple(K)]
        return vec

    def q_1_2(self, g):
        """Quadratic wn1 pairing at the G basis vector g (symmetric square)."""
        ring = self.ring
        out = {}
        for (a_set, b_set), c in phi_table(self.complex.m)[g].items():
            _sym_product_add(out, self.wn1[a_set], self.wn1[b_set], c, ring)
        return {k: v for k, v in out.items() if not v.is_zero()}

    def q_6_2(self, h):
        """Second-layer expansion at f_h, as an F vector."""
        c = self.complex
        ring = self.ring
        vec = _zero_vec(ring, c.n)
        for K in even_subsets(c.m):
            sign = SIGMA2.get((h, K))
            if sign is None:
                continue
            coeff = self.w11[(K, h)]
            if coeff.is_zero():
                continue
            term = _vec_scale(self.wn1[complement(K, c.m)], coeff)
            vec = _vec_add(vec, term if sign > 0 else _vec_scale(term, ring.const(-1)))
        col = c.d[3].column_entries(h - 1)
        for g in range(2 * c.m):
            if col[g].is_zero():
                continue
            vec = _vec_add(vec, _vec_scale(self.w12[g], col[g]))
        return vec

    def q_0_1(self, tensor):
        """w00/wn1 contraction of an even (x) odd tensor, as an F vector."""
        ring = self.ring
        vec = _zero_vec(ring, self.complex.n)
        for (K, H), v in tensor.coeffs.items():
            coeff = v * self.w00[K]
            if coeff.is_zero():
                continue
            vec = _vec_add(vec, _vec_scale(self.wn1[H], coeff))
        return vec

    def q_0_2(self, H):
        """Top-layer expansion at the odd subset H, as an F vector."""
        c = self.complex
        ring = self.ring
        m = c.m
        vec = _zero_vec(ring, c.n)
        for g in range(2 * m):
            r = _gamma_on_subset(g, tuple(H), m)
            if r is None:
                continue
            sign, K2 = r
            coeff = self.w00[K2]
            if coeff.is_zero():
                continue
            term = _vec_scale(self.w12[g], coeff)
            vec = _vec_add(vec, term if sign > 0 else _vec_scale(term, ring.const(-1)))
        vec = _vec_add(vec, _vec_scale(self.wn1[tuple(H)], self.w0_11))
        return vec

    # -- serialization --------------------------------------------------

    def to_json(self):
        n = self.complex.n
        m = self.complex.m
        payload = {
            "family": "alpha1",
            "n": n,
            "ring": {
                "variables": list(self.ring.names),
                "weights": list(self.ring.weights),
            },
            "defects": list(self.defects),
            "sign": self.w00.sign,
            "w00": {subset_label(K): str(v) for K, v in self.w00.items()},
            "wn1": {
                subset_label(H): [str(p) for p in self.wn1[H]] for H in odd_subsets(m)
            },
            "w11": {
                subset_label(K): {
                    "f%d" % h: str(self.w11[(K, h)]) for h in range(1, n + 1)
                }
                for K in even_subsets(m)
            },
            "w12": {
                g_label(g, m): [str(p) for p in self.w12[g]] for g in range(2 * m)
            },
            "w62": {"f%d" % h: str(self.w62[h]) for h in range(1, n + 1)},
            "w0_11": str(self.w0_11),
            "w0_12": {
                "%s^%s" % (g_label(a, m), g_label(b, m)): str(v)
                for (a, b), v in sorted(self.w0_12.items())
            },
            "w0_2": {subset_label(H): str(self.w0_2[H]) for H in odd_subsets(m)},
        }
        return payload


# -- the builder --------------------------------------------------------


def build_alpha1(c, defects=True, layers="all"):
    """Compute the structure maps of the first family on ``c``.

    With ``defects=True`` each lift ambiguity of the first layer becomes a
    named weight-0 parameter b_H adjoined to the ring (the split complex
    produces all sixteen); with ``defects=False`` the deterministic
    particular lifts are used unchanged.  ``layers="second"`` stops after
    w12 (used by the sign calibration, which must not depend on the frozen
    sign table it re-derives).
    """
    m = c.m
    n = c.n
    w00_base = spinor_coordinates(c)

    # first layer on the base ring, to discover the lift ambiguities
    base = StructureMapsAlpha1(c, c.ring, [])
    base.w00 = w00_base
    lifts = {}
    kernels = {}
    for H in odd_subsets(m):
        q = base.q_n_1(H)
        x, ker = _lift(
            c.d[3], q, c.degrees[2], c.degrees[3], "wn1(u%s)" % subset_label(H),
            fallback=max(c.degrees[3]),
        )
        lifts[H] = x
        kernels[H] = ker

    names = []
    assign = {}
    if defects:
        for H in odd_subsets(m):
            here = []
            for k in range(len(kernels[H])):
                nm = defect_name(H) if k == 0 else "%s_%d" % (defect_name(H), k + 1)
                here.append(nm)
            names.extend(here)
            assign[H] = here

    if names:
        ring = c.ring.extend(names, [0] * len(names))
        cx = FreeComplex(
            ring,
            n,
            {k: c.d[k].transfer(ring) for k in (1, 2, 3, 4)},
            c.labels,
            c.degrees,
            c.convention,
        )
    else:
        ring = c.ring
        cx = c

    maps = StructureMapsAlpha1(cx, ring, names)
    maps.w00 = SpinorCoordinates(
        ring, {K: v.transfer(ring) for K, v in w00_base.coeffs.items()}, w00_base.sign, m
    )
    for H in odd_subsets(m):
        vec = [p.transfer(ring) for p in lifts[H]]
        for nm, ker in zip(assign.get(H, []), kernels[H]):
            kv = [p.transfer(ring) * ring.var(nm) for p in ker]
            vec = _vec_add(vec, kv)
        maps.wn1[H] = vec

    # second layer: w11 over (even subset, generator)
    for K in even_subsets(m):
        for h in range(1, n + 1):
            q = maps.q_1_1(K, h)
            if _vec_is_zero(q):
                maps.w11[(K, h)] = ring.zero()
                continue
            x, _ = _lift(
                cx.d[4], q, cx.degrees[3], cx.degrees[4],
                "w11(u%s,f%d)" % (subset_label(K), h),
            )
            maps.w11[(K, h)] = x[0]

    # second layer: w12 over the G basis, lifted through the symmetric square
    pairs = _sym_pairs(n)
    d4col = cx.d[4].column_entries(0)
    rows = []
    for a, b in pairs:
        row = []
        for cc in range(n):
            v = ring.zero()
            if a == b:
                if cc == a:
                    v = d4col[a]
            else:
                if cc == a:
                    v = v + d4col[b]
                if cc == b:
                    v = v + d4col[a]
            row.append(v)
        rows.append(row)
    sym_mat = Mat(ring, rows)
    sym_row_degs = [cx.degrees[3][a] + cx.degrees[3][b] for a, b in pairs]
    sym_col_degs = [cx.degrees[4][0] + d for d in cx.degrees[3]]
    for g in range(2 * m):
        val = maps.q_1_2(g)
        rhs = [val.get(p, ring.zero()) for p in pairs]
        x, _ = _lift(sym_mat, rhs, sym_row_degs, sym_col_degs, "w12(%s)" % g_label(g, m))
        maps.w12[g] = x

    if layers == "second":
        return maps

    # second layer: w62 over the generators
    for h in range(1, n + 1):
        q = maps.q_6_2(h)
        if _vec_is_zero(q):
            maps.w62[h] = ring.zero()
            continue
        x, _ = _lift(cx.d[4], q, cx.degrees[3], cx.degrees[4], "w62(f%d)" % h)
        maps.w62[h] = x[0]

    # top layer over the invariant and equivariant tensors
    i1 = embed_trivial(ring)
    q = maps.q_0_1(i1)
    x, _ = _lift(cx.d[4], q, cx.degrees[3], cx.degrees[4], "w0_11")
    maps.w0_11 = x[0]
    for theta in all_thetas(m):
        q = maps.q_0_1(embed_so(theta, ring))
        if _vec_is_zero(q):
            maps.w0_12[theta] = ring.zero()
            continue
        x, _ = _lift(
            cx.d[4], q, cx.degrees[3], cx.degrees[4],
            "w0_12(%s^%s)" % (g_label(theta[0], m), g_label(theta[1], m)),
        )
        maps.w0_12[theta] = x[0]
    for H in odd_subsets(m):
        q = maps.q_0_2(H)
        if _vec_is_zero(q):
            maps.w0_2[H] = ring.zero()
            continue
        x, _ = _lift(
            cx.d[4], q, cx.degrees[3], cx.degrees[4], "w0_2(u%s)" % subset_label(H)
        )
        maps.w0_2[H] = x[0]

    return maps


# -- sign-table calibration --------------------------------------------


def calibrate_sigma2():
    """Re-derive SIGMA2 from the two canonical complexes.

    The split model fixes, for each generator, the signs of the terms that
    survive there (the target being the closed-form split value of w62);
    the remaining middle-cardinality signs for the last generator are fixed
    by requiring the pfaffian-section expansion to be liftable.  The folded
    support (one representative per complementary pair of 2-subsets for
    h <= 5, the full set for h = 6) is part of the calibration: an unfolded
    sum with unit signs cannot produce the odd split coefficients.
    """
    from .complexes import build_split, build_pfaffian_section
    from .linalg import solve_rational

    split = build_alpha1(build_split(), defects=True, layers="second")
    pf = build_alpha1(build_pfaffian_section(), defects=False, layers="second")
    m = 5
    n = 6
    evens = even_subsets(m)
    out = {}

    def term_vectors(maps, h):
        terms = {}
        for K in evens:
            coeff = maps.w11[(K, h)]
            if coeff.is_zero():
                continue
            terms[K] = _vec_scale(maps.wn1[complement(K, m)], coeff)
        return terms

    def w12_part(maps, h):
        col = maps.complex.d[3].column_entries(h - 1)
        vec = _zero_vec(maps.ring, n)
        for g in range(2 * m):
            if not col[g].is_zero():
                vec = _vec_add(vec, _vec_scale(maps.w12[g], col[g]))
        return vec

    def linear_solve(columns, target, ring):
        """Exact rational solve of sum x_j columns[j] = target (Poly vectors)."""
        keys = set()
        for vec in columns + [target]:
            for i, p in enumerate(vec):
                for e in p.terms:
                    keys.add((i, e))
        keys = sorted(keys)
        rows = []
        rhs = []
        for i, e in keys:
            rows.append([vec[i].terms.get(e, Fraction(0)) for vec in columns])
            rhs.append(target[i].terms.get(e, Fraction(0)))
        sols, kernel = solve_rational(rows, [rhs])
        if sols[0] is None:
            raise LiftFailure("sign calibration has no solution")
        return sols[0], kernel

    for h in range(1, n + 1):
        split_terms = term_vectors(split, h)
        keys = [K for K in evens if K in split_terms]
        target = _unit_vec(split.ring, n, n - 1, split_target_w62(split.ring, h))
        target = _vec_add(target, _vec_scale(w12_part(split, h), split.ring.const(-1)))
        sol, _ = linear_solve([split_terms[K] for K in keys], target, split.ring)
        fixed = {}
        for K, v in zip(keys, sol):
            if v:
                if abs(v) != 1:
                    raise LiftFailure("split calibration weight %s at %s" % (v, (h, K)))
                fixed[K] = int(v)
        # pfaffian side: remaining nonzero terms there must cancel into a lift
        pf_terms = term_vectors(pf, h)
        free = [K for K in pf_terms if K not in fixed and K not in split_terms]
        base = _vec_scale(w12_part(pf, h), pf.ring.const(-1))
        for K, s in fixed.items():
            if K in pf_terms:
                v = pf_terms[K] if s > 0 else _vec_scale(pf_terms[K], pf.ring.const(-1))
                base = _vec_add(base, _vec_scale(v, pf.ring.const(-1)))
        # unknowns: signs on free terms and the lift multiplier
        cols = [pf_terms[K] for K in free]
        cols.append(pf.complex.d[4].column_entries(0))
        sol, kernel = linear_solve(cols, base, pf.ring)
        for K, v in zip(free, sol):
            if v:
                if abs(v) != 1:
                    raise LiftFailure(
                        "pfaffian calibration weight %s at %s" % (v, (h, K))
                    )
                fixed[K] = int(v)
        for K, s in sorted(fixed.items(), key=lambda t: (len(t[0]), t[0])):
            out[(h, K)] = s
    return out

"""Half-spinor representations of so(2n-2) and spinor coordinates.

The spinor space is modelled as the exterior algebra on e_1..e_{n-1}:
basis elements u_K are indexed by subsets K of {1..n-1}, gamma(e_i) acts
by wedging, gamma(eh_i) by contraction, and the two half-spinor
representations are the even and odd parity parts.  G-basis indices follow
the complex convention: 0..m-1 are eh_1..eh_m, m..2m-1 are e_1..e_m
(m = n-1).

The pairing p sends a symmetric pair of same-parity spinors to a wedge
coordinate vector on Lambda^m G.  Its diagonal obeys the index rule
J(K) = {e_k : k in K} + {eh_j : j not in K}: the coordinate of p(u,u)
there is (coefficient +-1) times u_K squared, which is what makes the
layered square-root extraction of ``spinor_coordinates`` work.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .linalg import solve_rational
from .ring import NotAPerfectSquare, Poly, Ring, RingError, gcd_list


class SignInconsistency(RingError):
    """No global sign assignment satisfies all spinor product relations."""


class ZeroMap(RingError):
    """d3 has too low a rank to carry Buchsbaum-Eisenbud multipliers."""


_QQ = Ring([])


# -- subset bookkeeping -------------------------------------------------


def subsets_of_parity(m, parity):
    """Subsets of {1..m} of the given parity ('even'/'odd'), ordered by (size, lex)."""
    want = 0 if parity == "even" else 1
    out = [
        tuple(s)
        for k in range(m + 1)
        if k % 2 == want
        for s in combinations(range(1, m + 1), k)
    ]
    return out


def even_subsets(m=5):
    return subsets_of_parity(m, "even")


def odd_subsets(m=5):
    return subsets_of_parity(m, "odd")


def complement(K, m=5):
    return tuple(i for i in range(1, m + 1) if i not in K)


def subset_label(K):
    return "{%s}" % ",".join(str(i) for i in K)


def parse_subset_label(s):
    s = s.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise ValueError("bad subset label %r" % s)
    body = s[1:-1].strip()
    if not body:
        return ()
    return tuple(sorted(int(t) for t in body.split(",")))


def _sort_sign(seq):
    """Sign of the permutation sorting seq ascending (None on duplicates)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] == seq[j]:
                return None
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def beta_sign(A, m=5):
    """Reversal-pairing sign: coefficient of e_{1..m} in rev(e_A) ^ e_{A^c}."""
    seq = tuple(reversed(A)) + complement(A, m)
    s = _sort_sign(seq)
    if s is None:
        raise ValueError("subset with duplicates")
    return s


def dual_index(i, m=5):
    """Q-dual partner of a G index (eh_i <-> e_i)."""
    return i + m if i < m else i - m


def dual_wedge(J, m=5):
    """Q-dual of a sorted wedge index tuple, with reordering sign."""
    D = [dual_index(i, m) for i in J]
    s = _sort_sign(D)
    return tuple(sorted(D)), s


def diagonal_position(K, m=5):
    """J(K): the wedge coordinate carrying the square of u_K."""
    return tuple(sorted([m + k - 1 for k in K] + [j - 1 for j in complement(K, m)]))


# -- spinor elements and Clifford action --------------------------------


class SpinorElement:
    """A polynomial-coefficient vector in one half-spinor representation."""

    __slots__ = ("ring", "m", "parity", "coeffs")

    def __init__(self, ring, parity, coeffs=None, m=5):
        self.ring = ring
        self.m = m
        self.parity = parity
        self.coeffs = {}
        for K, c in (coeffs or {}).items():
            if not c.is_zero():
                if len(K) % 2 != (0 if parity == "even" else 1):
                    raise ValueError("subset %r has wrong parity" % (K,))
                self.coeffs[tuple(K)] = c

    @classmethod
    def basis(cls, ring, K, m=5):
        K = tuple(sorted(K))
        parity = "even" if len(K) % 2 == 0 else "odd"
        return cls(ring, parity, {K: ring.one()}, m)

    @classmethod
    def zero(cls, ring, parity, m=5):
        return cls(ring, parity, {}, m)

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, SpinorElement)
            and self.parity == other.parity
            and self.coeffs == other.coeffs
        )

    def __add__(self, other):
        if other.parity != self.parity:
            raise ValueError("cannot add spinors of different parity")
        out = dict(self.coeffs)
        for K, c in other.coeffs.items():
            s = out.get(K)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(K, None)
            else:
                out[K] = s
        return SpinorElement(self.ring, self.parity, out, self.m)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        if isinstance(c, Poly):
            return SpinorElement(
                self.ring, self.parity, {K: v * c for K, v in self.coeffs.items()}, self.m
            )
        return SpinorElement(
            self.ring,
            self.parity,
            {K: v * self.ring.const(c) for K, v in self.coeffs.items()},
            self.m,
        )

    def items(self):
        return sorted(self.coeffs.items(), key=lambda t: (len(t[0]), t[0]))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(
            "(%s)*u%s" % (c, subset_label(K)) for K, c in self.items()
        )


def _gamma_on_subset(g, K, m=5):
    """Apply a single gamma (G index g) to a basis subset. -> (sign, K') or None."""
    if g >= m:  # e_i: wedge
        i = g - m + 1
        if i in K:
            return None
        below = sum(1 for j in K if j < i)
        return ((-1) ** below, tuple(sorted(K + (i,))))
    i = g + 1  # eh_i: contraction
    if i not in K:
        return None
    below = sum(1 for j in K if j < i)
    return ((-1) ** below, tuple(j for j in K if j != i))


def clifford_action(g, u):
    """gamma_g applied to a SpinorElement; g is a G index or a label like 'e1'/'eh3'."""
    if isinstance(g, str):
        g = g_index(g, u.m)
    out = {}
    for K, c in u.coeffs.items():
        r = _gamma_on_subset(g, K, u.m)
        if r is None:
            continue
        sign, K2 = r
        v = c if sign > 0 else -c
        s = out.get(K2)
        s = v if s is None else s + v
        if s.is_zero():
            out.pop(K2, None)
        else:
            out[K2] = s
    parity = "odd" if u.parity == "even" else "even"
    return SpinorElement(u.ring, parity, out, u.m)


def g_index(label, m=5):
    if label.startswith("eh"):
        return int(label[2:]) - 1
    if label.startswith("e"):
        return m + int(label[1:]) - 1
    raise ValueError("bad G label %r" % label)


def g_label(i, m=5):
    return "eh%d" % (i + 1) if i < m else "e%d" % (i - m + 1)


def q_pairing(a, b, m=5):
    """Hyperbolic form on G indices: Q(eh_i, e_i) = 1."""
    return 1 if dual_index(a, m) == b else 0


def rho_apply(theta, u):
    """so(2m) generator theta = (a, b) (a<b, G indices) on a spinor.

    rho(a ^ b) = gamma_a gamma_b - (1/2) Q(a,b).
    """
    a, b = theta
    out = clifford_action(a, clifford_action(b, u))
    q = q_pairing(a, b, u.m)
    if q:
        out = out - u.scale(Fraction(q, 2))
    return out


def theta_on_vector(theta, c, m=5):
    """Adjoint action of theta = a^b on the G basis vector with index c.

    (a ^ b)(v) = Q(b,v) a - Q(a,v) b; returns a list of (index, sign).
    """
    a, b = theta
    out = []
    if q_pairing(b, c, m):
        out.append((a, 1))
    if q_pairing(a, c, m):
        out.append((b, -1))
    return out


def theta_on_theta(g, theta, m=5):
    """Adjoint action on Lambda^2: g.(a^b) = (g a)^b + a^(g b) in the theta basis.

    Returns a dict {(c,d) with c<d: Fraction coefficient}.
    """
    a, b = theta
    out = {}
    for idx, vec in ((0, a), (1, b)):
        for c, sgn in theta_on_vector(g, vec, m):
            pair = (c, b) if idx == 0 else (a, c)
            x, y = pair
            if x == y:
                continue
            coeff = Fraction(sgn)
            if x > y:
                x, y = y, x
                coeff = -coeff
            out[(x, y)] = out.get((x, y), Fraction(0)) + coeff
    return {k: v for k, v in out.items() if v}


def all_thetas(m=5):
    return list(combinations(range(2 * m), 2))


def apply_theta_to_wedge(theta, wedge, m=5):
    """Derivation action of theta on a Lambda^m G coordinate dict {J: Poly}."""
    out = {}
    for J, c in wedge.items():
        for pos, idx in enumerate(J):
            for idx2, sgn in theta_on_vector(theta, idx, m):
                seq = list(J)
                seq[pos] = idx2
                s = _sort_sign(seq)
                if s is None:
                    continue
                J2 = tuple(sorted(seq))
                v = c * (s * sgn)
                acc = out.get(J2)
                acc = v if acc is None else acc + v
                if acc.is_zero():
                    out.pop(J2, None)
                else:
                    out[J2] = acc
    return out


# -- the pairing p ------------------------------------------------------


_P_TABLES = {}
_GAMMA_WEDGE = {}


def _gamma_wedge_on_subset(J, K, m=5):
    """Antisymmetrized Clifford product gamma_{^J} on a basis subset.

    Returns {K': Fraction}.  Computed by the recursion
    gamma_{x ^ w} = gamma_x gamma_w - gamma_{iota_x w}, where iota_x
    contracts with Q/2 (our gammas satisfy {g_x, g_y} = Q(x, y)); the
    correction only fires when J contains a dual pair e_i, eh_i.
    """
    key = (J, K, m)
    cached = _GAMMA_WEDGE.get(key)
    if cached is not None:
        return cached
    if not J:
        out = {K: Fraction(1)}
        _GAMMA_WEDGE[key] = out
        return out
    x, rest = J[0], J[1:]
    out = {}
    for K1, c in _gamma_wedge_on_subset(rest, K, m).items():
        r = _gamma_on_subset(x, K1, m)
        if r is not None:
            s, K2 = r
            out[K2] = out.get(K2, Fraction(0)) + c * s
    for k0, yk in enumerate(rest):
        if q_pairing(x, yk, m):
            sub = rest[:k0] + rest[k0 + 1 :]
            corr = Fraction((-1) ** k0, 2)
            for K1, c in _gamma_wedge_on_subset(sub, K, m).items():
                out[K1] = out.get(K1, Fraction(0)) - corr * c
    out = {k: v for k, v in out.items() if v}
    _GAMMA_WEDGE[key] = out
    return out


def p_table(m=5, parity="even"):
    """Ordered structure table of p: {J: {(A,B): Fraction}}.

    p(u, v)[J] = sum over (A,B) of c_{A,B} * u_A * v_B.
    """
    key = (m, parity)
    if key in _P_TABLES:
        return _P_TABLES[key]
    table = {}
    basis = subsets_of_parity(m, parity)
    for J_raw in combinations(range(2 * m), m):
        Jd, eps = dual_wedge(J_raw, m)
        for B in basis:
            for M, coeff in _gamma_wedge_on_subset(J_raw, B, m).items():
                A = complement(M, m)
                if len(A) % 2 != len(B) % 2:
                    continue
                c = coeff * beta_sign(A, m) * eps
                table.setdefault(Jd, {})[(A, B)] = (
                    table.get(Jd, {}).get((A, B), Fraction(0)) + c
                )
    _P_TABLES[key] = table
    return table


_SYM_TABLES = {}


def sym_p_table(m=5, parity="even"):
    """Unordered-pair view: {J: list of (A, B, coeff)} with A <= B in subset order.

    p(w, w)[J] = sum of coeff * w_A * w_B over the listed pairs.
    """
    key = (m, parity)
    if key in _SYM_TABLES:
        return _SYM_TABLES[key]
    order = {K: i for i, K in enumerate(subsets_of_parity(m, parity))}
    out = {}
    for J, d in p_table(m, parity).items():
        acc = {}
        for (A, B), c in d.items():
            pair = (A, B) if order[A] <= order[B] else (B, A)
            acc[pair] = acc.get(pair, Fraction(0)) + c
        entries = [(A, B, c) for (A, B), c in acc.items() if c]
        if entries:
            out[J] = entries
    _SYM_TABLES[key] = out
    return out


def p_map(u, v):
    """The equivariant pairing p(u, v) as a wedge coordinate dict {J: Poly}."""
    if u.parity != v.parity or u.m != v.m:
        raise ValueError("p needs two spinors of the same parity")
    table = p_table(u.m, u.parity)
    ring = u.ring
    out = {}
    for J, d in table.items():
        s = ring.zero()
        for (A, B), c in d.items():
            ua = u.coeffs.get(A)
            vb = v.coeffs.get(B)
            if ua is not None and vb is not None:
                s = s + ua * vb * c
        if not s.is_zero():
            out[J] = s
    return out


def p_of_square(coeffs, ring, m=5, parity="even"):
    """p(w, w) for a coefficient dict {K: Poly}."""
    table = sym_p_table(m, parity)
    out = {}
    for J, entries in table.items():
        s = ring.zero()
        for A, B, c in entries:
            wa = coeffs.get(A)
            wb = coeffs.get(B)
            if wa is not None and wb is not None and not wa.is_zero() and not wb.is_zero():
                s = s + wa * wb * c
        if not s.is_zero():
            out[J] = s
    return out


def wedge_order(m=5):
    """Canonical ordering of Lambda^m G coordinates (lex on index tuples)."""
    return list(combinations(range(2 * m), m))


# -- Buchsbaum-Eisenbud multipliers and spinor coordinates --------------


def be_multipliers(c):
    """The primitive generator a3 of the column space of Lambda^(n-1) d3.

    Returned as a dict {J: Poly} over the wedge basis of G, normalized so
    the first nonzero coordinate (lex on J) has positive leading
    coefficient.  Validates the rank-one factorization: every column of
    the wedge power is a polynomial multiple of the result.
    """
    m = c.n - 1
    w = c.d[3].wedge_power(m)  # C(2m, m) x n
    ring = c.ring
    order = wedge_order(m)
    j0 = None
    for j in range(w.ncols):
        if any(not w.rows[i][j].is_zero() for i in range(w.nrows)):
            j0 = j
            break
    if j0 is None:
        raise ZeroMap("d3 has rank below n-1: all maximal minors vanish")
    col = [w.rows[i][j0] for i in range(w.nrows)]
    g = gcd_list([p for p in col if not p.is_zero()])
    prim = [p.exact_div(g) if not p.is_zero() else p for p in col]
    for i, p in enumerate(prim):
        if not p.is_zero():
            _, lead = p.leading()
            if lead < 0:
                prim = [-q for q in prim]
            break
    # rank-one validation: each column is a multiple of the primitive one
    i0 = next(i for i, p in enumerate(prim) if not p.is_zero())
    for j in range(w.ncols):
        colj = [w.rows[i][j] for i in range(w.nrows)]
        mult = colj[i0].exact_div(prim[i0]) if not colj[i0].is_zero() else ring.zero()
        for i in range(w.nrows):
            if colj[i] != prim[i] * mult:
                raise ZeroMap("maximal minors of d3 do not factor through a rank-one map")
    return {order[i]: p for i, p in enumerate(prim) if not p.is_zero()}


class SpinorCoordinates:
    """The even half-spinor coefficient family w(0)_0 of a resolution."""

    __slots__ = ("ring", "m", "coeffs", "sign")

    def __init__(self, ring, coeffs, sign, m=5):
        self.ring = ring
        self.m = m
        self.coeffs = {K: v for K, v in coeffs.items() if not v.is_zero()}
        self.sign = sign

    def __getitem__(self, K):
        return self.coeffs.get(tuple(K), self.ring.zero())

    def items(self):
        return [(K, self.coeffs.get(K, self.ring.zero())) for K in even_subsets(self.m)]

    def as_spinor(self):
        return SpinorElement(self.ring, "even", dict(self.coeffs), self.m)

    def to_json(self):
        return {subset_label(K): str(v) for K, v in self.items()}


def spinor_coordinates(c):
    """Solve p(w, w) = a3 for the even spinor w, layered over subset distance.

    The diagonal coordinate J(K) determines w_K^2, so the first nonzero
    diagonal gives w_{K0} by square root; every other coordinate is then
    obtained from a wedge coordinate whose contributing pairs are known
    except one, by exact division.  A global sign flip of a3 is retried if
    the square root fails, and the final assignment is verified against a3
    exactly.  The overall sign of w makes the first nonzero coordinate
    (subset order) have a positive leading coefficient.
    """
    m = c.n - 1
    ring = c.ring
    a3 = be_multipliers(c)
    sym = sym_p_table(m, "even")
    evens = subsets_of_parity(m, "even")
    # diagonal coefficient c_K and structural uniqueness of the diagonal pair
    diag_coeff = {}
    for K in evens:
        J = diagonal_position(K, m)
        entries = sym.get(J, [])
        if len(entries) != 1 or entries[0][0] != K or entries[0][1] != K:
            raise SignInconsistency("diagonal wedge position %r is not pure" % (J,))
        diag_coeff[K] = entries[0][2]
    pair_positions = {}
    for J, entries in sym.items():
        for A, B, coeff in entries:
            pair_positions.setdefault((A, B), []).append(J)

    last_err = None
    for s in (1, -1):
        try:
            coeffs = _solve_layers(ring, a3, s, sym, evens, diag_coeff, pair_positions, m)
        except (NotAPerfectSquare, SignInconsistency) as e:
            last_err = e
            continue
        # global sign: first nonzero coordinate positive
        for K in evens:
            v = coeffs.get(K)
            if v is not None and not v.is_zero():
                if v.leading()[1] < 0:
                    coeffs = {k: -p for k, p in coeffs.items()}
                break
        return SpinorCoordinates(ring, coeffs, s, m)
    raise last_err


def _solve_layers(ring, a3, s, sym, evens, diag_coeff, pair_positions, m):
    def target(J):
        v = a3.get(J, ring.zero())
        return v if s > 0 else -v

    w = {}
    unknown = []
    for K in evens:
        diag = target(diagonal_position(K, m))
        if diag.is_zero():
            w[K] = ring.zero()
        else:
            unknown.append(K)
    if not unknown:
        raise SignInconsistency("a3 has no diagonal support; not a spinor square")
    K0 = unknown[0]
    v0 = target(diagonal_position(K0, m)) / diag_coeff[K0]
    w[K0] = v0.sqrt()
    unknown = unknown[1:]
    while unknown:
        progress = False
        for K in list(unknown):
            hit = None
            for A in evens:
                if A in unknown or A == K:
                    continue
                wa = w.get(A)
                if wa is None or wa.is_zero():
                    continue
                pair = (A, K) if (len(A), A) <= (len(K), K) else (K, A)
                for J in pair_positions.get(pair, []):
                    ok = True
                    for A2, B2, _c in sym[J]:
                        if (A2, B2) == pair:
                            continue
                        if A2 in unknown or B2 in unknown:
                            ok = False
                            break
                    if ok:
                        hit = (A, pair, J)
                        break
                if hit:
                    break
            if hit is None:
                continue
            A, pair, J = hit
            rest = ring.zero()
            cpair = None
            for A2, B2, cc in sym[J]:
                if (A2, B2) == pair:
                    cpair = cc
                    continue
                rest = rest + w[A2] * w[B2] * cc
            num = target(J) - rest
            den = w[A] * cpair
            w[K] = num.exact_div(den)
            unknown.remove(K)
            progress = True
        if not progress:
            raise SignInconsistency(
                "no resolvable wedge coordinate for remaining spinor coefficients"
            )
    # exact global verification
    square = p_of_square(w, ring, m, "even")
    full = {J: target(J) for J in a3}
    full = {J: v for J, v in full.items() if not v.is_zero()}
    if square != full:
        raise SignInconsistency("p(w,w) does not reproduce the multipliers")
    return w


# -- tensor elements and the two embeddings -----------------------------


class TensorElement:
    """Element of S_even tensor S_odd with Poly coefficients."""

    __slots__ = ("ring", "m", "coeffs")

    def __init__(self, ring, coeffs=None, m=5):
        self.ring = ring
        self.m = m
        self.coeffs = {}
        for (K, H), v in (coeffs or {}).items():
            if not v.is_zero():
                if len(K) % 2 or len(H) % 2 == 0:
                    raise ValueError("tensor key has wrong parities")
                self.coeffs[(tuple(K), tuple(H))] = v

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.coeffs == other.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return TensorElement(self.ring, out, self.m)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        if not isinstance(c, Poly):
            c = self.ring.const(c)
        return TensorElement(
            self.ring, {k: v * c for k, v in self.coeffs.items()}, self.m
        )

    def items(self):
        return sorted(
            self.coeffs.items(), key=lambda t: (len(t[0][0]), t[0][0], t[0][1])
        )

    def transfer(self, ring):
        return TensorElement(
            ring, {k: v.transfer(ring) for k, v in self.coeffs.items()}, self.m
        )

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(
            "(%s)*u%s(x)u%s" % (v, subset_label(K), subset_label(H))
            for (K, H), v in self.items()
        )


def rho_on_tensor(theta, t):
    """rho(theta) tensor 1 + 1 tensor rho(theta) on a TensorElement."""
    out = {}
    for (K, H), v in t.coeffs.items():
        left = rho_apply(theta, SpinorElement(t.ring, "even", {K: v}, t.m))
        for K2, v2 in left.coeffs.items():
            key = (K2, H)
            s = out.get(key)
            s = v2 if s is None else s + v2
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        right = rho_apply(theta, SpinorElement(t.ring, "odd", {H: v}, t.m))
        for H2, v2 in right.coeffs.items():
            key = (K, H2)
            s = out.get(key)
            s = v2 if s is None else s + v2
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return TensorElement(t.ring, out, t.m)


_IOTA1 = None
_IOTA2 = None


def embed_trivial(ring=None):
    """The so(10)-invariant vector in S_even tensor S_odd (n = 6).

    Normalized so the u_{} tensor u_{1,2,3,4,5} coefficient is +1.
    """
    global _IOTA1
    if _IOTA1 is None:
        m = 5
        evens = even_subsets(m)
        # ansatz: sum over K of c_K u_K tensor u_{K^c}; solve invariance
        cols = len(evens)
        mat = []
        for theta in all_thetas(m):
            img = {}
            for j, K in enumerate(evens):
                t = TensorElement(
                    _QQ, {(K, complement(K, m)): _QQ.one()}, m
                )
                out = rho_on_tensor(theta, t)
                for key, v in out.coeffs.items():
                    img.setdefault(key, {})[j] = v.constant_value()
            for key, d in img.items():
                mat.append([d.get(j, Fraction(0)) for j in range(cols)])
        _, kernel = solve_rational(mat, [])
        if len(kernel) != 1:
            raise RingError("invariant vector is not unique (dim %d)" % len(kernel))
        vec = kernel[0]
        c0 = vec[0]
        if c0 == 0:
            raise RingError("invariant vector degenerate at the vacuum pair")
        vec = [v / c0 for v in vec]
        _IOTA1 = TensorElement(
            _QQ,
            {
                (K, complement(K, m)): _QQ.const(vec[j])
                for j, K in enumerate(evens)
                if vec[j]
            },
            m,
        )
    if ring is None:
        return _IOTA1
    return _IOTA1.transfer(ring)


def sigma1_table():
    """The invariant-vector sign table: even subset K -> +-1."""
    i1 = embed_trivial()
    out = {}
    for (K, _H), v in i1.coeffs.items():
        c = v.constant_value()
        if abs(c) != 1:
            raise RingError("invariant coefficient %s is not a unit" % c)
        out[K] = 1 if c > 0 else -1
    return out


class SignTable:
    """Calibrated sign data shared by the structure-map layers.

    sigma1: even subset K -> +-1, the coefficients of the invariant vector.
    sigma2: (generator index h, even subset K) -> +-1, the signs entering
    the quadratic expansion of the second-layer maps.
    """

    __slots__ = ("sigma1", "sigma2")

    def __init__(self, sigma1, sigma2):
        self.sigma1 = dict(sigma1)
        self.sigma2 = dict(sigma2)

    def s1(self, K):
        return self.sigma1[tuple(K)]

    def s2(self, h, K):
        return self.sigma2[(h, tuple(K))]


def _iota2_seed():
    """The normalized image of theta_12 = e1 ^ e2 (the calibration anchor)."""
    m = 5
    one = _QQ.one()
    return TensorElement(
        _QQ,
        {
            ((1, 2), (1, 2, 3, 4, 5)): one,
            ((1, 2, 3, 4), (1, 2, 5)): -one,
            ((1, 2, 3, 5), (1, 2, 4)): one,
            ((1, 2, 4, 5), (1, 2, 3)): -one,
        },
        m,
    )


def _build_iota2():
    m = 5
    thetas = all_thetas(m)
    known = {}
    seed_theta = (m + 0, m + 1)  # e1 ^ e2
    known[seed_theta] = _iota2_seed()
    cartan = [(i, m + i) for i in range(m)]  # eh_i ^ e_i
    # propagate over multiplicity-one weights: whenever g.theta is a single
    # non-Cartan basis element, transport the image
    changed = True
    while changed:
        changed = False
        for theta in list(known):
            for g in thetas:
                out = theta_on_theta(g, theta, m)
                terms = [(p, c) for p, c in out.items()]
                if len(terms) != 1:
                    continue
                p, coeff = terms[0]
                if p in known or p in cartan:
                    continue
                img = rho_on_tensor(g, known[theta]).scale(Fraction(1) / coeff)
                known[p] = img
                changed = True
    missing = [t for t in thetas if t not in known and t not in cartan]
    if missing:
        raise RingError("iota2 propagation failed to reach %r" % missing)
    # Cartan images U_i = iota2(eh_i ^ e_i) from pair equations
    # ad(eh_i ^ eh_j)(e_i ^ e_j) = -(eh_i^e_i) - (eh_j^e_j)
    eqs = []
    rhs_keys = set()
    rhs_list = []
    for i in range(m):
        for j in range(i + 1, m):
            g = (i, j)
            theta = (m + i, m + j)
            out = theta_on_theta(g, theta, m)
            row = [Fraction(0)] * m
            extra = TensorElement(_QQ, {}, m)
            for p, c in out.items():
                if p in cartan:
                    row[cartan.index(p)] = c
                else:
                    extra = extra + known[p].scale(c)
            image = rho_on_tensor(g, known[theta]) - extra
            eqs.append(row)
            rhs_list.append(image)
            rhs_keys.update(image.coeffs)
    rhs_keys = sorted(rhs_keys)
    rhs_cols = []
    for key in rhs_keys:
        rhs_cols.append(
            [img.coeffs.get(key, _QQ.zero()).constant_value() for img in rhs_list]
        )
    sols, _ = solve_rational(eqs, rhs_cols)
    for k, sol in enumerate(sols):
        if sol is None:
            raise RingError("inconsistent Cartan image equations for iota2")
    for i in range(m):
        coeffs = {}
        for k, key in enumerate(rhs_keys):
            v = sols[k][i]
            if v:
                coeffs[key] = _QQ.const(v)
        known[cartan[i]] = TensorElement(_QQ, coeffs, m)
    return known


def embed_so(theta, ring=None):
    """iota2: the equivariant embedding of Lambda^2 C^10 into S_even tensor S_odd.

    ``theta`` is a pair (a, b) of G indices with a < b, or a pair of labels
    like ("e1", "e2").
    """
    global _IOTA2
    if _IOTA2 is None:
        _IOTA2 = _build_iota2()
    a, b = theta
    if isinstance(a, str):
        a, b = g_index(a), g_index(b)
    coeff = 1
    if a > b:
        a, b, coeff = b, a, -1
    if a == b:
        t = TensorElement(_QQ, {}, 5)
    else:
        t = _IOTA2[(a, b)]
        if coeff < 0:
            t = t.scale(-1)
    if ring is None:
        return t
    return t.transfer(ring)

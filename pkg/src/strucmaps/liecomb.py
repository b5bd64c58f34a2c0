"""Root systems, Weyl groups, and minuscule representation combinatorics.

The three-legged graphs T(p, q, r) with 1/p + 1/q + 1/r > 1 are exactly
the simply-laced Dynkin diagrams.  This module builds their root systems
and Weyl groups from scratch:

  DynkinGraph          the graph, numbered so that for the E-shaped
                       graphs T(3, q, 2) node 2 is the short leg hanging
                       off node 4 and the long chain reads 1-3-4-5-...
  RootSystem           all roots as integer vectors in the simple-root
                       basis, obtained by reflection closure
  grade_decomposition  dimensions of the integer grading of the Lie
                       algebra read off from the coefficient of a chosen
                       node (the Cartan contributes its rank in degree 0)
  WeylGroup            the Weyl group acting faithfully by permutations
                       of a fundamental-weight orbit; elements carry one
                       reduced word, lengths come from the walk of the
                       all-ones vector, Bruhat order uses the subword
                       criterion, and minimal coset representatives and
                       double cosets are enumerated by breadth-first
                       search on weight orbits
  MinusculeRep         weight basis and Chevalley generator matrices of
                       a minuscule fundamental representation.  In the
                       gauge used here every nonzero matrix entry is +1;
                       the constructor verifies all defining relations
                       (commutation of raising against lowering operators
                       and both Serre relations), which is possible
                       because bicolored squares in a minuscule weight
                       graph always close up and squares in adjacent
                       colors never occur
  plucker_ideal_basis  a basis of the quadrics vanishing on the cone
                       over the highest-weight orbit, computed by
                       solving, weight class by weight class, for the
                       quadratic forms that kill the unipotent big-cell
                       parametrization exp(sum t_k L_k) v_hw
  check_plucker        evaluates those quadrics on a coordinate vector

For the graph E6 with node 1 the orbit has 27 weights split 6/15/6 by
the node-2 level, the Weyl group has order 51840, and the quadric space
has dimension 27.
"""

from collections import deque
from fractions import Fraction

from .ring import Ring

__all__ = [
    "DynkinGraph",
    "DoubleCoset",
    "MinusculeRep",
    "NotFiniteType",
    "NotMinuscule",
    "Quadric",
    "RootSystem",
    "WeylElement",
    "WeylGroup",
    "big_cell_parametrization",
    "bruhat_leq",
    "build_minuscule_rep",
    "check_plucker",
    "double_cosets",
    "grade_decomposition",
    "min_coset_reps",
    "plucker_ideal_basis",
    "weyl_group",
    "weyl_order",
]


class NotFiniteType(ValueError):
    """The graph is of affine or indefinite type, so the requested
    structure (root list, Weyl group, grading) would be infinite."""


class NotMinuscule(ValueError):
    """The chosen fundamental weight is not minuscule: some weight in its
    orbit pairs with a simple coroot to a value outside {-1, 0, 1}."""


class DynkinGraph:
    """Tree with three arms of p-1, q-1 and r-1 nodes joined at a hub.

    Nodes are numbered 1..n with n = p + q + r - 2.  For the E-shaped
    graphs T(3, q, 2) the standard numbering is used: the long chain is
    1 - 3 - 4 - 5 - ... - n and node 2 is attached to node 4.  For every
    other shape the arms are numbered tip to hub: the first arm gets
    1..p-1, the hub is p, the second arm p+1..p+q-1, the third arm
    p+q..n.  ``node_of`` translates arm labels ("u", "x1", "y2", "z1")
    to node numbers.
    """

    __slots__ = ("p", "q", "r", "n", "edges", "_adjacency", "_labels")

    def __init__(self, p, q, r):
        for arm in (p, q, r):
            if not isinstance(arm, int) or arm < 1:
                raise ValueError("arm parameters must be positive integers")
        self.p = p
        self.q = q
        self.r = r
        self.n = p + q + r - 2
        labels = {}
        if p == 3 and r == 2:
            labels["x2"] = 1
            labels["z1"] = 2
            labels["x1"] = 3
            labels["u"] = 4
            for k in range(1, q):
                labels["y%d" % k] = 4 + k
        else:
            for k in range(1, p):
                labels["x%d" % k] = p - k
            labels["u"] = p
            for k in range(1, q):
                labels["y%d" % k] = p + k
            for k in range(1, r):
                labels["z%d" % k] = p + q - 1 + k
        self._labels = labels
        chains = [
            ["x%d" % k for k in range(p - 1, 0, -1)] + ["u"],
            ["u"] + ["y%d" % k for k in range(1, q)],
            ["u"] + ["z%d" % k for k in range(1, r)],
        ]
        edges = set()
        for chain in chains:
            for left, right in zip(chain, chain[1:]):
                a, b = labels[left], labels[right]
                edges.add((min(a, b), max(a, b)))
        self.edges = tuple(sorted(edges))
        adjacency = {i: set() for i in range(1, self.n + 1)}
        for a, b in self.edges:
            adjacency[a].add(b)
            adjacency[b].add(a)
        self._adjacency = {i: tuple(sorted(s)) for i, s in adjacency.items()}

    @classmethod
    def e(cls, n):
        """The diagram E_n = T(3, n-3, 2); finite type for n <= 8."""
        if n < 4:
            raise ValueError("E_n requires n >= 4")
        return cls(3, n - 3, 2)

    @property
    def nodes(self):
        return tuple(range(1, self.n + 1))

    @property
    def is_finite_type(self):
        return (
            Fraction(1, self.p) + Fraction(1, self.q) + Fraction(1, self.r) > 1
        )

    def neighbors(self, i):
        return self._adjacency[i]

    def node_of(self, label):
        return self._labels[label]

    def cartan_matrix(self):
        rows = []
        for i in range(1, self.n + 1):
            row = []
            for j in range(1, self.n + 1):
                if i == j:
                    row.append(2)
                elif j in self._adjacency[i]:
                    row.append(-1)
                else:
                    row.append(0)
            rows.append(tuple(row))
        return tuple(rows)

    def __eq__(self, other):
        if not isinstance(other, DynkinGraph):
            return NotImplemented
        return (self.p, self.q, self.r) == (other.p, other.q, other.r)

    def __hash__(self):
        return hash((DynkinGraph, self.p, self.q, self.r))

    def __repr__(self):
        return "DynkinGraph(%d, %d, %d)" % (self.p, self.q, self.r)


class RootSystem:
    """All roots of a finite-type graph, as coefficient vectors over the
    simple roots, produced by closing the simple roots under the simple
    reflections.  Positive roots are the ones with nonnegative
    coefficients; every root is all-nonnegative or all-nonpositive."""

    __slots__ = ("graph", "cartan", "roots", "positive_roots", "_root_set")

    def __init__(self, graph):
        if not graph.is_finite_type:
            raise NotFiniteType(
                "T(%d, %d, %d) is not of finite type" % (graph.p, graph.q, graph.r)
            )
        self.graph = graph
        self.cartan = graph.cartan_matrix()
        n = graph.n
        simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
        seen = set(simple)
        queue = list(simple)
        while queue:
            c = queue.pop()
            for i in range(1, n + 1):
                image = self.reflect_root(i, c)
                if image not in seen:
                    seen.add(image)
                    queue.append(image)
        self.roots = tuple(sorted(seen, key=lambda c: (sum(c), c)))
        positive = []
        for c in self.roots:
            if all(x >= 0 for x in c):
                positive.append(c)
            elif not all(x <= 0 for x in c):
                raise AssertionError("mixed-sign root %r" % (c,))
        self.positive_roots = tuple(positive)
        if 2 * len(self.positive_roots) != len(self.roots):
            raise AssertionError("positive roots do not halve the root list")
        self._root_set = seen

    @property
    def rank(self):
        return self.graph.n

    def is_root(self, coeffs):
        return tuple(coeffs) in self._root_set

    def coroot_pairing(self, i, coeffs):
        """Pairing of the i-th simple coroot with a root-basis vector."""
        row = self.cartan[i - 1]
        return sum(row[j] * coeffs[j] for j in range(self.graph.n))

    def reflect_root(self, i, coeffs):
        """Simple reflection acting on a vector in the simple-root basis."""
        c = self.coroot_pairing(i, coeffs)
        if c == 0:
            return tuple(coeffs)
        out = list(coeffs)
        out[i - 1] -= c
        return tuple(out)

    def reflect_weight(self, i, coords):
        """Simple reflection acting on a vector in the fundamental-weight
        basis, where the i-th coordinate is the i-th coroot pairing."""
        c = coords[i - 1]
        if c == 0:
            return tuple(coords)
        column = self.cartan[i - 1]
        return tuple(coords[j] - c * column[j] for j in range(self.graph.n))

    def fundamental_weight(self, i):
        return tuple(1 if j == i - 1 else 0 for j in range(self.graph.n))

    def rho(self):
        return (1,) * self.graph.n


def grade_decomposition(graph, node):
    """Dimensions of the integer grading of the Lie algebra of ``graph``
    in which a root contributes to the degree equal to its coefficient
    at ``node``; the Cartan subalgebra adds the rank in degree 0.
    Returns an ascending list of (degree, dimension) pairs."""
    rs = RootSystem(graph)
    counts = {0: graph.n}
    for c in rs.roots:
        d = c[node - 1]
        counts[d] = counts.get(d, 0) + 1
    return sorted(counts.items())


class WeylElement:
    """Group element stored as a permutation of the parent group's weight
    orbit together with one reduced word.  The word (i1, ..., il) means
    the product s_{i1} s_{i2} ... s_{il}, applied to weights with the
    rightmost letter acting first."""

    __slots__ = ("group", "perm", "word")

    def __init__(self, group, perm, word):
        self.group = group
        self.perm = perm
        self.word = word

    @property
    def length(self):
        return len(self.word)

    def _compatible(self, other):
        mine, theirs = self.group, other.group
        return mine is theirs or (
            mine.graph == theirs.graph and mine.node == theirs.node
        )

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self._compatible(other) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __mul__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        if not self._compatible(other):
            raise ValueError("elements belong to different groups")
        perm = tuple(self.perm[other.perm[k]] for k in range(len(self.perm)))
        word = self.group.reduced_word(self.word + other.word)
        return WeylElement(self.group, perm, word)

    def inverse(self):
        inv = [0] * len(self.perm)
        for k, image in enumerate(self.perm):
            inv[image] = k
        word = self.group.reduced_word(tuple(reversed(self.word)))
        return WeylElement(self.group, tuple(inv), word)

    def act_weight(self, coords):
        """Apply the element to a fundamental-weight-basis vector."""
        rs = self.group.root_system
        out = tuple(coords)
        for i in reversed(self.word):
            out = rs.reflect_weight(i, out)
        return out

    def act_root(self, coeffs):
        """Apply the element to a simple-root-basis vector."""
        rs = self.group.root_system
        out = tuple(coeffs)
        for i in reversed(self.word):
            out = rs.reflect_root(i, out)
        return out

    def inversions(self):
        """Number of positive roots sent to negative roots."""
        count = 0
        for c in self.group.root_system.positive_roots:
            image = self.act_root(c)
            if all(x <= 0 for x in image):
                count += 1
        return count

    def __repr__(self):
        return "WeylElement(%s)" % (self.word,)


class WeylGroup:
    """Weyl group of a finite-type graph realized as permutations of the
    orbit of one fundamental weight.  The orbit of any fundamental
    weight spans the reflection representation, so the permutation
    action is faithful.  Weights are listed in the canonical order
    (depth from the fundamental weight, then lexicographic on the
    root-basis coordinates of the drop)."""

    __slots__ = (
        "graph",
        "root_system",
        "node",
        "weights",
        "root_drops",
        "_index",
        "_generators",
        "_identity",
        "_order",
        "_bruhat_cache",
        "_word_cache",
    )

    def __init__(self, graph, node=1):
        self.graph = graph
        self.root_system = RootSystem(graph)
        if node not in graph.nodes:
            raise ValueError("node %r outside the graph" % (node,))
        self.node = node
        orbit = self._weight_orbit(node)
        ordered = sorted(orbit, key=lambda pair: (sum(pair[1]), pair[1]))
        self.weights = tuple(w for w, _ in ordered)
        self.root_drops = tuple(drop for _, drop in ordered)
        self._index = {w: k for k, w in enumerate(self.weights)}
        rs = self.root_system
        gens = {}
        for i in graph.nodes:
            perm = tuple(
                self._index[rs.reflect_weight(i, w)] for w in self.weights
            )
            gens[i] = WeylElement(self, perm, (i,))
        self._generators = gens
        self._identity = WeylElement(
            self, tuple(range(len(self.weights))), ()
        )
        self._order = None
        self._bruhat_cache = {}
        self._word_cache = {}

    def _weight_orbit(self, node):
        """Orbit of the fundamental weight at ``node``; each weight comes
        with the root-basis coordinates of (fundamental weight - weight)."""
        rs = self.root_system
        n = self.graph.n
        start = rs.fundamental_weight(node)
        zero = (0,) * n
        found = {start: zero}
        queue = deque([start])
        while queue:
            w = queue.popleft()
            drop = found[w]
            for i in range(1, n + 1):
                c = w[i - 1]
                if c == 0:
                    continue
                image = rs.reflect_weight(i, w)
                if image not in found:
                    moved = list(drop)
                    moved[i - 1] += c
                    found[image] = tuple(moved)
                    queue.append(image)
        return list(found.items())

    @property
    def degree(self):
        return len(self.weights)

    def weight_index(self, coords):
        return self._index[tuple(coords)]

    @property
    def identity(self):
        return self._identity

    def generator(self, i):
        return self._generators[i]

    @property
    def generators(self):
        return [self._generators[i] for i in self.graph.nodes]

    def reduced_word(self, word):
        """Canonical reduced word of the product of ``word``: repeatedly
        strip the smallest simple reflection that shortens the element,
        watching the image of the all-ones weight vector."""
        word = tuple(word)
        cached = self._word_cache.get(word)
        if cached is not None:
            return cached
        rs = self.root_system
        rho = rs.rho()
        v = rho
        for i in reversed(word):
            if i not in self._generators:
                raise ValueError("letter %r outside the graph" % (i,))
            v = rs.reflect_weight(i, v)
        out = []
        while v != rho:
            for i in range(1, self.graph.n + 1):
                if v[i - 1] < 0:
                    out.append(i)
                    v = rs.reflect_weight(i, v)
                    break
            else:
                raise AssertionError("dominant vector differs from rho")
        result = tuple(out)
        self._word_cache[word] = result
        return result

    def from_word(self, word):
        """Element with the given (not necessarily reduced) word."""
        perm = self._identity.perm
        for i in word:
            gperm = self._generators[i].perm
            perm = tuple(perm[gperm[k]] for k in range(len(perm)))
        return WeylElement(self, perm, self.reduced_word(tuple(word)))

    def order(self):
        """Group order, counted as the orbit of the all-ones weight
        vector (the chambers) under the reflections."""
        if self._order is None:
            rs = self.root_system
            rho = rs.rho()
            seen = {rho}
            frontier = [rho]
            while frontier:
                fresh = []
                for v in frontier:
                    for i in range(1, self.graph.n + 1):
                        image = rs.reflect_weight(i, v)
                        if image not in seen:
                            seen.add(image)
                            fresh.append(image)
                frontier = fresh
            self._order = len(seen)
        return self._order

    def min_coset_reps(self, t=None):
        """Minimal-length representatives of the cosets modulo the
        subgroup generated by all reflections except s_t, enumerated by
        breadth-first search on the orbit of the fundamental weight at
        t.  Returned in order of discovery (by length, then by the
        search's deterministic tie-breaking)."""
        if t is None:
            t = self.node
        rs = self.root_system
        start = rs.fundamental_weight(t)
        words = {start: ()}
        order_list = [start]
        queue = deque([start])
        while queue:
            w = queue.popleft()
            for i in range(1, self.graph.n + 1):
                image = rs.reflect_weight(i, w)
                if image not in words:
                    words[image] = (i,) + words[w]
                    order_list.append(image)
                    queue.append(image)
        return [self.from_word(words[w]) for w in order_list]

    def bruhat_interval_set(self, word):
        """Frozen set of all-ones-vector images of the elements lying
        below the product of the reduced ``word`` in Bruhat order,
        collected by the subword criterion: scanning the word from the
        right, each element either skips the letter or absorbs it on the
        left when that lengthens it."""
        word = tuple(word)
        cached = self._bruhat_cache.get(word)
        if cached is not None:
            return cached
        rs = self.root_system
        rho = rs.rho()
        elems = {rho}
        for i in reversed(word):
            grown = set()
            for v in elems:
                if v[i - 1] > 0:
                    grown.add(rs.reflect_weight(i, v))
            elems |= grown
        result = frozenset(elems)
        self._bruhat_cache[word] = result
        return result

    def bruhat_leq(self, x, y):
        if not x._compatible(y):
            raise ValueError("elements belong to different groups")
        if x.length > y.length:
            return False
        rho = self.root_system.rho()
        return x.act_weight(rho) in self.bruhat_interval_set(y.word)


def weyl_order(graph):
    """Order of the Weyl group by orbit-stabilizer on arm tips.

    The stabilizer of a fundamental weight is the parabolic subgroup
    generated by the reflections omitting its node, so the order is the
    size of the weight orbit at an arm tip times the order of the graph
    with that tip removed, down to the one-node graph of order two.
    This stays cheap for the largest exceptional graphs, where direct
    chamber enumeration is out of reach.
    """
    p, q, r = graph.p, graph.q, graph.r
    if (p, q, r) == (1, 1, 1):
        return 2
    if q >= 2 and q >= p and q >= r:
        tip, rest = "y%d" % (q - 1), DynkinGraph(p, q - 1, r)
    elif p >= 2 and p >= r:
        tip, rest = "x%d" % (p - 1), DynkinGraph(p - 1, q, r)
    else:
        tip, rest = "z%d" % (r - 1), DynkinGraph(p, q, r - 1)
    orbit = len(WeylGroup(graph, graph.node_of(tip)).weights)
    return orbit * weyl_order(rest)


def weyl_group(graph, node=1):
    """Weyl group of ``graph`` in its permutation model on the orbit of
    the fundamental weight at ``node``."""
    return WeylGroup(graph, node)


def bruhat_leq(x, y):
    """Whether x <= y in the strong Bruhat order (subword criterion)."""
    return x.group.bruhat_leq(x, y)


def min_coset_reps(group_or_graph, t=None):
    """Minimal-length coset representatives; accepts a WeylGroup or a
    DynkinGraph (for which the standard permutation model is built)."""
    if isinstance(group_or_graph, DynkinGraph):
        group = WeylGroup(group_or_graph, t if t is not None else 1)
    else:
        group = group_or_graph
    return group.min_coset_reps(t)


class DoubleCoset:
    """One orbit of a parabolic subgroup on a coset space: the indices of
    the orbit's weights inside the parent group's weight list, plus the
    minimal-length representative among the coset representatives."""

    __slots__ = ("representative", "indices")

    def __init__(self, representative, indices):
        self.representative = representative
        self.indices = tuple(indices)

    @property
    def size(self):
        return len(self.indices)

    def __repr__(self):
        return "DoubleCoset(size=%d, rep=%s)" % (
            self.size,
            self.representative.word,
        )


def double_cosets(graph, a, b):
    """Orbits of the parabolic subgroup omitting node ``a`` acting on the
    cosets modulo the parabolic omitting node ``b`` (modelled on the
    orbit of the fundamental weight at b).  Returns DoubleCoset records
    sorted by representative length, then representative word."""
    group = WeylGroup(graph, node=b)
    rs = group.root_system
    base = rs.fundamental_weight(b)
    reps = group.min_coset_reps(b)
    rep_for = {r.act_weight(base): r for r in reps}
    letters = [i for i in graph.nodes if i != a]
    unassigned = set(group.weights)
    cosets = []
    for seed in group.weights:
        if seed not in unassigned:
            continue
        orbit = {seed}
        queue = deque([seed])
        while queue:
            w = queue.popleft()
            for i in letters:
                image = rs.reflect_weight(i, w)
                if image not in orbit:
                    orbit.add(image)
                    queue.append(image)
        unassigned -= orbit
        best = min(
            (rep_for[w] for w in orbit), key=lambda r: (r.length, r.word)
        )
        indices = sorted(group.weight_index(w) for w in orbit)
        cosets.append(DoubleCoset(best, indices))
    cosets.sort(key=lambda dc: (dc.representative.length, dc.representative.word))
    return cosets


def _mat_mul(a, b):
    n = len(a)
    bt = list(zip(*b))
    return tuple(
        tuple(sum(row[k] * col[k] for k in range(n)) for col in bt) for row in a
    )


def _mat_sub(a, b):
    return tuple(
        tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def _mat_is_zero(a):
    return all(all(x == 0 for x in row) for row in a)


def _commutator(a, b):
    return _mat_sub(_mat_mul(a, b), _mat_mul(b, a))


class MinusculeRep:
    """Minuscule fundamental representation on its weight basis.

    ``weights`` lists the orbit in the canonical order (depth from the
    highest weight, then lexicographic root-basis drop), so index 0 is
    the highest weight.  ``e_matrix(i)`` and ``f_matrix(i)`` return the
    Chevalley generator matrices; in the gauge used here every nonzero
    entry is +1 and e_i is the transpose of f_i.  ``root_lowering``
    produces a lowering operator for any positive root by iterated
    commutators.  ``graded_blocks(node)`` splits the weight indices by
    the node's coefficient in the drop; for the graph E6 with node 2
    this is the 6/15/6 splitting."""

    __slots__ = (
        "graph",
        "node",
        "root_system",
        "weights",
        "root_drops",
        "_index",
        "_e",
        "_f",
        "_lowering_cache",
        "_quadrics",
    )

    def __init__(self, graph, node, root_system, weights, root_drops, e_mats, f_mats):
        self.graph = graph
        self.node = node
        self.root_system = root_system
        self.weights = weights
        self.root_drops = root_drops
        self._index = {w: k for k, w in enumerate(weights)}
        self._e = e_mats
        self._f = f_mats
        self._lowering_cache = {}
        self._quadrics = None

    @property
    def dimension(self):
        return len(self.weights)

    def weight_index(self, coords):
        return self._index[tuple(coords)]

    def coroot_pairing(self, i, idx):
        return self.weights[idx][i - 1]

    def e_matrix(self, i):
        return self._e[i]

    def f_matrix(self, i):
        return self._f[i]

    def graded_blocks(self, node):
        """Weight indices grouped by the coefficient of ``node`` in the
        drop from the highest weight, as an ascending list of
        (level, index tuple) pairs."""
        groups = {}
        for k, drop in enumerate(self.root_drops):
            groups.setdefault(drop[node - 1], []).append(k)
        return [(level, tuple(idx)) for level, idx in sorted(groups.items())]

    def root_lowering(self, coeffs):
        """Lowering operator for the positive root ``coeffs``, built by
        commutators of simple lowering operators.  Normalized only up to
        sign and guaranteed nonzero."""
        coeffs = tuple(coeffs)
        cached = self._lowering_cache.get(coeffs)
        if cached is not None:
            return cached
        rs = self.root_system
        if not rs.is_root(coeffs) or not all(x >= 0 for x in coeffs):
            raise ValueError("%r is not a positive root" % (coeffs,))
        if sum(coeffs) == 1:
            mat = self._f[coeffs.index(1) + 1]
        else:
            mat = None
            for i in range(1, self.graph.n + 1):
                if coeffs[i - 1] == 0:
                    continue
                rest = list(coeffs)
                rest[i - 1] -= 1
                rest = tuple(rest)
                if rs.is_root(rest) and all(x >= 0 for x in rest):
                    mat = _commutator(self.root_lowering(rest), self._f[i])
                    break
            if mat is None or _mat_is_zero(mat):
                raise AssertionError(
                    "failed to build lowering operator for %r" % (coeffs,)
                )
        self._lowering_cache[coeffs] = mat
        return mat

    def verify_relations(self):
        """Check the defining relations on the generator matrices: the
        commutator of e_i with f_j is zero for i != j and the coroot
        diagonal for i == j, commuting generators for non-adjacent
        nodes, and the degree-two Serre relations on adjacent nodes."""
        n = self.graph.n
        dim = self.dimension
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                bracket = _commutator(self._e[i], self._f[j])
                if i == j:
                    expected = tuple(
                        tuple(
                            self.weights[a][i - 1] if a == b else 0
                            for b in range(dim)
                        )
                        for a in range(dim)
                    )
                    if bracket != expected:
                        raise ValueError(
                            "coroot relation fails at node %d" % i
                        )
                elif not _mat_is_zero(bracket):
                    raise ValueError(
                        "raising/lowering operators at %d, %d do not commute"
                        % (i, j)
                    )
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                adjacent = j in self.graph.neighbors(i)
                for mats in (self._e, self._f):
                    a, b = mats[i], mats[j]
                    if adjacent:
                        serre = _mat_sub(
                            _mat_sub(
                                _mat_mul(_mat_mul(a, a), b),
                                _mat_mul(_mat_mul(a, b), a),
                            ),
                            _mat_sub(
                                _mat_mul(_mat_mul(a, b), a),
                                _mat_mul(_mat_mul(b, a), a),
                            ),
                        )
                        # serre = a a b - 2 a b a + b a a
                        if not _mat_is_zero(serre):
                            raise ValueError(
                                "Serre relation fails at %d, %d" % (i, j)
                            )
                    elif not _mat_is_zero(_commutator(a, b)):
                        raise ValueError(
                            "generators at non-adjacent %d, %d do not commute"
                            % (i, j)
                        )
        return True


def build_minuscule_rep(graph, node=1):
    """Representation with basis the orbit of the fundamental weight at
    ``node``.  Requires the weight to be minuscule (every orbit weight
    pairs with every simple coroot to -1, 0 or 1); then lowering by a
    simple root is a matching of weight pairs, all matrix entries can be
    taken to be +1, and the defining relations are verified before the
    representation is returned."""
    rs = RootSystem(graph)
    n = graph.n
    start = rs.fundamental_weight(node)
    zero = (0,) * n
    found = {start: zero}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(1, n + 1):
            c = w[i - 1]
            if abs(c) > 1:
                raise NotMinuscule(
                    "weight %r pairs to %d at node %d" % (w, c, i)
                )
            if c == 0:
                continue
            image = rs.reflect_weight(i, w)
            if image not in found:
                drop = list(found[w])
                drop[i - 1] += c
                found[image] = tuple(drop)
                queue.append(image)
    ordered = sorted(found.items(), key=lambda pair: (sum(pair[1]), pair[1]))
    weights = tuple(w for w, _ in ordered)
    drops = tuple(d for _, d in ordered)
    index = {w: k for k, w in enumerate(weights)}
    dim = len(weights)
    e_mats = {}
    f_mats = {}
    for i in range(1, n + 1):
        f_rows = [[0] * dim for _ in range(dim)]
        e_rows = [[0] * dim for _ in range(dim)]
        for a, w in enumerate(weights):
            if w[i - 1] == 1:
                b = index[rs.reflect_weight(i, w)]
                f_rows[b][a] = 1
                e_rows[a][b] = 1
        f_mats[i] = tuple(tuple(row) for row in f_rows)
        e_mats[i] = tuple(tuple(row) for row in e_rows)
    rep = MinusculeRep(graph, node, rs, weights, drops, e_mats, f_mats)
    rep.verify_relations()
    return rep


def big_cell_parametrization(rep):
    """Symbolic point exp(sum_k t_k L_k) v_hw on the cone over the
    highest-weight orbit, where the L_k are lowering operators for the
    positive roots with nonzero coefficient at the representation's
    node (the nilpotent radical opposite the stabilizer of the
    highest-weight line).  Returns (ring, coordinate list)."""
    rs = rep.root_system
    params = sorted(
        (c for c in rs.positive_roots if c[rep.node - 1] > 0),
        key=lambda c: (sum(c), c),
    )
    ring = Ring(tuple("t%d" % (k + 1) for k in range(len(params))))
    sparse = {}
    for k, beta in enumerate(params):
        tvar = ring.var("t%d" % (k + 1))
        mat = rep.root_lowering(beta)
        for r, row in enumerate(mat):
            for c, entry in enumerate(row):
                if entry:
                    key = (r, c)
                    term = tvar * entry
                    sparse[key] = sparse.get(key, ring.zero()) + term
    dim = rep.dimension
    coords = [ring.one() if k == 0 else ring.zero() for k in range(dim)]
    current = list(coords)
    step = 0
    while True:
        step += 1
        if step > dim:
            raise AssertionError("lowering operators are not nilpotent")
        nxt = [ring.zero()] * dim
        for (r, c), entry in sparse.items():
            if not current[c].is_zero():
                nxt[r] = nxt[r] + entry * current[c]
        scale = Fraction(1, step)
        nxt = [p * scale for p in nxt]
        if all(p.is_zero() for p in nxt):
            break
        coords = [a + b for a, b in zip(coords, nxt)]
        current = nxt
    return ring, coords


class Quadric:
    """Quadratic form on the weight coordinates, stored as a mapping from
    index pairs (a, b) with a <= b to rational coefficients.  ``weight``
    is the common torus weight of its monomials."""

    __slots__ = ("index", "weight", "coeffs")

    def __init__(self, index, weight, coeffs):
        self.index = index
        self.weight = weight
        self.coeffs = dict(coeffs)

    def evaluate(self, coords):
        total = None
        for (a, b), coefficient in sorted(self.coeffs.items()):
            term = coords[a] * coords[b] * coefficient
            total = term if total is None else total + term
        return total

    def __repr__(self):
        return "Quadric(index=%d, terms=%d)" % (self.index, len(self.coeffs))


def _value_is_zero(value):
    probe = getattr(value, "is_zero", None)
    if probe is not None:
        return probe()
    return value == 0


def _dependencies(vectors):
    """Rational dependencies among sparse vectors (dicts key -> Fraction):
    returns coefficient tuples c with sum c_k vectors_k = 0, one for each
    vector that reduces to zero against its predecessors."""
    pivots = []
    out = []
    for k, vec in enumerate(vectors):
        row = {key: Fraction(val) for key, val in vec.items() if val}
        combo = [Fraction(0)] * len(vectors)
        combo[k] = Fraction(1)
        for pivot_key, pivot_row, pivot_combo in pivots:
            coeff = row.get(pivot_key)
            if coeff:
                for key, val in pivot_row.items():
                    new = row.get(key, Fraction(0)) - coeff * val
                    if new:
                        row[key] = new
                    else:
                        row.pop(key, None)
                for pos, val in enumerate(pivot_combo):
                    combo[pos] -= coeff * val
        if row:
            lead = min(row)
            inv = Fraction(1) / row[lead]
            row = {key: val * inv for key, val in row.items()}
            combo = [val * inv for val in combo]
            pivots.append((lead, row, combo))
        else:
            out.append(tuple(combo))
    return out


def _normalize_integer(coefficients):
    """Scale a rational vector to coprime integers with positive lead."""
    from math import gcd

    denominator = 1
    for c in coefficients:
        denominator = denominator * c.denominator // gcd(
            denominator, c.denominator
        )
    scaled = [int(c * denominator) for c in coefficients]
    common = 0
    for value in scaled:
        common = gcd(common, abs(value))
    if common > 1:
        scaled = [value // common for value in scaled]
    for value in scaled:
        if value:
            if value < 0:
                scaled = [-v for v in scaled]
            break
    return scaled


def plucker_ideal_basis(rep):
    """Basis of the quadrics vanishing on the cone over the
    highest-weight orbit.  The big-cell parametrization is substituted
    into a general quadratic form; because the vanishing condition is
    stable under the torus, it splits by the sum of the two coordinate
    weights, and each class yields a small exact linear system.  The
    resulting quadrics have coprime integer coefficients with positive
    leading term, are sorted by class weight, and are re-verified
    against the parametrization before being returned."""
    if rep._quadrics is not None:
        return rep._quadrics
    ring, coords = big_cell_parametrization(rep)
    dim = rep.dimension
    classes = {}
    for a in range(dim):
        for b in range(a, dim):
            weight = tuple(
                x + y for x, y in zip(rep.weights[a], rep.weights[b])
            )
            classes.setdefault(weight, []).append((a, b))
    quadrics = []
    for weight in sorted(classes):
        pairs = classes[weight]
        vectors = []
        for a, b in pairs:
            product = coords[a] * coords[b]
            vectors.append(dict(product.terms))
        for combo in _dependencies(vectors):
            normalized = _normalize_integer(list(combo))
            coeffs = {
                pair: Fraction(value)
                for pair, value in zip(pairs, normalized)
                if value
            }
            quadrics.append(Quadric(len(quadrics), weight, coeffs))
    for quadric in quadrics:
        value = quadric.evaluate(coords)
        if value is None or not value.is_zero():
            raise AssertionError(
                "quadric %d fails on the big cell" % quadric.index
            )
    rep._quadrics = tuple(quadrics)
    return rep._quadrics


def check_plucker(quadrics, coords):
    """Evaluate every quadric on the coordinate vector.  Returns
    (True, None) if all vanish, else (False, first violating quadric)."""
    coords = list(coords)
    for quadric in quadrics:
        value = quadric.evaluate(coords)
        if value is None:
            continue
        if not _value_is_zero(value):
            return False, quadric
    return True, None

"""Brute-force verification of the finite-group facts used by the grading
classification: maximal abelian subgroups of (Q_8)^3/K and of
(F^x times Q_8^2)/K, and the two F_2-subspace lemmas behind them.

Quaternion-group elements are pairs (axis, sign) with axis in {1, i, j, k};
an element of (Q_8)^3/K, with K the triples of signs with product one, is
stored canonically as (axis1, axis2, axis3, s) where s folds the product of
the three signs.
"""

from itertools import combinations

from .errors import GroupError

# quaternion multiplication on axes 0..3 = 1, i, j, k: axis and sign bit
_QAX = (
    (0, 1, 2, 3),
    (1, 0, 3, 2),
    (2, 3, 0, 1),
    (3, 2, 1, 0),
)
_QSG = (
    (0, 0, 0, 0),
    (0, 1, 0, 1),
    (0, 1, 1, 0),
    (0, 0, 1, 1),
)

__all__ = [
    "q8_mul",
    "q8_automorphisms",
    "Q83K",
    "maximal_abelian_Q83K",
    "f2_subspace_cases",
    "maximal_abelian_FxQ82K",
]


def q8_mul(x, y):
    """Product in Q_8 of (axis, sign) pairs."""
    (a, s), (b, t) = x, y
    return (_QAX[a][b], s ^ t ^ _QSG[a][b])


def q8_automorphisms():
    """All 24 automorphisms of Q_8, each a dict on (axis, sign) pairs."""
    autos = []
    units = [(a, s) for a in (1, 2, 3) for s in (0, 1)]
    for fi in units:
        for fj in units:
            if fj[0] == fi[0]:
                continue
            images = {(0, 0): (0, 0), (1, 0): fi, (2, 0): fj,
                      (3, 0): q8_mul(fi, fj)}
            phi = {}
            for a in range(4):
                b, t = images[(a, 0)]
                phi[(a, 0)] = (b, t)
                phi[(a, 1)] = (b, t ^ 1)
            for x in phi:
                for y in phi:
                    if phi[q8_mul(x, y)] != q8_mul(phi[x], phi[y]):
                        raise GroupError("generated map is not multiplicative")
            autos.append(phi)
    return autos


class Q83K:
    """The order-128 group (Q_8)^3/K on canonical coset representatives."""

    def __init__(self):
        elems = []
        for a1 in range(4):
            for a2 in range(4):
                for a3 in range(4):
                    for s in range(2):
                        elems.append((a1, a2, a3, s))
        self.elements = tuple(elems)
        self.index = {g: k for k, g in enumerate(elems)}
        self.identity = self.index[(0, 0, 0, 0)]
        n = len(elems)
        mul = []
        for g in elems:
            row = []
            for h in elems:
                c1, t1 = q8_mul((g[0], 0), (h[0], 0))
                c2, t2 = q8_mul((g[1], 0), (h[1], 0))
                c3, t3 = q8_mul((g[2], 0), (h[2], 0))
                row.append(
                    self.index[(c1, c2, c3, g[3] ^ h[3] ^ t1 ^ t2 ^ t3)]
                )
            mul.append(tuple(row))
        self.mul = tuple(mul)
        comm = []
        for g in range(n):
            mask = 0
            for h in range(n):
                if self.mul[g][h] == self.mul[h][g]:
                    mask |= 1 << h
            comm.append(mask)
        self.comm = tuple(comm)
        self.center = frozenset(
            g for g in range(n) if self.comm[g] == (1 << n) - 1
        )

    def closure(self, gens):
        out = {self.identity}
        frontier = list(out)
        for g in gens:
            if g not in out:
                out.add(g)
                frontier.append(g)
        while frontier:
            nxt = []
            for g in frontier:
                for h in list(out):
                    for p in (self.mul[g][h], self.mul[h][g]):
                        if p not in out:
                            out.add(p)
                            nxt.append(p)
            frontier = nxt
        return frozenset(out)

    def order_of(self, g):
        k, x = 1, g
        while x != self.identity:
            x = self.mul[x][g]
            k += 1
        return k

    def order_histogram(self, subset):
        hist = {}
        for g in subset:
            d = self.order_of(g)
            hist[d] = hist.get(d, 0) + 1
        return tuple(sorted(hist.items()))

    def coset(self, triple):
        """Canonical element index of a triple of (axis, sign) pairs."""
        (a1, s1), (a2, s2), (a3, s3) = triple
        return self.index[(a1, a2, a3, s1 ^ s2 ^ s3)]

    def maximal_abelian_subgroups(self):
        full = (1 << len(self.elements)) - 1
        seen = set()
        maximal = set()
        stack = [frozenset([self.identity])]
        while stack:
            A = stack.pop()
            if A in seen:
                continue
            seen.add(A)
            cent = full
            for a in A:
                cent &= self.comm[a]
            ext = [x for x in range(len(self.elements))
                   if (cent >> x) & 1 and x not in A]
            if not ext:
                maximal.add(A)
                continue
            for x in ext:
                stack.append(self.closure(A | {x}))
        return maximal

    def action_maps(self):
        """Index maps for the triples of Q_8-automorphisms and coordinate
        permutations acting on the group."""
        maps = []
        autos = q8_automorphisms()
        for slot in range(3):
            for phi in autos:
                table = []
                for g in self.elements:
                    axes = list(g[:3])
                    b, t = phi[(axes[slot], 0)]
                    axes[slot] = b
                    table.append(
                        self.index[(axes[0], axes[1], axes[2], g[3] ^ t)]
                    )
                maps.append(tuple(table))
        for perm in ((1, 0, 2), (1, 2, 0)):
            table = []
            for g in self.elements:
                axes = tuple(g[p] for p in perm)
                table.append(self.index[axes + (g[3],)])
            maps.append(tuple(table))
        return maps

    def orbits(self, subgroups):
        maps = self.action_maps()
        remaining = set(subgroups)
        orbits = []
        while remaining:
            seed = remaining.pop()
            orbit = {seed}
            frontier = [seed]
            while frontier:
                nxt = []
                for A in frontier:
                    for table in maps:
                        B = frozenset(table[a] for a in A)
                        if B not in orbit:
                            orbit.add(B)
                            nxt.append(B)
                frontier = nxt
            remaining -= orbit
            orbits.append(orbit)
        return orbits


_Z22xZ4 = ((1, 1), (2, 7), (4, 8))


def maximal_abelian_Q83K():
    """Enumerate the maximal abelian subgroups of (Q_8)^3/K.

    Asserts that every one is isomorphic to Z_2^2 x Z_4, that they fall into
    exactly three orbits under triples of Q_8-automorphisms plus coordinate
    permutations, and that the three reference subgroups -- <i>^3/K, the
    tied-diagonal {(x,x,y): y in <i>}K/K, and
    <(i,i,i)K, (j,j,i)K, (i,j,j)K> -- represent the three orbits.
    """
    G = Q83K()
    maximal = G.maximal_abelian_subgroups()
    if len(G.center) != 2:
        raise GroupError("center of (Q_8)^3/K should have order 2")
    for H in maximal:
        if not G.center <= H:
            raise GroupError("a maximal abelian subgroup misses the center")
        if G.order_histogram(H) != _Z22xZ4:
            raise GroupError(
                "maximal abelian subgroup of unexpected isomorphism type %s"
                % (G.order_histogram(H),)
            )
    orbits = G.orbits(maximal)

    I, J = (1, 0), (2, 0)
    one = (0, 0)
    powers_i = [(0, 0), (1, 0), (0, 1), (1, 1)]
    rep1 = frozenset(
        G.coset((x, y, z))
        for x in powers_i for y in powers_i for z in powers_i
    )
    q8 = [(a, s) for a in range(4) for s in range(2)]
    rep2 = frozenset(G.coset((x, x, y)) for x in q8 for y in powers_i)
    rep3 = G.closure(
        [G.coset((I, I, I)), G.coset((J, J, I)), G.coset((I, J, J))]
    )
    reps = (rep1, rep2, rep3)
    for rep in reps:
        if rep not in maximal:
            raise GroupError("a reference subgroup is not maximal abelian")
    homes = []
    for rep in reps:
        homes.extend(k for k, orb in enumerate(orbits) if rep in orb)
    if sorted(homes) != list(range(len(orbits))):
        raise GroupError(
            "reference subgroups do not represent the orbits exactly once"
        )
    return {
        "group_order": len(G.elements),
        "subgroup_count": len(maximal),
        "subgroup_order": 16,
        "isomorphism_type": "Z_2^2 x Z_4",
        "orbit_count": len(orbits),
        "orbit_sizes": tuple(sorted(len(o) for o in orbits)),
        "orbit_representatives": reps,
        "ok": True,
    }


# ---------------------------------------------------------------------------
# F_2-subspace lemmas
# ---------------------------------------------------------------------------


def _proj(v, i):
    return (v >> (2 * i)) & 3


def _indep(x, y):
    return x != 0 and y != 0 and x != y


def _is_conditioned(vs, blocks):
    for b1, b2 in combinations(vs, 2):
        count = sum(
            1 for i in range(blocks) if _indep(_proj(b1, i), _proj(b2, i))
        )
        if count % 2:
            return False
    return True


def _span(vs, v):
    return frozenset(vs) | frozenset(x ^ v for x in vs)


def _dim(vs):
    return len(vs).bit_length() - 1


def _conditioned_subspaces(blocks):
    total = 1 << (2 * blocks)
    zero = frozenset([0])
    seen = {zero}
    stack = [zero]
    while stack:
        B = stack.pop()
        for v in range(1, total):
            if v in B:
                continue
            C = _span(B, v)
            if C in seen or not _is_conditioned(C, blocks):
                continue
            seen.add(C)
            stack.append(C)
    return seen


def _block_intersection_dim(B, keep, blocks):
    mask = 0
    for i in keep:
        mask |= 3 << (2 * i)
    sub = frozenset(v for v in B if v & ~mask == 0)
    return _dim(sub), sub


def _proj_dim(B, i):
    img = {_proj(v, i) for v in B}
    span = {0}
    for v in img:
        if v not in span:
            span |= {x ^ v for x in span}
    return _dim(frozenset(span))


def _match_family1(B, blocks):
    parts = []
    for i in range(blocks):
        d, sub = _block_intersection_dim(B, (i,), blocks)
        if d != 1:
            return False
        parts.append(sub)
    rebuilt = frozenset([0])
    for sub in parts:
        v = max(sub)
        rebuilt = _span(rebuilt, v)
    return rebuilt == B


def _graph_iso(W, i, j):
    """The map proj_i -> proj_j defined by a subspace W of A_i + A_j, or
    None when it is not the graph of a linear isomorphism."""
    table = {}
    for w in W:
        table.setdefault(_proj(w, i), set()).add(_proj(w, j))
    if len(table) != 4 or any(len(v) != 1 for v in table.values()):
        return None
    f = {k: v.pop() for k, v in table.items()}
    if set(f.values()) != {0, 1, 2, 3} or f[0] != 0:
        return None
    return f


def _match_family2(B, blocks, line_block):
    others = [i for i in range(blocks) if i != line_block]
    dline, line = _block_intersection_dim(B, (line_block,), blocks)
    if dline != 1:
        return False
    dW, W = _block_intersection_dim(B, others, blocks)
    if dW != 2 or _graph_iso(W, others[0], others[1]) is None:
        return False
    rebuilt = W
    rebuilt = _span(rebuilt, max(line))
    return rebuilt == B


def _match_family3(B):
    for i in range(3):
        if _block_intersection_dim(B, (i,), 3)[0] != 0:
            return False
        if _proj_dim(B, i) != 2:
            return False
    d12, W12 = _block_intersection_dim(B, (0, 1), 3)
    d13, W13 = _block_intersection_dim(B, (0, 2), 3)
    d23, W23 = _block_intersection_dim(B, (1, 2), 3)
    if (d12, d13, d23) != (1, 1, 1):
        return False
    w12, w13, w23 = max(W12), max(W13), max(W23)
    if _proj(w12, 0) != _proj(w13, 0) or _proj(w12, 0) == 0:
        return False
    if w12 ^ w13 ^ w23 != 0:
        return False
    v = next(x for x in B if x not in _span(frozenset([0, w12]), w13))
    b, a = _proj(w12, 0), _proj(v, 0)
    f2 = {0: 0, b: _proj(w12, 1), a: _proj(v, 1), a ^ b: _proj(w12, 1) ^ _proj(v, 1)}
    f3 = {0: 0, b: _proj(w13, 2), a: _proj(v, 2), a ^ b: _proj(w13, 2) ^ _proj(v, 2)}
    if set(f2.values()) != {0, 1, 2, 3} or set(f3.values()) != {0, 1, 2, 3}:
        return False
    rebuilt = frozenset([0])
    for x in (v, w12, w13):
        rebuilt = _span(rebuilt, x)
    return rebuilt == B


def f2_subspace_cases(blocks):
    """Exhaust the subspace lemma over F_2^2-blocks.

    A subspace B of a sum of ``blocks`` copies of F_2^2 is *conditioned*
    when, for every pair b1, b2 in B, the number of blocks onto which the
    span of b1, b2 projects surjectively is even.  For three blocks the
    maximal conditioned subspaces are classified into three families (up to
    reordering the blocks); for two blocks every conditioned subspace is
    either inside a product of two lines or the graph of an isomorphism.
    """
    if blocks not in (2, 3):
        raise GroupError("blocks must be 2 or 3")
    cond = _conditioned_subspaces(blocks)
    total = 1 << (2 * blocks)
    maximal = set()
    for B in cond:
        if all(
            v in B or not _is_conditioned(_span(B, v), blocks)
            for v in range(1, total)
        ):
            maximal.add(B)

    if blocks == 3:
        families = {1: set(), 2: set(), 3: set()}
        for B in maximal:
            if _dim(B) != 3:
                raise GroupError("a maximal conditioned subspace is not 3-dim")
            hits = []
            if _match_family1(B, 3):
                hits.append(1)
            if any(_match_family2(B, 3, lb) for lb in range(3)):
                hits.append(2)
            if _match_family3(B):
                hits.append(3)
            if len(hits) != 1:
                raise GroupError(
                    "subspace matches families %s, expected exactly one" % hits
                )
            families[hits[0]].add(B)
        if any(not fam for fam in families.values()):
            raise GroupError("some family of the three-block lemma is empty")
        return {
            "blocks": 3,
            "conditioned_count": len(cond),
            "maximal_count": len(maximal),
            "family_counts": {k: len(v) for k, v in families.items()},
            "families": families,
            "ok": True,
        }

    families = {1: set(), 2: set()}
    for B in cond:
        in1 = _proj_dim(B, 0) <= 1 and _proj_dim(B, 1) <= 1
        in2 = _dim(B) == 2 and _graph_iso(B, 0, 1) is not None
        if in1 == in2:
            raise GroupError(
                "two-block subspace fits %d families, expected exactly one"
                % (int(in1) + int(in2))
            )
        families[1 if in1 else 2].add(B)
    return {
        "blocks": 2,
        "conditioned_count": len(cond),
        "maximal_count": len(maximal),
        "maximal": maximal,
        "family_counts": {k: len(v) for k, v in families.items()},
        "families": families,
        "ok": True,
    }


# ---------------------------------------------------------------------------
# maximal abelian subgroups of (F^x times Q_8 times Q_8)/K
# ---------------------------------------------------------------------------


def _q8_pairs():
    return [((a, s), (b, t))
            for a in range(4) for s in range(2)
            for b in range(4) for t in range(2)]


def _commutator_sign(x, y):
    """Sign bit of the Q_8 commutator x y x^-1 y^-1 (always +-1)."""
    a, b = x[0], y[0]
    return 1 if (a and b and a != b) else 0


def _pair_commutes(p, q):
    # two classes commute in the quotient iff the two coordinate
    # commutators carry the same sign
    return _commutator_sign(p[0], q[0]) == _commutator_sign(p[1], q[1])


def _pair_class(p):
    return p[0][0] | (p[1][0] << 2)


def maximal_abelian_FxQ82K():
    """Maximal abelian subgroups of (F^x x Q_8 x Q_8)/K, up to couples of
    Q_8-automorphisms.

    The torus factor is central and never enumerated: the quotient modulo
    the center is (Q_8/{+-1})^2 = F_2^4 and commutation descends to the
    two-block subspace condition, so the maximal abelian subgroups are the
    preimages of the maximal conditioned subspaces.  Verifies there are
    exactly two families: the product of two cyclic subgroups <i>, and the
    diagonal {(x,x)} family.
    """
    cases = f2_subspace_cases(2)
    maximal = cases["maximal"]
    for B in maximal:
        if _dim(B) != 2:
            raise GroupError("a maximal two-block subspace is not 2-dim")

    rectangles = {B for B in cases["families"][1] if B in maximal}
    graphs = {B for B in cases["families"][2] if B in maximal}
    if rectangles | graphs != maximal:
        raise GroupError("maximal subspaces escape the two families")

    # the lift of each maximal subspace is abelian and self-centralizing
    pairs = _q8_pairs()
    for B in maximal:
        lift = [p for p in pairs if _pair_class(p) in B]
        if len(lift) != 4 * len(B):
            raise GroupError("lift has the wrong size")
        for p, q in combinations(lift, 2):
            if not _pair_commutes(p, q):
                raise GroupError("the lift of a maximal subspace is not abelian")
        for q in pairs:
            if _pair_class(q) in B:
                continue
            if all(_pair_commutes(p, q) for p in lift):
                raise GroupError("the lift of a maximal subspace is not maximal")

    # orbits under couples of Q_8-automorphisms (acting through GL_2(F_2)
    # on each block)
    induced = set()
    for phi in q8_automorphisms():
        induced.add(tuple(phi[(a, 0)][0] for a in range(4)))
    gens = [(f, None) for f in induced] + [(None, f) for f in induced]

    def act(B, gen):
        f, g = gen
        out = set()
        for v in B:
            x, y = v & 3, v >> 2
            if f is not None:
                x = f[x]
            if g is not None:
                y = g[y]
            out.add(x | (y << 2))
        return frozenset(out)

    remaining = set(maximal)
    orbits = []
    while remaining:
        seed = remaining.pop()
        orbit = {seed}
        frontier = [seed]
        while frontier:
            nxt = []
            for B in frontier:
                for gen in gens:
                    C = act(B, gen)
                    if C not in orbit:
                        orbit.add(C)
                        nxt.append(C)
            frontier = nxt
        remaining -= orbit
        orbits.append(orbit)
    if len(orbits) != 2:
        raise GroupError("expected exactly two orbits, found %d" % len(orbits))

    rep_rect = frozenset([0, 1, 1 << 2, 1 | (1 << 2)])  # <i> x <i>
    rep_diag = frozenset([0, 1 | (1 << 2), 2 | (2 << 2), 3 | (3 << 2)])
    if rep_rect not in rectangles or rep_diag not in graphs:
        raise GroupError("reference subspaces are not where expected")
    homes = [k for k, orb in enumerate(orbits) if rep_rect in orb]
    homes += [k for k, orb in enumerate(orbits) if rep_diag in orb]
    if sorted(homes) != [0, 1]:
        raise GroupError("reference subspaces do not split the two orbits")

    # the diagonal representative lifts to {(x, +-x)}: the sign ambiguity
    # is exactly the kernel of the class map
    diag_lift = {p for p in pairs if _pair_class(p) in rep_diag}
    expected = set()
    for a in range(4):
        for s in range(2):
            for t in range(2):
                expected.add(((a, s), (a, t)))
    if diag_lift != expected:
        raise GroupError("the diagonal family does not lift to {(x,+-x)}")

    return {
        "maximal_count": len(maximal),
        "rectangle_count": len(rectangles),
        "graph_count": len(graphs),
        "orbit_count": len(orbits),
        "orbit_sizes": tuple(sorted(len(o) for o in orbits)),
        "center_index": 4,
        "ok": True,
    }

"""Graded quadratic spaces and even Clifford algebras, with classification.

An odd-dimensional quadratic space carrying a compatible grading by an
abelian group (the form pairs degree g only with degree -g) normalizes to
hyperbolic pairs (u_i, v_i) of degrees (g_i, -g_i) with q(u_i, v_i) = 1 plus
anisotropic vectors w_j with q(w_j) = 1 whose degrees h_j are 2-torsion,
pairwise distinct, and sum to zero.  The even Clifford algebra inherits the
grading, and its graded-division class -- F, Q, Q (x) Q or Q (x) Q (x) Q --
is computed along two independent routes that must agree:

* ``division_class`` extracts a minimal graded left ideal, its degree-0
  idempotent e, and the coefficient algebra e R e, and reads the class off
  the size of the support;
* ``dim7_case_classify`` pattern-matches the normalized degree data against
  the ten-case table for dimension 7 without touching the algebra at all.

The module also houses the two concrete models used downstream: left
multiplication identifying the even Clifford algebra of the split octonions
(trace-zero part, negated norm) with all 8x8 matrices, and the quaternion
cube acting on a rank-4 free module by a skew-hermitian-compatible
representation.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

from .constructions import BuiltAlgebra, build_cayley, build_quaternions
from .errors import CliffordError
from .linalg import Mat, inverse, rank, solve, sparse_row_reduce, vec_add, vec_scale
from .scalars import HALF, IUNIT, MINUS_ONE, ONE, ZERO, scalar
from .superalg import LinMap, SuperAlgebra

__all__ = [
    "DivisionClass",
    "GradedQuadraticSpace",
    "scalar_sqrt",
    "clifford_algebra",
    "normalize_quadratic_basis",
    "build_even_clifford",
    "division_class",
    "dim7_case_classify",
    "check_uuv_factorization",
    "verify_octonion_clifford_model",
    "verify_quaternion_clifford_model",
]


def scalar_sqrt(c):
    """A square root of a constant scalar of the form +-(rational square).

    Positive squares get their rational root, negated squares i times it;
    anything else raises :class:`CliffordError`.  This is all the
    root-taking the normalization steps are entitled to.
    """
    s = scalar(c)
    if not s.is_constant():
        raise CliffordError("cannot take a square root of %s" % s)
    cyc = s.constant_value()
    if not cyc.is_rational():
        raise CliffordError("cannot take a square root of the non-rational %s" % s)
    val = cyc.to_fraction()
    if val == 0:
        return ZERO
    mag = abs(val)
    num, den = mag.numerator, mag.denominator
    rn, rd = _isqrt(num), _isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise CliffordError("%s is not a rational square up to sign" % s)
    root = scalar(Fraction(rn, rd))
    return root if val > 0 else IUNIT * root


def _isqrt(k):
    from math import isqrt

    return isqrt(k)


def _as_fraction(x):
    s = scalar(x)
    if not s.is_constant():
        raise CliffordError("Gram entry %s is not constant" % s)
    cyc = s.constant_value()
    if not cyc.is_rational():
        raise CliffordError("Gram entry %s is not rational" % s)
    return cyc.to_fraction()


# ---------------------------------------------------------------------------
# Clifford algebra on a polar Gram matrix
# ---------------------------------------------------------------------------


def _straighten(word, polar, squares):
    """Reduce a word in the generators to the square-free increasing basis.

    Uses x_a x_b = -x_b x_a + B_ab for a > b and x_a^2 = B_aa / 2; returns
    {sorted_word: Fraction}.
    """
    out = {}
    stack = [(list(word), Fraction(1))]
    while stack:
        w, c = stack.pop()
        for p in range(len(w) - 1):
            a, b = w[p], w[p + 1]
            if a == b:
                if squares[a]:
                    stack.append((w[:p] + w[p + 2 :], c * squares[a]))
                break
            if a > b:
                stack.append((w[:p] + [b, a] + w[p + 2 :], -c))
                if polar[a][b]:
                    stack.append((w[:p] + w[p + 2 :], c * polar[a][b]))
                break
        else:
            key = tuple(w)
            tot = out.get(key, Fraction(0)) + c
            if tot:
                out[key] = tot
            else:
                out.pop(key, None)
    return out


def _mono_name(names, word):
    return "*".join(names[t] for t in word) if word else "1"


def clifford_algebra(names, gram):
    """Full Clifford algebra of a quadratic space with polar Gram matrix B.

    Generators satisfy x_i x_j + x_j x_i = B_ij (hence x_i^2 = B_ii/2);
    the basis is the 2^n square-free increasing monomials ordered by length
    then lexicographically, with parity = length mod 2.  Returns
    ``(algebra, words)`` where ``words[k]`` is the index tuple of basis
    monomial k.  Gram entries must be rational.
    """
    n = len(names)
    if n > 7:
        raise CliffordError("dimension %d quadratic space is out of scope" % n)
    if isinstance(gram, Mat):
        rows = [[gram[(i, j)] for j in range(n)] for i in range(n)]
    else:
        rows = [list(r) for r in gram]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise CliffordError("Gram matrix shape does not match the basis")
    B = [[_as_fraction(rows[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            if B[i][j] != B[j][i]:
                raise CliffordError("Gram matrix is not symmetric")
    squares = [B[i][i] / 2 for i in range(n)]
    words = [w for k in range(n + 1) for w in combinations(range(n), k)]
    index = {w: k for k, w in enumerate(words)}
    table = {}
    for ia, wa in enumerate(words):
        for ib, wb in enumerate(words):
            acc = _straighten(wa + wb, B, squares)
            if acc:
                table[(ia, ib)] = [(index[w], scalar(c)) for w, c in acc.items()]
    mono_names = tuple(_mono_name(names, w) for w in words)
    parities = tuple(len(w) % 2 for w in words)
    return SuperAlgebra(mono_names, parities, table), tuple(words)


# ---------------------------------------------------------------------------
# graded quadratic spaces and their normal form
# ---------------------------------------------------------------------------


class GradedQuadraticSpace:
    """Odd-dimensional graded quadratic space in normal form.

    Basis order u_1, v_1, ..., u_m, v_m, w_1, ..., w_{2l+1}: hyperbolic
    pairs with degrees (g_i, -g_i) and q(u_i, v_i) = 1, then anisotropic
    vectors with q(w_j) = 1 and 2-torsion degrees h_j that are pairwise
    distinct and sum to zero.  ``basis`` (optional) holds the normalized
    basis as columns over the original coordinates, ``shift`` the global
    degree shift that was applied, and ``trace`` the normalization log.
    """

    def __init__(
        self,
        group,
        pair_degrees,
        unit_degrees,
        names=None,
        basis=None,
        shift=None,
        trace=(),
    ):
        pair_degrees = tuple(pair_degrees)
        unit_degrees = tuple(unit_degrees)
        if len(unit_degrees) % 2 == 0:
            raise CliffordError("a normalized space needs an odd anisotropic part")
        for h in unit_degrees:
            if not (h + h).is_zero():
                raise CliffordError(
                    "anisotropic degree %s is not 2-torsion" % h.literal()
                )
        if len(set(unit_degrees)) != len(unit_degrees):
            raise CliffordError("anisotropic degrees must be pairwise distinct")
        total = group.zero()
        for h in unit_degrees:
            total = total + h
        if not total.is_zero():
            raise CliffordError("anisotropic degrees must sum to zero")
        self.group = group
        self.pair_degrees = pair_degrees
        self.unit_degrees = unit_degrees
        self.m = len(pair_degrees)
        self.l = (len(unit_degrees) - 1) // 2
        if names is None:
            names = []
            for i in range(self.m):
                names += ["u%d" % (i + 1), "v%d" % (i + 1)]
            names += ["w%d" % (j + 1) for j in range(len(unit_degrees))]
        self.names = tuple(names)
        if len(self.names) != self.dim:
            raise CliffordError("name count does not match the dimension")
        self.basis = basis
        self.shift = shift
        self.trace = tuple(trace)

    @property
    def dim(self):
        return 2 * self.m + len(self.unit_degrees)

    @property
    def degrees(self):
        out = []
        for g in self.pair_degrees:
            out.append(g)
            out.append(-g)
        out.extend(self.unit_degrees)
        return tuple(out)

    def gram(self):
        """Canonical polar Gram matrix in the normalized basis."""
        n = self.dim
        rows = [[ZERO] * n for _ in range(n)]
        for i in range(self.m):
            rows[2 * i][2 * i + 1] = ONE
            rows[2 * i + 1][2 * i] = ONE
        two = scalar(2)
        for j in range(len(self.unit_degrees)):
            k = 2 * self.m + j
            rows[k][k] = two
        return Mat(tuple(tuple(r) for r in rows))

    def __repr__(self):
        return "GradedQuadraticSpace(m=%d, l=%d, group=%s)" % (
            self.m,
            self.l,
            self.group.literal(),
        )


def _default_gram(degrees):
    """Canonical Gram data: q = 1 on 2-torsion vectors, successive opposite
    non-2-torsion degrees paired with q(x, y) = 1."""
    n = len(degrees)
    rows = [[ZERO] * n for _ in range(n)]
    two = scalar(2)
    open_slots = {}
    for i, d in enumerate(degrees):
        if (d + d).is_zero():
            rows[i][i] = two
            continue
        waiting = open_slots.get(-d)
        if waiting:
            j = waiting.pop(0)
            rows[i][j] = ONE
            rows[j][i] = ONE
        else:
            open_slots.setdefault(d, []).append(i)
    leftovers = [i for lst in open_slots.values() for i in lst]
    if leftovers:
        raise CliffordError(
            "no partner of opposite degree for basis vector(s) %s"
            % ", ".join(str(i + 1) for i in sorted(leftovers))
        )
    return rows


def _gram_schmidt(vecs, bform):
    """Orthogonal basis of the span for a nondegenerate symmetric form."""
    rest = [tuple(v) for v in vecs]
    out = []
    while rest:
        k = next((i for i, v in enumerate(rest) if not bform(v, v).is_zero()), None)
        if k is None:
            v0 = rest[0]
            j = next(
                (j for j in range(1, len(rest)) if not bform(v0, rest[j]).is_zero()),
                None,
            )
            if j is None:
                raise CliffordError("degenerate 2-torsion component")
            rest[0] = vec_add(v0, rest[j])
            continue
        z = rest.pop(k)
        qz = bform(z, z)
        out.append(z)
        rest = [
            vec_add(v, vec_scale(-(bform(z, v) * qz.inverse()), z)) for v in rest
        ]
    return out


def normalize_quadratic_basis(group, degrees, gram=None):
    """Normal form of a compatibly graded odd-dimensional quadratic space.

    ``degrees`` holds one group element per basis vector; ``gram`` is the
    polar Gram matrix (a Mat or nested sequence, scalar entries), defaulting
    to the canonical one.  Components of non-2-torsion degree dualize into
    hyperbolic pairs; 2-torsion components are orthogonalized and rescaled
    to q = 1 (each length must be a rational square up to sign), equal
    degrees merge pairwise into further hyperbolic pairs, and a final global
    2-torsion shift makes the anisotropic degrees sum to zero.
    """
    degrees = tuple(degrees)
    n = len(degrees)
    if n % 2 == 0:
        raise CliffordError("even-dimensional spaces are unsupported")
    if gram is None:
        rows = _default_gram(degrees)
    elif isinstance(gram, Mat):
        rows = [[scalar(gram[(i, j)]) for j in range(n)] for i in range(n)]
    else:
        rows = [[scalar(x) for x in r] for r in gram]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise CliffordError("Gram matrix shape does not match the degree list")
    for i in range(n):
        for j in range(n):
            if rows[i][j] != rows[j][i]:
                raise CliffordError("Gram matrix is not symmetric")
            if not rows[i][j].is_zero() and not (degrees[i] + degrees[j]).is_zero():
                raise CliffordError(
                    "Gram pairs degree %s with %s (entry %d,%d); the grading "
                    "is not compatible"
                    % (degrees[i].literal(), degrees[j].literal(), i + 1, j + 1)
                )
    gmat = Mat(tuple(tuple(r) for r in rows))
    if rank(gmat) != n:
        raise CliffordError("the quadratic form is degenerate")

    def bform(x, y):
        acc = ZERO
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            for j, yj in enumerate(y):
                if yj.is_zero() or rows[i][j].is_zero():
                    continue
                acc = acc + xi * rows[i][j] * yj
        return acc

    def unitvec(i):
        return tuple(ONE if t == i else ZERO for t in range(n))

    comp_order = []
    comps = {}
    for i, d in enumerate(degrees):
        if d not in comps:
            comp_order.append(d)
        comps.setdefault(d, []).append(i)

    trace = []
    pairs = []
    handled = set()
    for g in comp_order:
        if g in handled or (g + g).is_zero():
            continue
        handled.add(g)
        handled.add(-g)
        plus = comps.get(g, [])
        minus = comps.get(-g, [])
        if len(plus) != len(minus):
            raise CliffordError(
                "degrees %s and %s pair off with unequal dimensions"
                % (g.literal(), (-g).literal())
            )
        C = Mat(
            tuple(
                tuple(rows[a][b] for b in minus) for a in plus
            )
        )
        X = inverse(C)
        for t, a in enumerate(plus):
            u = unitvec(a)
            v = [ZERO] * n
            for c, b in enumerate(minus):
                v[b] = X[(c, t)]
            pairs.append((u, tuple(v), g))
        trace.append(
            "degrees %s / %s: %d hyperbolic pair(s) by duality"
            % (g.literal(), (-g).literal(), len(plus))
        )

    unit_groups = []
    for g in comp_order:
        if not (g + g).is_zero():
            continue
        vecs = [unitvec(i) for i in comps[g]]
        ortho = _gram_schmidt(vecs, bform)
        ws = []
        rescaled = 0
        for z in ortho:
            c = bform(z, z) * HALF
            r = scalar_sqrt(c)
            if r != ONE:
                rescaled += 1
            ws.append(vec_scale(r.inverse(), z))
        note = "degree %s: %d unit vector(s)" % (g.literal(), len(ws))
        if len(vecs) > 1:
            note += ", orthogonalized"
        if rescaled:
            note += ", %d rescaled" % rescaled
        trace.append(note)
        unit_groups.append((g, ws))

    units = []
    for g, ws in unit_groups:
        while len(ws) >= 2:
            w1 = ws.pop(0)
            w2 = ws.pop(0)
            u = vec_scale(HALF, vec_add(w1, vec_scale(IUNIT, w2)))
            v = vec_scale(HALF, vec_add(w1, vec_scale(-IUNIT, w2)))
            if bform(u, v) != ONE or not bform(u, u).is_zero():
                raise CliffordError("merge produced a non-hyperbolic pair")
            pairs.append((u, v, g))
            trace.append(
                "degree %s: merged two unit vectors into a hyperbolic pair"
                % g.literal()
            )
        if ws:
            units.append((ws[0], g))

    s = group.zero()
    for _, h in units:
        s = s + h
    if not s.is_zero():
        trace.append("applied the global shift %s" % s.literal())
    pair_degs = [g + s for (_, _, g) in pairs]
    unit_degs = [h + s for (_, h) in units]

    cols = [c for (u, v, _) in pairs for c in (u, v)]
    cols += [w for (w, _) in units]
    P = Mat.from_cols(cols, nrows=n)
    space = GradedQuadraticSpace(
        group, pair_degs, unit_degs, basis=P, shift=s, trace=trace
    )
    # the normalized Gram matrix must come out canonical
    canon = space.gram()
    for a in range(n):
        for b in range(n):
            if bform(P.col(a), P.col(b)) != canon[(a, b)]:
                raise CliffordError("normalization failed to reach the normal form")
    return space


# ---------------------------------------------------------------------------
# even Clifford algebra
# ---------------------------------------------------------------------------


def build_even_clifford(space, verify=True):
    """Even Clifford algebra of a normalized graded quadratic space.

    Returns a :class:`BuiltAlgebra` of dimension 2^(dim-1) with the induced
    grading.  Extras: the full Clifford algebra and its monomial words, the
    central element z = [u_1,v_1]...[u_m,v_m] w_1...w_{2l+1} with its square
    (-1)^l, the bar anti-involution (identity on the space, reversal on
    monomials) on both the full and even algebras, and the bracket span
    realizing so(U, q) inside the even part.
    """
    n = space.dim
    full, words = clifford_algebra(space.names, space.gram())
    even = tuple(k for k, w in enumerate(words) if len(w) % 2 == 0)
    pos = {k: t for t, k in enumerate(even)}
    table = {}
    for (i, j), entries in full.table.items():
        if i in pos and j in pos:
            table[(pos[i], pos[j])] = [(pos[k], c) for k, c in entries]
    alg = SuperAlgebra(
        tuple(full.names[k] for k in even), (0,) * len(even), table
    )

    degs = space.degrees
    full_deg = []
    for w in words:
        d = space.group.zero()
        for t in w:
            d = d + degs[t]
        full_deg.append(d)
    mono_deg = tuple(full_deg[k] for k in even)
    gradings = {space.group.literal(): (space.group, mono_deg)}

    gen = [full.basis_vec(1 + t) for t in range(n)]
    z = full.basis_vec(0)
    for i in range(space.m):
        u, v = gen[2 * i], gen[2 * i + 1]
        br = tuple(
            a - b
            for a, b in zip(full.multiply(u, v), full.multiply(v, u))
        )
        z = full.multiply(z, br)
    for j in range(len(space.unit_degrees)):
        z = full.multiply(z, gen[2 * space.m + j])
    z2 = full.multiply(z, z)
    zsq = z2[0]
    if any(not c.is_zero() for c in z2[1:]):
        raise CliffordError("z^2 is not scalar")
    want = ONE if space.l % 2 == 0 else MINUS_ONE
    if zsq != want:
        raise CliffordError("z^2 = %s, expected (-1)^l" % zsq)

    cols = []
    for w in words:
        acc = full.basis_vec(0)
        for t in reversed(w):
            acc = full.multiply(acc, gen[t])
        if len(w) % 2:
            acc = tuple(-c for c in acc)
        cols.append(acc)
    bar = LinMap(full, full, Mat.from_cols(cols, nrows=full.dim))
    bar_even = LinMap(
        alg,
        alg,
        Mat.from_cols(
            [tuple(cols[k][r] for r in even) for k in even], nrows=len(even)
        ),
    )

    so_pairs = tuple((i, j) for i in range(n) for j in range(i + 1, n))
    so_span = []
    for (i, j) in so_pairs:
        br = tuple(
            a - b
            for a, b in zip(
                full.multiply(gen[i], gen[j]), full.multiply(gen[j], gen[i])
            )
        )
        so_span.append(tuple(br[k] for k in even))

    built = BuiltAlgebra(
        alg,
        gradings,
        extras={
            "space": space,
            "full": full,
            "words": words,
            "even_indices": even,
            "full_degrees": tuple(full_deg),
            "z": z,
            "zsquare": zsq,
            "bar": bar,
            "bar_even": bar_even,
            "so_pairs": so_pairs,
            "so_span": tuple(so_span),
        },
    )
    if verify:
        _verify_even_clifford(built)
    return built


def _span_solver(cols, dim):
    """Exact solver onto the column span: returns solve(vec) -> coeffs|None."""
    S = Mat.from_cols(cols, nrows=dim)
    k = len(cols)
    rows = []
    for r in range(dim):
        cand = rows + [r]
        if rank(Mat(tuple(tuple(S[(i, c)] for c in range(k)) for i in cand))) == len(
            cand
        ):
            rows.append(r)
        if len(rows) == k:
            break
    if len(rows) != k:
        raise CliffordError("span columns are linearly dependent")
    Minv = inverse(Mat(tuple(tuple(S[(r, c)] for c in range(k)) for r in rows)))

    def solve_in_span(vec):
        coeffs = Minv.apply(tuple(vec[r] for r in rows))
        if S.apply(coeffs) != tuple(vec):
            return None
        return coeffs

    return solve_in_span


def _verify_even_clifford(built):
    space = built.extras["space"]
    full = built.extras["full"]
    n = space.dim
    gen = [full.basis_vec(1 + t) for t in range(n)]
    gram = space.gram()
    z = built.extras["z"]

    for g in gen:
        if full.multiply(z, g) != full.multiply(g, z):
            raise CliffordError("z is not central")

    bar = built.extras["bar"]
    cols = [bar.matrix.col(k) for k in range(full.dim)]

    def bar_of(vec):
        out = [ZERO] * full.dim
        for t, c in enumerate(vec):
            if c.is_zero():
                continue
            for r, v in enumerate(cols[t]):
                if not v.is_zero():
                    out[r] = out[r] + c * v
        return tuple(out)

    full_deg = built.extras["full_degrees"]
    for k in range(full.dim):
        if bar_of(cols[k]) != full.basis_vec(k):
            raise CliffordError("bar is not an involution")
        for r, c in enumerate(cols[k]):
            if not c.is_zero() and full_deg[r] != full_deg[k]:
                raise CliffordError("bar moves a homogeneous component")
    for i in range(n):
        barg = cols[1 + i]
        for k in range(full.dim):
            lhs = bar_of(full.multiply(gen[i], full.basis_vec(k)))
            rhs = full.multiply(cols[k], barg)
            if lhs != rhs:
                raise CliffordError("bar(xy) != bar(y)bar(x)")

    two = scalar(2)
    for i in range(n):
        for j in range(n):
            bij = tuple(
                a - b
                for a, b in zip(
                    full.multiply(gen[i], gen[j]), full.multiply(gen[j], gen[i])
                )
            )
            for k in range(n):
                lhs = tuple(
                    a - b
                    for a, b in zip(
                        full.multiply(bij, gen[k]), full.multiply(gen[k], bij)
                    )
                )
                rhs = vec_add(
                    vec_scale(two * gram[(j, k)], gen[i]),
                    vec_scale(-(two * gram[(i, k)]), gen[j]),
                )
                if lhs != tuple(rhs):
                    raise CliffordError("[[u,v],w] identity fails")

    # the bracket span is so(U, q): right dimension, closed under commutator,
    # and the commutators match the induced operators on U
    so_pairs = built.extras["so_pairs"]
    so_span = built.extras["so_span"]
    dim_even = built.algebra.dim
    if rank(Mat.from_cols(list(so_span), nrows=dim_even)) != n * (n - 1) // 2:
        raise CliffordError("bracket span has the wrong dimension")
    proj = _span_solver(list(so_span), dim_even)

    def op_of(i, j):
        cols = []
        for k in range(n):
            col = [ZERO] * n
            col[i] = two * gram[(j, k)]
            col[j] = -(two * gram[(i, k)])
            cols.append(tuple(col))
        return Mat.from_cols(cols, nrows=n)

    ops = {p: op_of(*p) for p in so_pairs}
    alg = built.algebra
    for a, pa in enumerate(so_pairs):
        for b, pb in enumerate(so_pairs):
            comm = tuple(
                x - y
                for x, y in zip(
                    alg.multiply(so_span[a], so_span[b]),
                    alg.multiply(so_span[b], so_span[a]),
                )
            )
            coeffs = proj(comm)
            if coeffs is None:
                raise CliffordError("bracket span is not closed under commutator")
            want = ops[pa] * ops[pb] - ops[pb] * ops[pa]
            got = Mat.zeros(n, n)
            for t, c in enumerate(coeffs):
                if not c.is_zero():
                    got = got + ops[so_pairs[t]].scale(c)
            if got != want:
                raise CliffordError("so(U,q) embedding does not match operators")


# ---------------------------------------------------------------------------
# graded-division classification, route one: minimal ideals
# ---------------------------------------------------------------------------


class DivisionClass:
    """Graded-division class tag: F, Q, QQ (Q (x) Q) or QQQ (Q (x) Q (x) Q)."""

    TAGS = ("F", "Q", "QQ", "QQQ")

    def __init__(self, tag, **info):
        if tag not in self.TAGS:
            raise CliffordError("unknown division class %r" % (tag,))
        self.tag = tag
        self.info = dict(info)

    def __eq__(self, other):
        if isinstance(other, DivisionClass):
            return self.tag == other.tag
        if isinstance(other, str):
            return self.tag == other
        return NotImplemented

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return "DivisionClass(%s)" % self.tag


def _reduce_by_degree(rows_by_degree):
    """Per-degree rref; returns ({degree: [dense vecs]}, total dimension)."""
    out = {}
    total = 0
    for d, rows in rows_by_degree.items():
        if not rows:
            continue
        ncols = len(rows[0])
        sparse = [
            {c: v for c, v in enumerate(r) if not v.is_zero()} for r in rows
        ]
        red = sparse_row_reduce(sparse, ncols)
        vecs = []
        for p in sorted(red):
            row = red[p]
            vecs.append(tuple(row.get(c, ZERO) for c in range(ncols)))
        if vecs:
            out[d] = vecs
            total += len(vecs)
    return out, total


def _algebra_unit(alg):
    """The two-sided identity element."""
    e0 = alg.basis_vec(0)
    if all(
        alg.product_basis(0, j) == ((j, ONE),)
        and alg.product_basis(j, 0) == ((j, ONE),)
        for j in range(alg.dim)
    ):
        return e0
    n = alg.dim
    cols = []
    for i in range(n):
        stacked = []
        for j in range(n):
            stacked.extend(alg.multiply(alg.basis_vec(j), alg.basis_vec(i)))
        cols.append(tuple(stacked))
    rhs = []
    for j in range(n):
        rhs.extend(alg.basis_vec(j))
    t = solve(Mat.from_cols(cols, nrows=len(rhs)), tuple(rhs))
    if t is None:
        raise CliffordError("the algebra has no right identity")
    e = tuple(t)
    if any(alg.multiply(e, alg.basis_vec(j)) != alg.basis_vec(j) for j in range(n)):
        raise CliffordError("the algebra has no two-sided identity")
    return e


def _proportional(vec, base):
    """lambda with vec = lambda * base, or None."""
    lam = None
    for a, b in zip(vec, base):
        if b.is_zero():
            if not a.is_zero():
                return None
            continue
        r = a * b.inverse()
        if lam is None:
            lam = r
        elif lam != r:
            return None
    return lam if lam is not None else ZERO


def _corner_components(alg, degrees, e):
    """Degree components of the corner algebra e R e."""
    rows = {}
    for i in range(alg.dim):
        w = alg.multiply(e, alg.multiply(alg.basis_vec(i), e))
        if all(c.is_zero() for c in w):
            continue
        rows.setdefault(degrees[i], []).append(w)
    return _reduce_by_degree(rows)


def division_class(built, label=None):
    """Graded-division class of a graded-simple associative algebra.

    Refines the identity down to an idempotent e whose corner algebra
    D = e R e is a graded division algebra, then classifies D by the size
    of its support, |Supp D| in {1, 4, 16, 64}.  At each step a candidate
    x in the degree-0 part of the corner with x^2 a nonzero multiple of x
    or of e yields a proper sub-idempotent (i lies in the base field, so
    x^2 = lambda e rescales to a square root of e).  Works entirely inside
    the algebra -- no appeal to the degree-pattern case table -- so it can
    serve as an independent cross-check of it.  Graded simplicity is
    assumed, not checked.
    """
    alg = built.algebra
    if label is None:
        if len(built.gradings) != 1:
            raise CliffordError("several gradings attached; pass a label")
        label = next(iter(built.gradings))
    group, degrees = built.grading(label)
    zero_deg = group.zero()
    e = _algebra_unit(alg)
    cuts = 0

    while True:
        dcomp, ddim = _corner_components(alg, degrees, e)
        zero_part = dcomp.get(zero_deg, ())
        if len(zero_part) <= 1:
            break
        # candidates in the degree-0 corner: basis vectors, then products
        cands = list(zero_part)
        for a in zero_part:
            for b in zero_part:
                cands.append(alg.multiply(a, b))
        refined = None
        four = scalar(4)
        two = scalar(2)
        for x in cands:
            if _proportional(x, e) is not None:
                continue
            sq = alg.multiply(x, x)
            # x^2 = a x + b e gives p = (2x - a e)/sqrt(a^2 + 4b), p^2 = e
            coeffs = _span_solver([tuple(x), e], alg.dim)(sq)
            if coeffs is None:
                continue
            a, b = coeffs
            disc = a * a + four * b
            if disc.is_zero():
                continue
            try:
                r = scalar_sqrt(disc)
            except CliffordError:
                continue
            p = vec_scale(
                r.inverse(), vec_add(vec_scale(two, x), vec_scale(-a, e))
            )
            refined = vec_scale(HALF, vec_add(e, p))
            break
        if refined is None:
            raise CliffordError(
                "no idempotent found in the degree-0 corner (dimension %d)"
                % len(zero_part)
            )
        e = tuple(refined)
        if alg.multiply(e, e) != e:
            raise CliffordError("idempotent refinement broke down")
        cuts += 1
        if cuts > 12:
            raise CliffordError("idempotent refinement did not terminate")

    for d, vecs in dcomp.items():
        if len(vecs) > 1:
            raise CliffordError(
                "coefficient algebra has a component of dimension %d" % len(vecs)
            )
    # graded division: every homogeneous piece must be invertible in eRe
    for d, (x,) in dcomp.items():
        y = dcomp.get(-d)
        if y is None:
            raise CliffordError("support is not symmetric")
        lam = _proportional(alg.multiply(x, y[0]), e)
        if lam is None or lam.is_zero():
            raise CliffordError(
                "homogeneous component %s is not invertible" % d.literal()
            )
    supp = len(dcomp)
    tags = {1: "F", 4: "Q", 16: "QQ", 64: "QQQ"}
    if supp not in tags:
        raise CliffordError("unexpected support size %d" % supp)
    return DivisionClass(
        tags[supp],
        support_size=supp,
        division_dim=ddim,
        cuts=cuts,
        idempotent=e,
    )


# ---------------------------------------------------------------------------
# graded-division classification, route two: the dimension-7 case table
# ---------------------------------------------------------------------------


def _torsion_bits(group, elem):
    """2-torsion element as an F2 bitmask over the even-modulus coordinates."""
    if any(elem.free):
        raise CliffordError("%s is not a torsion element" % elem.literal())
    mask = 0
    for k, (c, mod) in enumerate(zip(elem.torsion, group.moduli)):
        if c == 0:
            continue
        if mod % 2 or 2 * c % mod:
            raise CliffordError("%s is not 2-torsion" % elem.literal())
        mask |= 1 << k
    return mask


def _f2_rank(bits):
    pivots = []
    for b in bits:
        for p in pivots:
            b = min(b, b ^ p)
        if b:
            pivots.append(b)
    return len(pivots)


def dim7_case_classify(space):
    """Division class read off the normalized degree data alone.

    Pattern-matches (m; the F2-rank and relation pattern of the anisotropic
    degrees) against the ten-case table for dimension 7.  Entirely
    independent of the Clifford computation in :func:`division_class`, and
    must agree with it.  The matching permutation of the anisotropic degrees
    is recorded, since the table is stated up to reordering.
    """
    if space.dim != 7:
        raise CliffordError("the case table covers dimension 7 only")
    m = space.m
    hs = space.unit_degrees
    bits = [_torsion_bits(space.group, h) for h in hs]
    r = _f2_rank(bits)

    def find(k, pattern):
        for perm in permutations(range(k)):
            h = [bits[p] for p in perm]
            if pattern(h):
                return perm
        return None

    matches = []
    if m == 3:
        if bits == [0]:
            matches.append(("F", "m=3", (0,)))
    elif m == 2:
        if bits[0] ^ bits[1] ^ bits[2] == 0:
            matches.append(("Q", "m=2", (0, 1, 2)))
    elif m == 1:
        if r == 3:
            perm = find(
                5,
                lambda h: h[4] == 0
                and h[3] == h[0] ^ h[1] ^ h[2]
                and _f2_rank(h[:3]) == 3,
            )
            if perm:
                matches.append(("Q", "m=1 r=3", perm))
        elif r == 4:
            perm = find(
                5,
                lambda h: _f2_rank(h[:4]) == 4
                and h[4] == h[0] ^ h[1] ^ h[2] ^ h[3],
            )
            if perm:
                matches.append(("QQ", "m=1 r=4", perm))
    elif m == 0:
        if r == 6:
            perm = find(
                7,
                lambda h: _f2_rank(h[:6]) == 6
                and h[6] == h[0] ^ h[1] ^ h[2] ^ h[3] ^ h[4] ^ h[5],
            )
            if perm:
                matches.append(("QQQ", "m=0 r=6", perm))
        elif r == 5:
            perm = find(
                7,
                lambda h: _f2_rank(h[:5]) == 5
                and h[5] == h[0] ^ h[1] ^ h[2] ^ h[3] ^ h[4]
                and h[6] == 0,
            )
            if perm:
                matches.append(("QQ", "m=0 r=5 (i)", perm))
            perm = find(
                7,
                lambda h: _f2_rank(h[:5]) == 5
                and h[5] == h[0] ^ h[1]
                and h[6] == h[2] ^ h[3] ^ h[4],
            )
            if perm:
                matches.append(("QQ", "m=0 r=5 (ii)", perm))
        elif r == 4:
            perm = find(
                7,
                lambda h: _f2_rank(h[:4]) == 4
                and h[4] == h[0] ^ h[1]
                and h[5] == h[2] ^ h[3]
                and h[6] == 0,
            )
            if perm:
                matches.append(("QQ", "m=0 r=4 (i)", perm))
            perm = find(
                7,
                lambda h: _f2_rank(h[:4]) == 4
                and h[4] == h[0] ^ h[1]
                and h[5] == h[0] ^ h[2]
                and h[6] == h[0] ^ h[3],
            )
            if perm:
                matches.append(("Q", "m=0 r=4 (ii)", perm))
        elif r == 3:
            span = {0}
            for b in bits:
                span |= {s ^ b for s in span}
            if set(bits) == span - {0}:
                matches.append(("F", "m=0 r=3", tuple(range(7))))

    if not matches:
        raise CliffordError(
            "configuration matches no case (m=%d, rank=%d)" % (m, r)
        )
    tags = {t for t, _, _ in matches}
    if len(tags) > 1:
        raise CliffordError("ambiguous classification: %s" % sorted(tags))
    tag, case, perm = matches[0]
    return DivisionClass(
        tag, case=case, m=m, l=space.l, rank=r, permutation=perm
    )


# ---------------------------------------------------------------------------
# factoring off a hyperbolic pair
# ---------------------------------------------------------------------------


def check_uuv_factorization(space, built=None):
    """Report on splitting one hyperbolic pair off the even Clifford algebra.

    With z the central element and (u_1, v_1) the first pair, the
    subalgebra S generated by z u_1 and z v_1 is a full 2x2 matrix algebra
    (via z u_1 -> E_12, z v_1 -> z^2 E_21); it commutes with the products
    of the complementary generators, its centralizer has the dimension of
    the even Clifford algebra on the complement, and S times the
    centralizer spans everything.  u_1 v_1 is a degree-0 idempotent.
    """
    if space.m < 1:
        raise CliffordError("no hyperbolic pair to factor off")
    if built is None:
        built = build_even_clifford(space, verify=False)
    alg = built.algebra
    full = built.extras["full"]
    even = built.extras["even_indices"]
    z = built.extras["z"]
    eps = built.extras["zsquare"]
    n = space.dim

    even_set = set(even)

    def to_even(vec):
        for k, c in enumerate(vec):
            if not c.is_zero() and k not in even_set:
                raise CliffordError("vector is not even")
        return tuple(vec[k] for k in even)

    u1 = full.basis_vec(1)
    v1 = full.basis_vec(2)
    a = to_even(full.multiply(z, u1))
    b = to_even(full.multiply(z, v1))
    ab = alg.multiply(a, b)
    ba = alg.multiply(b, a)
    quad = [a, b, ab, ba]
    s_dim = rank(Mat.from_cols(quad, nrows=alg.dim))

    report = {"m": space.m, "zsquare": eps, "s_dim": s_dim}
    ok = s_dim == 4

    # S is 2x2 matrices: compare against E12, eps*E21, eps*E11, eps*E22
    imgs = [
        Mat(((ZERO, ONE), (ZERO, ZERO))),
        Mat(((ZERO, ZERO), (eps, ZERO))),
        Mat(((eps, ZERO), (ZERO, ZERO))),
        Mat(((ZERO, ZERO), (ZERO, eps))),
    ]
    mat_ok = ok
    if ok:
        proj = _span_solver(quad, alg.dim)
        for p in range(4):
            for q in range(4):
                coeffs = proj(alg.multiply(quad[p], quad[q]))
                if coeffs is None:
                    mat_ok = False
                    break
                prod = imgs[p] * imgs[q]
                got = Mat.zeros(2, 2)
                for t, c in enumerate(coeffs):
                    got = got + imgs[t].scale(c)
                if got != prod:
                    mat_ok = False
                    break
            if not mat_ok:
                break
    report["s_is_2x2_matrices"] = mat_ok
    ok = ok and mat_ok

    gens = [full.basis_vec(1 + t) for t in range(n)]
    commutes = True
    for p in range(2, n):
        for q in range(p + 1, n):
            y = to_even(full.multiply(gens[p], gens[q]))
            for s in (a, b):
                if alg.multiply(y, s) != alg.multiply(s, y):
                    commutes = False
    report["complement_commutes"] = commutes
    ok = ok and commutes

    cent = _centralizer(alg, (a, b))
    report["centralizer_dim"] = len(cent)
    want = alg.dim // 4
    report["dims_multiply"] = 4 * len(cent) == alg.dim
    ok = ok and len(cent) == want

    prods = []
    for s in quad:
        for c in cent:
            prods.append(alg.multiply(s, c))
    spans = rank(Mat.from_cols(prods, nrows=alg.dim)) == alg.dim
    report["product_spans"] = spans
    ok = ok and spans

    e = to_even(full.multiply(u1, v1))
    _, mono_deg = built.grading(space.group.literal())
    idx = next(k for k, c in enumerate(e) if not c.is_zero())
    report["idempotent_ok"] = (
        alg.multiply(e, e) == e and mono_deg[idx].is_zero()
    )
    ok = ok and report["idempotent_ok"]

    report["ok"] = ok
    return report


def _centralizer(alg, elems):
    """Basis of the centralizer of the given elements."""
    n = alg.dim
    rows = []
    for off, s in enumerate(elems):
        for k in range(n):
            rows.append((off, k))
    sparse = []
    for t in range(n):
        bt = alg.basis_vec(t)
        col = {}
        for off, s in enumerate(elems):
            comm = tuple(
                x - y for x, y in zip(alg.multiply(s, bt), alg.multiply(bt, s))
            )
            for k, c in enumerate(comm):
                if not c.is_zero():
                    col[off * n + k] = c
        sparse.append(col)
    # transpose the columns into constraint rows
    constraint = {}
    for t, col in enumerate(sparse):
        for key, c in col.items():
            constraint.setdefault(key, {})[t] = c
    from .linalg import sparse_kernel

    return sparse_kernel(list(constraint.values()), n)


# ---------------------------------------------------------------------------
# the two concrete models
# ---------------------------------------------------------------------------


def _kron(A, B):
    ra, ca = A.shape
    rb, cb = B.shape
    rows = []
    for i in range(ra):
        for p in range(rb):
            rows.append(
                tuple(
                    A[(i, j)] * B[(p, q)] for j in range(ca) for q in range(cb)
                )
            )
    return Mat(tuple(rows))


def verify_octonion_clifford_model():
    """Left multiplication identifies Cl0 of the trace-zero split octonions
    (with the negated norm) with all 8x8 matrices.

    Checks l_x^2 = -N(x) id on the trace-zero part, the generator-times-
    basis homomorphism property of the induced map on the full Clifford
    algebra, that the even monomial images span all 64 of End(C), and the
    adjoint identity N(xy, z) = -N(y, xz).  Returns a report dict.
    """
    C = build_cayley()
    alg = C.algebra
    gram = C.extras["norm_gram"]
    lmats = [alg.ad_matrix(alg.basis_vec(1 + t)) for t in range(7)]
    report = {}

    ok = True
    for i in range(7):
        for j in range(7):
            anti = lmats[i] * lmats[j] + lmats[j] * lmats[i]
            want = Mat.identity(8).scale(-gram[(1 + i, 1 + j)])
            if anti != want:
                ok = False
    report["l_squares"] = ok

    minus_two = scalar(-2)
    B = [[minus_two if i == j else ZERO for j in range(7)] for i in range(7)]
    cl, words = clifford_algebra(tuple("x%d" % (t + 1) for t in range(7)), B)
    imgs = []
    for w in words:
        m = Mat.identity(8)
        for t in w:
            m = m * lmats[t]
        imgs.append(m)

    hom = True
    for i in range(7):
        xi = cl.basis_vec(1 + i)
        for k in range(cl.dim):
            prod = cl.multiply(xi, cl.basis_vec(k))
            want = Mat.zeros(8, 8)
            for t, c in enumerate(prod):
                if not c.is_zero():
                    want = want + imgs[t].scale(c)
            if lmats[i] * imgs[k] != want:
                hom = False
    report["homomorphism"] = hom

    even_cols = [
        tuple(imgs[k][(r, c)] for r in range(8) for c in range(8))
        for k, w in enumerate(words)
        if len(w) % 2 == 0
    ]
    report["span_dim"] = rank(Mat.from_cols(even_cols, nrows=64))
    report["spans_end"] = report["span_dim"] == 64

    def norm(x, y):
        acc = ZERO
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            g = gram.row(i)
            for j, yj in enumerate(y):
                if not yj.is_zero() and not g[j].is_zero():
                    acc = acc + xi * g[j] * yj
        return acc

    adjoint = True
    for i in range(7):
        x = alg.basis_vec(1 + i)
        for a in range(8):
            y = alg.basis_vec(a)
            xy = alg.multiply(x, y)
            for bidx in range(8):
                zv = alg.basis_vec(bidx)
                if norm(xy, zv) != -norm(y, alg.multiply(x, zv)):
                    adjoint = False
    report["norm_adjoint"] = adjoint

    report["ok"] = ok and hom and report["spans_end"] and adjoint
    return report


_W_SLOTS = (
    (1, 0, 0),
    (3, 0, 0),
    (2, 0, 1),
    (2, 0, 3),
    (2, 1, 2),
    (2, 3, 2),
    (2, 2, 2),
)


def verify_quaternion_clifford_model():
    """The quaternion cube acting on the rank-4 free module.

    Phi sends a (x) b (x) c to kron(L_a R_bbar, L_c) on M = Q (x) Q, a
    64 = 64 isomorphism onto the endomorphisms commuting with the right
    action on the second slot.  Checks the homomorphism property, the
    anticommuting generators w_1..w_7 with squares (1,-1,1,-1,1,-1,1) and
    their distinct zero-sum degree pattern of rank 6 (the seventh degree is
    the sum of the first six), the conjugation
    a (x) b (x) c -> abar (x) bbar (x) q2 cbar q2, and that the
    skew-hermitian form h(x (x) y, u (x) v) = N(x, u) ybar q2 v intertwines
    Phi with the conjugation.  Returns a report dict.
    """
    Q = build_quaternions()
    alg = Q.algebra
    ngram = Q.extras["norm_gram"]
    report = {}

    def lmat(i):
        return alg.ad_matrix(alg.basis_vec(i))

    def rmat(i):
        return Mat.from_cols(
            [alg.multiply(alg.basis_vec(j), alg.basis_vec(i)) for j in range(4)],
            nrows=4,
        )

    bar_sign = (ONE, MINUS_ONE, MINUS_ONE, MINUS_ONE)

    def qbar(vec):
        return tuple(c * s for c, s in zip(vec, bar_sign))

    def phi(a, b, c):
        # R applied to bbar: bar flips the sign of the imaginary units
        left = lmat(a) * rmat(b)
        if b != 0:
            left = left.scale(MINUS_ONE)
        return _kron(left, lmat(c))

    basisQ = [alg.basis_vec(i) for i in range(4)]

    def qmul(x, y):
        return alg.multiply(x, y)

    # structure constants of Q (x) Q (x) Q on elementary tensors
    def t_mul(t1, t2):
        coeff = ONE
        out = []
        for s in range(3):
            prod = qmul(basisQ[t1[s]], basisQ[t2[s]])
            k = next(k for k, c in enumerate(prod) if not c.is_zero())
            coeff = coeff * prod[k]
            out.append(k)
        return tuple(out), coeff

    triples = [(a, b, c) for a in range(4) for b in range(4) for c in range(4)]
    tindex = {t: k for k, t in enumerate(triples)}
    mats = {t: phi(*t) for t in triples}

    gens = [
        (1, 0, 0),
        (2, 0, 0),
        (0, 1, 0),
        (0, 2, 0),
        (0, 0, 1),
        (0, 0, 2),
    ]
    hom = True
    for g in gens:
        for t in triples:
            prod, coeff = t_mul(g, t)
            if mats[g] * mats[t] != mats[prod].scale(coeff):
                hom = False
    report["homomorphism"] = hom

    flat = [
        tuple(mats[t][(r, c)] for r in range(16) for c in range(16))
        for t in triples
    ]
    report["independent"] = rank(Mat.from_cols(flat, nrows=256)) == 64

    right = [_kron(Mat.identity(4), rmat(i)) for i in (1, 2)]
    comm = all(
        mats[t] * R == R * mats[t] for t in gens for R in right
    )
    report["commutes_with_right_action"] = comm

    ws = [mats[t] for t in _W_SLOTS]
    sq_ok = True
    for k, w in enumerate(ws):
        want = Mat.identity(16)
        if k % 2 == 1:
            want = want.scale(MINUS_ONE)
        if w * w != want:
            sq_ok = False
    anti = all(
        ws[i] * ws[j] + ws[j] * ws[i] == Mat.zeros(16, 16)
        for i in range(7)
        for j in range(i + 1, 7)
    )
    report["w_squares"] = sq_ok
    report["w_anticommute"] = anti

    qdeg = {0: 0, 1: 0b01, 2: 0b10, 3: 0b11}
    wdeg = [
        qdeg[a] | (qdeg[b] << 2) | (qdeg[c] << 4) for (a, b, c) in _W_SLOTS
    ]
    total = 0
    for d in wdeg:
        total ^= d
    report["w_degrees_distinct"] = len(set(wdeg)) == 7 and 0 not in wdeg
    report["w_degrees_rank"] = _f2_rank(wdeg)
    report["w_degrees_sum_zero"] = total == 0

    # conjugation on the cube
    q2 = basisQ[2]

    def conj_triple(t):
        a, b, c = t
        va, vb = qbar(basisQ[a]), qbar(basisQ[b])
        vc = qmul(q2, qmul(qbar(basisQ[c]), q2))
        coeff = ONE
        out = []
        for v in (va, vb, vc):
            k = next(k for k, cc in enumerate(v) if not cc.is_zero())
            coeff = coeff * v[k]
            out.append(k)
        return tuple(out), coeff

    conj_ok = True
    for g in gens:
        for t in triples:
            prod, coeff = t_mul(g, t)
            cg, sg = conj_triple(g)
            ct, st = conj_triple(t)
            cp, sp = conj_triple(prod)
            lhs, lc = t_mul(ct, cg)
            if lhs != cp or st * sg * lc != coeff * sp:
                conj_ok = False
    report["conjugation_antiautomorphism"] = conj_ok

    # the skew-hermitian form on M = Q (x) Q
    def hform(m1, m2):
        # ((x, y), (u, v)) -> N(x, u) * ybar q2 v, on basis pairs
        out = alg.zero()
        for (x, y), c1 in m1:
            for (u, v), c2 in m2:
                nxu = ngram[(x, u)]
                if nxu.is_zero():
                    continue
                val = qmul(qbar(basisQ[y]), qmul(q2, basisQ[v]))
                out = tuple(
                    o + c1 * c2 * nxu * w for o, w in zip(out, val)
                )
        return out

    pairsM = [(x, y) for x in range(4) for y in range(4)]
    skew = True
    for p in pairsM:
        for q in pairsM:
            h1 = hform([(p, ONE)], [(q, ONE)])
            h2 = hform([(q, ONE)], [(p, ONE)])
            if h1 != tuple(-c for c in qbar(h2)):
                skew = False
    report["h_skew_hermitian"] = skew

    rightlin = True
    for p in pairsM:
        for q in pairsM:
            base = hform([(p, ONE)], [(q, ONE)])
            for s in (1, 2):
                shifted = qmul(basisQ[q[1]], basisQ[s])
                acc = alg.zero()
                for k, c in enumerate(shifted):
                    if not c.is_zero():
                        acc = tuple(
                            o + c * w
                            for o, w in zip(
                                acc, hform([(p, ONE)], [((q[0], k), ONE)])
                            )
                        )
                if acc != qmul(base, basisQ[s]):
                    rightlin = False
    report["h_right_linear"] = rightlin

    def apply_phi(t, melem):
        # Phi_t applied to an element of M given as [(pair, coeff)]
        out = {}
        mat = mats[t]
        for (x, y), c in melem:
            col = mat.col(4 * x + y)
            for idx, v in enumerate(col):
                if not v.is_zero():
                    key = (idx // 4, idx % 4)
                    out[key] = out.get(key, ZERO) + c * v
        return [(k, c) for k, c in out.items() if not c.is_zero()]

    adj = True
    for t in gens + list(_W_SLOTS):
        ct, st = conj_triple(t)
        for p in pairsM:
            for q in pairsM:
                lhs = hform(apply_phi(t, [(p, ONE)]), [(q, ONE)])
                rhs = hform(
                    [(p, ONE)], apply_phi(ct, [(q, st)])
                )
                if lhs != rhs:
                    adj = False
    report["h_phi_adjoint"] = adj

    # frozen value: h(q1 (x) 1, q1 (x) q2) = N(q1, q1) * (1bar q2 q2) = -2
    val = hform([((1, 0), ONE)], [((1, 2), ONE)])
    report["h_sample"] = val
    report["h_sample_ok"] = val == tuple(
        scalar(-2) if k == 0 else ZERO for k in range(4)
    )

    report["ok"] = all(
        report[k]
        for k in (
            "homomorphism",
            "independent",
            "commutes_with_right_action",
            "w_squares",
            "w_anticommute",
            "w_degrees_distinct",
            "w_degrees_sum_zero",
            "conjugation_antiautomorphism",
            "h_skew_hermitian",
            "h_right_linear",
            "h_phi_adjoint",
            "h_sample_ok",
        )
    ) and report["w_degrees_rank"] == 6
    return report

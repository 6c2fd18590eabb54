"""Finite-dimensional superalgebras with exact structure constants.

A :class:`SuperAlgebra` is a Z_2-graded algebra given by a sparse
multiplication table over the scalar field; the same class carries
associative algebras (quaternions, Clifford algebras), composition algebras
and Lie superalgebras — what distinguishes them is which checkers one runs.
Elements are dense coordinate tuples.

The heavy lifting lives in the verification and completion routines:

* :func:`check_lie_super` — super anticommutativity plus the super Jacobi
  identity, checked exactly on basis pairs/triples.
* :func:`derivations` — super-Leibniz kernel, per parity of the derivation.
* :func:`invariant_pairings` — symmetric equivariant pairings S^2 m -> g0,
  optionally cut down by supplied diagonal weight data before solving.
* :func:`complete_superalgebra` — assembles g0 + m into a Lie superalgebra
  from a candidate pairing space by solving the (linear) odd Jacobi
  constraints, then re-verifies all axioms on the result.
"""

from __future__ import annotations

import json

from .errors import AlgebraError
from .linalg import (
    Mat,
    is_zero_vec,
    kernel,
    solve,
    sparse_kernel,
    vec_add,
    vec_scale,
)
from .scalars import ONE, ZERO, format_scalar, parse_scalar, scalar

__all__ = [
    "SuperAlgebra",
    "ModuleAction",
    "LinMap",
    "check_lie_super",
    "check_homomorphism",
    "is_homomorphism",
    "derivations",
    "derivation_superalgebra",
    "lie_closure",
    "lie_generates",
    "ideal_generated_by",
    "invariant_pairings",
    "complete_superalgebra",
    "change_basis",
    "save_algebra",
    "load_algebra",
    "dumps_algebra",
    "loads_algebra",
]


class SuperAlgebra:
    """Bilinear product on a based super vector space, as a sparse tensor."""

    def __init__(self, names, parity, table, check_parity=True):
        names = tuple(str(n) for n in names)
        parity = tuple(int(p) % 2 for p in parity)
        if len(names) != len(parity):
            raise AlgebraError("names/parity length mismatch")
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate basis names")
        dim = len(names)
        tab = {}
        for (i, j), terms in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise AlgebraError("table index out of range: (%d, %d)" % (i, j))
            acc = {}
            for k, c in terms:
                c = scalar(c)
                if c.is_zero():
                    continue
                acc[k] = acc.get(k, ZERO) + c
            entry = tuple(
                (k, v) for k, v in sorted(acc.items()) if not v.is_zero()
            )
            if not entry:
                continue
            if check_parity:
                want = (parity[i] + parity[j]) % 2
                for k, _ in entry:
                    if parity[k] != want:
                        raise AlgebraError(
                            "product %s * %s hits %s: parity %d, expected %d"
                            % (names[i], names[j], names[k], parity[k], want)
                        )
            tab[(i, j)] = entry
        self.names = names
        self.parity = parity
        self.dim = dim
        self.table = tab
        self._index = {n: i for i, n in enumerate(names)}

    # -- elements ---------------------------------------------------------

    def zero(self):
        return (ZERO,) * self.dim

    def basis_vec(self, key):
        i = self.index(key)
        return tuple(ONE if j == i else ZERO for j in range(self.dim))

    def index(self, key):
        if isinstance(key, str):
            try:
                return self._index[key]
            except KeyError:
                raise AlgebraError("no basis element named %r" % key) from None
        return int(key)

    def element(self, items):
        """Element from {name_or_index: coeff} or [(name, coeff), ...]."""
        if isinstance(items, dict):
            items = items.items()
        v = [ZERO] * self.dim
        for key, c in items:
            v[self.index(key)] = v[self.index(key)] + scalar(c)
        return tuple(v)

    def multiply(self, x, y):
        out = [ZERO] * self.dim
        tab = self.table
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            for j, yj in enumerate(y):
                if yj.is_zero():
                    continue
                terms = tab.get((i, j))
                if not terms:
                    continue
                f = xi * yj
                for k, c in terms:
                    out[k] = out[k] + f * c
        return tuple(out)

    bracket = multiply

    def product_basis(self, i, j):
        return self.table.get((i, j), ())

    def ad_matrix(self, x):
        """Matrix of left multiplication (adjoint action for Lie brackets)."""
        cols = [self.multiply(x, self.basis_vec(i)) for i in range(self.dim)]
        return Mat.from_cols(cols, nrows=self.dim)

    def parity_of(self, x):
        """Parity of a homogeneous element; AlgebraError when mixed."""
        seen = {self.parity[i] for i, c in enumerate(x) if not c.is_zero()}
        if len(seen) > 1:
            raise AlgebraError("element is not parity homogeneous")
        return seen.pop() if seen else 0

    def even_indices(self):
        return [i for i in range(self.dim) if self.parity[i] == 0]

    def odd_indices(self):
        return [i for i in range(self.dim) if self.parity[i] == 1]

    def format_element(self, x):
        parts = []
        for i, c in enumerate(x):
            if c.is_zero():
                continue
            parts.append("(%s)*%s" % (format_scalar(c), self.names[i]))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        ev = len(self.even_indices())
        return "SuperAlgebra(dim %d|%d)" % (ev, self.dim - ev)


class ModuleAction:
    """Bilinear action of an algebra on a based module, as a sparse tensor."""

    def __init__(self, algebra, module_names, table, module_parity=None):
        self.algebra = algebra
        self.module_names = tuple(str(n) for n in module_names)
        self.module_dim = len(self.module_names)
        if module_parity is None:
            module_parity = (1,) * self.module_dim
        self.module_parity = tuple(int(p) % 2 for p in module_parity)
        tab = {}
        for (i, j), terms in table.items():
            entry = tuple(
                (k, scalar(c)) for k, c in sorted(terms) if not scalar(c).is_zero()
            )
            if entry:
                tab[(i, j)] = entry
        self.table = tab
        self._matrices = None

    def act(self, x, v):
        out = [ZERO] * self.module_dim
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            for j, vj in enumerate(v):
                if vj.is_zero():
                    continue
                terms = self.table.get((i, j))
                if not terms:
                    continue
                f = xi * vj
                for k, c in terms:
                    out[k] = out[k] + f * c
        return tuple(out)

    def basis_matrices(self):
        if self._matrices is None:
            mats = []
            for i in range(self.algebra.dim):
                cols = []
                for j in range(self.module_dim):
                    col = [ZERO] * self.module_dim
                    for k, c in self.table.get((i, j), ()):
                        col[k] = c
                    cols.append(col)
                mats.append(Mat.from_cols(cols, nrows=self.module_dim))
            self._matrices = mats
        return self._matrices

    def matrix(self, x):
        mats = self.basis_matrices()
        out = Mat.zeros(self.module_dim, self.module_dim)
        for i, xi in enumerate(x):
            if not xi.is_zero():
                out = out + mats[i].scale(xi)
        return out

    def check_representation(self):
        """For a Lie algebra: a([x,y]) = a(x)a(y) - a(y)a(x) on basis pairs."""
        g = self.algebra
        mats = self.basis_matrices()
        for i in range(g.dim):
            for j in range(i + 1, g.dim):
                br = g.multiply(g.basis_vec(i), g.basis_vec(j))
                lhs = self.matrix(br)
                rhs = mats[i] * mats[j] - mats[j] * mats[i]
                if lhs != rhs:
                    raise AlgebraError(
                        "action is not a representation at pair (%s, %s)"
                        % (g.names[i], g.names[j])
                    )


class LinMap:
    """Linear map between based superalgebras, carried by a matrix."""

    def __init__(self, source, target, matrix, parity=0):
        if matrix.shape != (target.dim, source.dim):
            raise AlgebraError(
                "matrix shape %s does not map dim %d to dim %d"
                % (matrix.shape, source.dim, target.dim)
            )
        self.source = source
        self.target = target
        self.matrix = matrix
        self.parity = parity % 2

    def __call__(self, vec):
        return self.matrix.apply(vec)

    def compose(self, other):
        if other.target is not self.source:
            raise AlgebraError("composition domain mismatch")
        return LinMap(
            other.source, self.target, self.matrix * other.matrix,
            parity=self.parity + other.parity,
        )

    def order(self, bound=24):
        """Multiplicative order of an endomorphism (source == target)."""
        if self.source is not self.target:
            raise AlgebraError("order requires an endomorphism")
        ident = Mat.identity(self.source.dim)
        power = self.matrix
        for k in range(1, bound + 1):
            if power == ident:
                return k
            power = power * self.matrix
        raise AlgebraError("order exceeds bound %d" % bound)


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------


def check_lie_super(A):
    """Verify super anticommutativity and the super Jacobi identity.

    Anticommutativity is checked on pairs i <= j; once it holds, the Jacobi
    expression only changes sign under permutations, so triples i <= j <= k
    suffice.
    """
    n = A.dim
    par = A.parity
    basis = [A.basis_vec(i) for i in range(n)]
    prod = {}
    for i in range(n):
        for j in range(n):
            prod[(i, j)] = A.multiply(basis[i], basis[j])
    for i in range(n):
        for j in range(i, n):
            sign = -ONE if (par[i] * par[j]) % 2 else ONE
            lhs = prod[(i, j)]
            rhs = vec_scale(-sign, prod[(j, i)])
            if lhs != rhs:
                raise AlgebraError(
                    "super anticommutativity fails at (%s, %s)"
                    % (A.names[i], A.names[j])
                )
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                s_ik = -ONE if (par[i] * par[k]) % 2 else ONE
                s_ji = -ONE if (par[j] * par[i]) % 2 else ONE
                s_kj = -ONE if (par[k] * par[j]) % 2 else ONE
                t1 = vec_scale(s_ik, A.multiply(basis[i], prod[(j, k)]))
                t2 = vec_scale(s_ji, A.multiply(basis[j], prod[(k, i)]))
                t3 = vec_scale(s_kj, A.multiply(basis[k], prod[(i, j)]))
                if not is_zero_vec(vec_add(vec_add(t1, t2), t3)):
                    raise AlgebraError(
                        "super Jacobi fails at (%s, %s, %s)"
                        % (A.names[i], A.names[j], A.names[k])
                    )


def check_homomorphism(A, B, F, bijective=False, check_parity=True):
    """Verify that the linear map F (dim B x dim A) satisfies F(xy)=F(x)F(y).

    Returns True on success; raises AlgebraError naming the first violation.
    F may be a Mat or a LinMap.
    """
    if isinstance(F, LinMap):
        F = F.matrix
    if F.shape != (B.dim, A.dim):
        raise AlgebraError("map shape %s, expected (%d, %d)" % (F.shape, B.dim, A.dim))
    cols = [F.col(j) for j in range(A.dim)]
    if check_parity:
        for j, col in enumerate(cols):
            for k, c in enumerate(col):
                if not c.is_zero() and B.parity[k] != A.parity[j]:
                    raise AlgebraError(
                        "map does not preserve parity at %s" % A.names[j]
                    )
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = F.apply(A.multiply(A.basis_vec(i), A.basis_vec(j)))
            rhs = B.multiply(cols[i], cols[j])
            if lhs != rhs:
                raise AlgebraError(
                    "not a homomorphism at pair (%s, %s)" % (A.names[i], A.names[j])
                )
    if bijective:
        from .linalg import rank

        if rank(F) != A.dim or A.dim != B.dim:
            raise AlgebraError("map is not bijective")
    return True


def is_homomorphism(A, B, F, bijective=False, check_parity=True):
    """Boolean form of check_homomorphism."""
    try:
        return check_homomorphism(A, B, F, bijective=bijective, check_parity=check_parity)
    except AlgebraError:
        return False


def derivations(A, parity=0):
    """Basis of (super-)derivations of the given parity, as matrices.

    D(xy) = D(x)y + (-1)^(|D||x|) x D(y); unknowns are matrix entries D[k,i]
    with parity[k] = parity[i] + parity(D).
    """
    n = A.dim
    par = A.parity
    dpar = parity % 2
    cols = {}
    for i in range(n):
        for k in range(n):
            if par[k] == (par[i] + dpar) % 2:
                cols[(k, i)] = len(cols)

    def rows():
        for i in range(n):
            sign = -ONE if (dpar * par[i]) % 2 else ONE
            for j in range(n):
                eq = {}  # k -> {col: coeff}
                for t, c in A.table.get((i, j), ()):
                    for k in range(n):
                        key = (k, t)
                        if key in cols:
                            eq.setdefault(k, {})[cols[key]] = (
                                eq.get(k, {}).get(cols[key], ZERO) + c
                            )
                for a in range(n):
                    key = (a, i)
                    if key not in cols:
                        continue
                    for k, c in A.table.get((a, j), ()):
                        d = eq.setdefault(k, {})
                        d[cols[key]] = d.get(cols[key], ZERO) - c
                for b in range(n):
                    key = (b, j)
                    if key not in cols:
                        continue
                    for k, c in A.table.get((i, b), ()):
                        d = eq.setdefault(k, {})
                        d[cols[key]] = d.get(cols[key], ZERO) - sign * c
                for k, row in eq.items():
                    yield row

    ker = sparse_kernel(rows(), len(cols))
    mats = []
    for v in ker:
        entries = [[ZERO] * n for _ in range(n)]
        for (k, i), cidx in cols.items():
            entries[k][i] = v[cidx]
        mats.append(Mat(entries, ncols=n))
    return mats


def derivation_superalgebra(A, names=None):
    """The Lie superalgebra der(A) of all superderivations.

    Returns (algebra, matrices): basis is even derivations followed by odd
    ones, the bracket is the supercommutator D E - (-1)^(|D||E|) E D expressed
    in that basis.  The result passes check_lie_super.
    """
    evens = derivations(A, parity=0)
    odds = derivations(A, parity=1)
    mats = list(evens) + list(odds)
    parities = [0] * len(evens) + [1] * len(odds)
    n = A.dim
    # coordinates of a matrix over the derivation basis, via a dense solve
    flat = Mat.from_cols(
        [[m[r, c] for r in range(n) for c in range(n)] for m in mats],
        nrows=n * n,
    )

    def coords(mat):
        vec = [mat[r, c] for r in range(n) for c in range(n)]
        sol = solve(flat, vec)
        if sol is None:
            raise AlgebraError("supercommutator left the derivation space")
        return sol

    table = {}
    for i, (Di, pi) in enumerate(zip(mats, parities)):
        for j, (Dj, pj) in enumerate(zip(mats, parities)):
            comm = Di * Dj - (Dj * Di).scale(-ONE if (pi * pj) % 2 else ONE)
            entry = [(k, c) for k, c in enumerate(coords(comm)) if not c.is_zero()]
            if entry:
                table[(i, j)] = entry
    if names is None:
        names = ["d%d" % i for i in range(len(mats))]
    der = SuperAlgebra(names, parities, table)
    return der, mats


def lie_closure(A, vectors):
    """Basis of the subalgebra generated by the given elements."""
    basis = []

    def insert(vec):
        v = list(vec)
        for piv, row in basis:
            if not v[piv].is_zero():
                f = v[piv]
                v = [x - f * y for x, y in zip(v, row)]
        piv = next((i for i, x in enumerate(v) if not x.is_zero()), None)
        if piv is None:
            return None
        inv = v[piv].inverse()
        v = tuple(inv * x for x in v)
        basis.append((piv, v))
        return v

    frontier = [v for v in (insert(w) for w in vectors) if v is not None]
    while frontier:
        new = []
        current = [row for _, row in basis]
        for f in frontier:
            for b in current:
                w = insert(A.multiply(b, f))
                if w is not None:
                    new.append(w)
                w = insert(A.multiply(f, b))
                if w is not None:
                    new.append(w)
        frontier = new
    return [row for _, row in basis]


def lie_generates(A, vectors):
    return len(lie_closure(A, vectors)) == A.dim


def ideal_generated_by(A, vectors):
    """Basis of the two-sided ideal generated by the given elements."""
    basis = []

    def insert(vec):
        v = list(vec)
        for piv, row in basis:
            if not v[piv].is_zero():
                f = v[piv]
                v = [x - f * y for x, y in zip(v, row)]
        piv = next((i for i, x in enumerate(v) if not x.is_zero()), None)
        if piv is None:
            return None
        inv = v[piv].inverse()
        v = tuple(inv * x for x in v)
        basis.append((piv, v))
        return v

    frontier = [v for v in (insert(w) for w in vectors) if v is not None]
    gens = [A.basis_vec(i) for i in range(A.dim)]
    while frontier:
        new = []
        for f in frontier:
            for g in gens:
                for w in (A.multiply(g, f), A.multiply(f, g)):
                    r = insert(w)
                    if r is not None:
                        new.append(r)
        frontier = new
    return [row for _, row in basis]


# ---------------------------------------------------------------------------
# invariant pairings and completion
# ---------------------------------------------------------------------------


def invariant_pairings(g0, action, hints=(), generators=None, target=None):
    """Basis of symmetric g0-equivariant pairings b : S^2 m -> g0.

    Equivariance: [x, b(u, v)] = b(x.u, v) + b(u, x.v) for all x in g0.
    ``hints`` is a list of (h, module_weights, adjoint_weights) with h a g0
    element whose action and adjoint matrices are *diagonal* in the given
    bases with the stated weights (verified here); coefficients that violate
    weight additivity are dropped before solving.  ``generators`` (default:
    the whole basis) must generate g0 as a Lie algebra — then equivariance
    for the generators implies it for all of g0, since the annihilator of a
    pairing under the natural g0-action on Hom(S^2 m, g0) is a subalgebra.

    ``target`` restricts the values: only pairings landing in the span of the
    listed g0 basis vectors (names or indices) are returned.  The restricted
    space is the full Hom into that span when the span is an ideal of g0,
    e.g. a simple summand.

    Returns a list of pairings, each a dict {(i, j): g0-vector} for i <= j.
    """
    md = action.module_dim
    n0 = g0.dim
    if target is None:
        tgt = set(range(n0))
    else:
        tgt = {g0.index(t) for t in target}
    weight_data = []
    for h, mw, aw in hints:
        mw = [scalar(c) for c in mw]
        aw = [scalar(c) for c in aw]
        if len(mw) != md or len(aw) != n0:
            raise AlgebraError("hint weight lists have wrong lengths")
        H = action.matrix(h)
        for i in range(md):
            for j in range(md):
                want = mw[i] if i == j else ZERO
                if H[i, j] != want:
                    raise AlgebraError("hint action matrix is not diagonal as stated")
        adH = g0.ad_matrix(h)
        for i in range(n0):
            for j in range(n0):
                want = aw[i] if i == j else ZERO
                if adH[i, j] != want:
                    raise AlgebraError("hint adjoint matrix is not diagonal as stated")
        weight_data.append((mw, aw))

    def allowed(i, j, k):
        if k not in tgt:
            return False
        for mw, aw in weight_data:
            if mw[i] + mw[j] != aw[k]:
                return False
        return True

    cols = {}
    for i in range(md):
        for j in range(i, md):
            for k in range(n0):
                if allowed(i, j, k):
                    cols[(i, j, k)] = len(cols)
    if generators is None:
        generators = [g0.basis_vec(i) for i in range(n0)]
    else:
        if not lie_generates(g0, generators):
            raise AlgebraError("supplied generators do not generate g0")

    def key(i, j):
        return (i, j) if i <= j else (j, i)

    def rows():
        for x in generators:
            X = action.matrix(x)
            adX = g0.ad_matrix(x)
            xcols = [X.col(t) for t in range(md)]
            for i in range(md):
                for j in range(i, md):
                    eq = {}  # l -> {col: coeff}
                    for k in range(n0):
                        cidx = cols.get((i, j, k))
                        if cidx is None:
                            continue
                        for l in range(n0):
                            v = adX[l, k]
                            if not v.is_zero():
                                d = eq.setdefault(l, {})
                                d[cidx] = d.get(cidx, ZERO) + v
                    for a in range(md):
                        f = xcols[i][a]
                        if not f.is_zero():
                            for k in range(n0):
                                cidx = cols.get(key(a, j) + (k,))
                                if cidx is not None:
                                    d = eq.setdefault(k, {})
                                    d[cidx] = d.get(cidx, ZERO) - f
                        f = xcols[j][a]
                        if not f.is_zero():
                            for k in range(n0):
                                cidx = cols.get(key(i, a) + (k,))
                                if cidx is not None:
                                    d = eq.setdefault(k, {})
                                    d[cidx] = d.get(cidx, ZERO) - f
                    for l, row in eq.items():
                        yield row

    ker = sparse_kernel(rows(), len(cols))
    out = []
    for v in ker:
        pairing = {}
        for (i, j, k), cidx in cols.items():
            c = v[cidx]
            if c.is_zero():
                continue
            vec = pairing.setdefault((i, j), [ZERO] * n0)
            vec[k] = c
        out.append({ij: tuple(vec) for ij, vec in pairing.items()})
    return out


def pairing_value(pairing, n0, i, j):
    if i > j:
        i, j = j, i
    return pairing.get((i, j), (ZERO,) * n0)


def complete_superalgebra(
    g0,
    action,
    pairings,
    odd_names=None,
    pins=None,
    verify=True,
):
    """Assemble g = g0 + m with odd bracket from span(pairings).

    The odd-odd-odd super Jacobi identity is linear in the pairing
    coefficients; its solution space is computed exactly.  When it is a line,
    the bracket is normalized so the first nonzero coefficient is 1.  When it
    is higher-dimensional the caller must pin specific bracket values via
    ``pins = [((i, j), expected_g0_vector), ...]`` until the solution is
    unique.  Returns (algebra, coefficient tuple).
    """
    md = action.module_dim
    n0 = g0.dim
    npair = len(pairings)
    if odd_names is None:
        odd_names = action.module_names
    if npair == 0:
        raise AlgebraError("no candidate pairings supplied")

    amats = {}

    def act_of(gvec):
        key = tuple(gvec)
        if key not in amats:
            amats[key] = action.matrix(gvec)
        return amats[key]

    basis_m = [
        tuple(ONE if t == s else ZERO for t in range(md)) for s in range(md)
    ]

    def jac_terms(t, i, j, k):
        b = pairings[t]
        out = act_of(pairing_value(b, n0, j, k)).apply(basis_m[i])
        out = vec_add(out, act_of(pairing_value(b, n0, k, i)).apply(basis_m[j]))
        out = vec_add(out, act_of(pairing_value(b, n0, i, j)).apply(basis_m[k]))
        return out

    def rows():
        for i in range(md):
            for j in range(i, md):
                for k in range(j, md):
                    per_t = [jac_terms(t, i, j, k) for t in range(npair)]
                    for l in range(md):
                        row = {}
                        for t in range(npair):
                            c = per_t[t][l]
                            if not c.is_zero():
                                row[t] = c
                        if row:
                            yield row

    jac_rows = list(rows())
    ker = sparse_kernel(jac_rows, npair)
    if not ker:
        raise AlgebraError("no Jacobi-compatible bracket in the pairing span")

    if pins:
        # solve Jacobi + pin constraints as an affine system
        dense_rows = []
        rhs = []
        for row in jac_rows:
            dense_rows.append([row.get(t, ZERO) for t in range(npair)])
            rhs.append(ZERO)
        for (i, j), expected in pins:
            expected = tuple(scalar(c) for c in expected)
            for l in range(n0):
                dense_rows.append(
                    [pairing_value(pairings[t], n0, i, j)[l] for t in range(npair)]
                )
                rhs.append(expected[l])
        system = Mat(dense_rows, ncols=npair)
        if kernel(system):
            raise AlgebraError(
                "bracket is underdetermined; add pins to fix the scale"
            )
        coeffs = solve(system, rhs)
        if coeffs is None:
            raise AlgebraError("pins are inconsistent with the Jacobi identity")
    else:
        if len(ker) > 1:
            raise AlgebraError(
                "Jacobi solution space has dimension %d; pins required" % len(ker)
            )
        coeffs = ker[0]
        lead = next(c for c in coeffs if not c.is_zero())
        inv = lead.inverse()
        coeffs = tuple(inv * c for c in coeffs)

    # assemble the full table
    names = list(g0.names) + list(odd_names)
    parity = list(g0.parity) + [1] * md
    if any(p for p in g0.parity):
        raise AlgebraError("g0 must be purely even")
    table = {}
    for (i, j), terms in g0.table.items():
        table[(i, j)] = list(terms)
    for (i, j), terms in action.table.items():
        table[(i, n0 + j)] = [(n0 + k, c) for k, c in terms]
        table[(n0 + j, i)] = [(n0 + k, -c) for k, c in terms]
    for i in range(md):
        for j in range(i, md):
            vec = [ZERO] * n0
            for t, ct in enumerate(coeffs):
                if ct.is_zero():
                    continue
                pv = pairing_value(pairings[t], n0, i, j)
                vec = [x + ct * y for x, y in zip(vec, pv)]
            entry = [(k, c) for k, c in enumerate(vec) if not c.is_zero()]
            if entry:
                table[(n0 + i, n0 + j)] = entry
                if i != j:
                    table[(n0 + j, n0 + i)] = entry
    out = SuperAlgebra(names, parity, table)
    if verify:
        check_lie_super(out)
    return out, coeffs


def change_basis(A, P, names=None):
    """Same algebra in the basis given by the columns of P (must be invertible
    and parity homogeneous)."""
    from .linalg import inverse

    n = A.dim
    if P.shape != (n, n):
        raise AlgebraError("basis matrix must be %d x %d" % (n, n))
    Pinv = inverse(P)
    cols = [P.col(j) for j in range(n)]
    parity = [A.parity_of(c) for c in cols]
    table = {}
    for i in range(n):
        for j in range(n):
            prod = Pinv.apply(A.multiply(cols[i], cols[j]))
            entry = [(k, c) for k, c in enumerate(prod) if not c.is_zero()]
            if entry:
                table[(i, j)] = entry
    if names is None:
        names = ["b%d" % i for i in range(n)]
    return SuperAlgebra(names, parity, table)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _algebra_payload(A):
    return {
        "names": list(A.names),
        "parity": list(A.parity),
        "table": {
            "%d,%d" % ij: [[k, format_scalar(c)] for k, c in terms]
            for ij, terms in sorted(A.table.items())
        },
    }


def dumps_algebra(A, **extra):
    payload = _algebra_payload(A)
    payload.update(extra)
    return json.dumps(payload, indent=2, sort_keys=True)


def loads_algebra(text):
    payload = json.loads(text)
    table = {}
    for key, terms in payload["table"].items():
        i, j = (int(p) for p in key.split(","))
        table[(i, j)] = [(int(k), parse_scalar(c)) for k, c in terms]
    return SuperAlgebra(payload["names"], payload["parity"], table)


def save_algebra(A, path, **extra):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_algebra(A, **extra))
        fh.write("\n")


def load_algebra(path):
    with open(path, encoding="utf-8") as fh:
        return loads_algebra(fh.read())

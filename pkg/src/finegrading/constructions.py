"""Exact models of the algebras behind the three exceptional families.

Builders return a :class:`BuiltAlgebra`: the algebra with exact structure
constants, the gradings that come for free with the chosen basis (one degree
per basis vector), and model-specific extras (distinguished elements,
matrices, index layouts) consumed by the grading catalog and the verifiers.

The constructions, bottom to top:

* split quaternions and the split Cayley algebra, with their sign gradings
  and a distinguished eigenbasis for the two-torus of Cayley derivations;
* the graded division algebras generated by two anticommuting-up-to-a-root
  units of order 2 or 4;
* the three-dimensional Kaplansky superalgebra and the ten-dimensional Kac
  Jordan superalgebra built from two copies of it;
* a Tits-Kantor-Koecher style functor  J  ->  (sl2 (x) J) + der(J);
* D(2,1;a) by explicit structure constants, symbolically in the parameter;
* G(3) and F(4), each assembled as g0 + g1 by solving for the equivariant
  pairing S^2 g1 -> g0 and the odd Jacobi constraint.  F(4) is built three
  times — Cayley/spin model, TKK over the Kac superalgebra, quaternionic
  model — because each model makes different fine gradings visible.
"""

from __future__ import annotations

from fractions import Fraction

from .abgroup import GradingGroup
from .errors import AlgebraError
from .linalg import (
    Mat,
    inverse,
    joint_eigenspaces,
    rank,
    solve,
    vec_add,
    vec_scale,
)
from .scalars import ALPHA, HALF, IUNIT, MINUS_ONE, ONE, ZERO, scalar
from .superalg import (
    LinMap,
    ModuleAction,
    SuperAlgebra,
    change_basis,
    check_lie_super,
    complete_superalgebra,
    derivation_superalgebra,
    derivations,
    invariant_pairings,
    lie_closure,
)

__all__ = [
    "BuiltAlgebra",
    "build_quaternions",
    "build_cayley",
    "cayley_weight_basis",
    "build_An",
    "build_kaplansky",
    "build_kac",
    "build_tkk",
    "verify_tkk_iso_lemma",
    "build_D21",
    "build_G3",
    "build_F4",
    "d21_triple_automorphism",
    "d21_cycle_automorphism",
    "d21_swap_automorphism",
]


class BuiltAlgebra:
    """An algebra plus the gradings and auxiliary data of its construction.

    ``gradings`` maps a label (the group literal) to a pair
    ``(GradingGroup, degrees)`` with one group element per basis vector.
    ``extras`` is a free-form dict of model data.
    """

    def __init__(self, algebra, gradings=None, extras=None):
        self.algebra = algebra
        self.gradings = dict(gradings or {})
        self.extras = dict(extras or {})

    @property
    def dim(self):
        return self.algebra.dim

    def grading(self, label):
        try:
            return self.gradings[label]
        except KeyError:
            raise AlgebraError(
                "no grading labelled %r (have %s)"
                % (label, ", ".join(sorted(self.gradings)) or "none")
            ) from None

    def __repr__(self):
        return "BuiltAlgebra(%r, gradings=%s)" % (
            self.algebra,
            sorted(self.gradings),
        )


# ---------------------------------------------------------------------------
# small matrix helpers
# ---------------------------------------------------------------------------


def _diag(entries):
    n = len(entries)
    return Mat(
        [[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)]
    )


def _kron(A, B):
    rows = []
    for i in range(A.nrows):
        for k in range(B.nrows):
            row = []
            for j in range(A.ncols):
                a = A[i, j]
                for l in range(B.ncols):
                    row.append(a * B[k, l])
            rows.append(row)
    return Mat(rows, ncols=A.ncols * B.ncols)


def _flatten(m):
    return [m[r, c] for r in range(m.nrows) for c in range(m.ncols)]


def _block_diag(A, B):
    n, m = A.nrows, B.nrows
    rows = []
    for i in range(n):
        rows.append(list(A.row(i)) + [ZERO] * m)
    for i in range(m):
        rows.append([ZERO] * n + list(B.row(i)))
    return Mat(rows, ncols=n + m)


def _int_of(s):
    """Exact integer value of a constant scalar."""
    f = scalar(s).constant_value().to_fraction()
    if f.denominator != 1:
        raise AlgebraError("expected an integer, got %s" % f)
    return int(f)


def _is_derivation(A, D, parity=0):
    """Super-Leibniz check of a matrix on basis pairs."""
    n = A.dim
    basis = [A.basis_vec(i) for i in range(n)]
    for i in range(n):
        sign = MINUS_ONE if (parity * A.parity[i]) % 2 else ONE
        di = D.apply(basis[i])
        for j in range(n):
            lhs = D.apply(A.multiply(basis[i], basis[j]))
            rhs = vec_add(
                A.multiply(di, basis[j]),
                vec_scale(sign, A.multiply(basis[i], D.apply(basis[j]))),
            )
            if lhs != rhs:
                return False
    return True


def _small_generating_set(g0):
    """A short list of basis vectors generating g0, or None to use them all."""
    chosen = []
    dim = 0
    for idx in range(g0.dim):
        trial = chosen + [g0.basis_vec(idx)]
        d = len(lie_closure(g0, trial))
        if d > dim:
            chosen, dim = trial, d
            if dim == g0.dim:
                return chosen
    return None


# ---------------------------------------------------------------------------
# split quaternions
# ---------------------------------------------------------------------------


def _det2(m):
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def build_quaternions():
    """Split quaternions as 2x2 matrices: q1, q2 of square 1, q3 = q1 q2.

    Basis 1, q1, q2, q3 with q1 = diag(1,-1), q2 the flip, q3 = q1 q2; the
    norm is the determinant and conjugation negates q1, q2, q3.  The sign
    grading by Z_2 x Z_2 assigns q1 -> (1,0) and q2 -> (0,1).
    """
    mats = (
        Mat.identity(2),
        Mat([[1, 0], [0, -1]]),
        Mat([[0, 1], [1, 0]]),
        Mat([[0, 1], [-1, 0]]),
    )

    def coords(m):
        a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
        return (
            (a + d) * HALF,
            (a - d) * HALF,
            (b + c) * HALF,
            (b - c) * HALF,
        )

    names = ("1", "q1", "q2", "q3")
    table = {}
    for i in range(4):
        for j in range(4):
            entry = [
                (k, c) for k, c in enumerate(coords(mats[i] * mats[j]))
                if not c.is_zero()
            ]
            table[(i, j)] = entry
    alg = SuperAlgebra(names, (0, 0, 0, 0), table)

    bar = LinMap(alg, alg, _diag([ONE, -ONE, -ONE, -ONE]))
    # polar form of the determinant norm, computed rather than postulated
    gram = []
    for i in range(4):
        row = []
        for j in range(4):
            row.append(_det2(mats[i] + mats[j]) - _det2(mats[i]) - _det2(mats[j]))
        gram.append(row)
    gram = Mat(gram)

    group = GradingGroup(0, (2, 2))
    degrees = tuple(
        group.element((), t) for t in ((0, 0), (1, 0), (0, 1), (1, 1))
    )
    extras = {"matrices": mats, "bar": bar, "norm_gram": gram}
    return BuiltAlgebra(alg, {group.literal(): (group, degrees)}, extras)


# ---------------------------------------------------------------------------
# split Cayley algebra
# ---------------------------------------------------------------------------

# oriented lines of the multiplication: for (a, b, c) below,
# e_a e_b = e_c,  e_b e_c = e_a,  e_c e_a = e_b, and reversals pick up a sign
_FANO = ((1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3))

_CAYLEY_SIGN_DEGREES = (
    (0, 0, 0),
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (1, 1, 0),
    (0, 1, 1),
    (1, 1, 1),
    (1, 0, 1),
)


def build_cayley():
    """Split Cayley (octonion) algebra on 1, e1..e7 with e_i^2 = -1.

    The norm makes the basis orthogonal with N(1) = N(e_i) = 1, conjugation
    negates the e_i, and the sign grading by Z_2^3 puts e1, e2, e3 on the
    three generators with e4 = e1 e2 etc. on the sums.
    """
    names = ("1",) + tuple("e%d" % i for i in range(1, 8))
    table = {}
    for j in range(8):
        table[(0, j)] = [(j, ONE)]
        table[(j, 0)] = [(j, ONE)]
    for i in range(1, 8):
        table[(i, i)] = [(0, -ONE)]
    for (a, b, c) in _FANO:
        for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
            table[(x, y)] = [(z, ONE)]
            table[(y, x)] = [(z, -ONE)]
    alg = SuperAlgebra(names, (0,) * 8, table)

    bar = LinMap(alg, alg, _diag([ONE] + [-ONE] * 7))
    gram = _diag([2 * ONE] * 8)
    group = GradingGroup(0, (2, 2, 2))
    degrees = tuple(group.element((), t) for t in _CAYLEY_SIGN_DEGREES)
    extras = {"bar": bar, "norm_gram": gram, "lines": _FANO}
    return BuiltAlgebra(alg, {group.literal(): (group, degrees)}, extras)


def cayley_weight_basis(C):
    """Eigenbasis E1, E2, x1, x2, x3, y1, y2, y3 of the Cayley two-torus.

    E1, E2 are the orthogonal idempotents (1 +- i e1)/2; the x's span the
    weight spaces (1,0), (0,1), (-1,-1) of the torus derivations t1, t2 and
    the y's the opposite ones.  Returns the basis vectors, the base-change
    matrix P (columns in the 1, e1..e7 coordinates), its inverse, t1, t2 as
    matrices, and the weight list.
    """
    A = C.algebra
    i = IUNIT

    def elt(items):
        return A.element(items)

    vecs = (
        elt({"1": HALF, "e1": i * HALF}),
        elt({"1": HALF, "e1": -(i * HALF)}),
        elt({"e2": ONE, "e4": i}),
        elt({"e5": ONE, "e6": i}),
        elt({"e3": ONE, "e7": i}),
        elt({"e2": ONE, "e4": -i}),
        elt({"e5": ONE, "e6": -i}),
        elt({"e3": ONE, "e7": -i}),
    )
    names = ("E1", "E2", "x1", "x2", "x3", "y1", "y2", "y3")
    weights = ((0, 0), (0, 0), (1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1))
    P = Mat.from_cols(vecs, nrows=8)
    Pinv = inverse(P)
    t1 = P * _diag([scalar(v) for v in (0, 0, 1, 0, -1, -1, 0, 1)]) * Pinv
    t2 = P * _diag([scalar(v) for v in (0, 0, 0, 1, -1, 0, -1, 1)]) * Pinv
    for t in (t1, t2):
        if not _is_derivation(A, t):
            raise AlgebraError("torus element is not a derivation")
    return {
        "names": names,
        "vectors": vecs,
        "weights": weights,
        "P": P,
        "Pinv": Pinv,
        "t1": t1,
        "t2": t2,
    }


def _cayley_zero_part(C, wb):
    """Weight basis x1, x2, x3, c0 = i e1, y1, y2, y3 of the trace-zero part."""
    A = C.algebra
    v = wb["vectors"]
    c0 = A.element({"e1": IUNIT})
    vecs = (v[2], v[3], v[4], c0, v[5], v[6], v[7])
    names = ("x1", "x2", "x3", "c0", "y1", "y2", "y3")
    weights = ((1, 0), (0, 1), (-1, -1), (0, 0), (-1, 0), (0, -1), (1, 1))
    for w in vecs:
        if not w[0].is_zero():
            raise AlgebraError("trace-zero weight vector has a unit component")
    M = Mat.from_cols(vecs, nrows=8)

    def restrict(D8):
        cols = []
        for w in vecs:
            c = solve(M, D8.apply(w))
            if c is None:
                raise AlgebraError("operator does not preserve the trace-zero part")
            cols.append(c)
        return Mat.from_cols(cols, nrows=7)

    return {
        "names": names,
        "vectors": vecs,
        "weights": weights,
        "matrix": M,
        "restrict": restrict,
    }


# ---------------------------------------------------------------------------
# graded division algebras on two unitary generators
# ---------------------------------------------------------------------------


def build_An(n):
    """Graded division algebra with generators x, y, yx = eps^-1 xy.

    ``eps`` is a primitive n-th root of unity; only n = 2 (the quaternion
    case) and n = 4 are built.  Basis x^a y^b, graded by Z_n x Z_n via the
    exponents; the product is (x^a y^b)(x^c y^d) = eps^(-bc) x^(a+c) y^(b+d).
    """
    if n == 2:
        eps = MINUS_ONE
    elif n == 4:
        eps = IUNIT
    else:
        raise AlgebraError("only orders 2 and 4 are supported, got %r" % (n,))
    pairs = [(a, b) for a in range(n) for b in range(n)]
    index = {p: k for k, p in enumerate(pairs)}
    names = tuple("x%dy%d" % p for p in pairs)
    table = {}
    for (a, b) in pairs:
        for (c, d) in pairs:
            k = index[((a + c) % n, (b + d) % n)]
            table[(index[(a, b)], index[(c, d)])] = [(k, eps ** ((-b * c) % n))]
    alg = SuperAlgebra(names, (0,) * len(names), table)
    group = GradingGroup(0, (n, n))
    degrees = tuple(group.element((), p) for p in pairs)
    return BuiltAlgebra(
        alg, {group.literal(): (group, degrees)}, {"epsilon": eps, "order": n}
    )


# ---------------------------------------------------------------------------
# Kaplansky and Kac superalgebras
# ---------------------------------------------------------------------------


def build_kaplansky():
    """Three-dimensional Kaplansky superalgebra K3 = Fe + (Fv+ + Fv-).

    e is an idempotent acting as 1/2 on the odd part; v+ v- = e = -v- v+.
    The designated grading is by Z with deg v(+-) = +-1.  The extras carry
    the invariant form with (e|e) = 1/2 and (v+|v-) = 1.
    """
    names = ("e", "vp", "vm")
    table = {
        (0, 0): [(0, ONE)],
        (0, 1): [(1, HALF)],
        (1, 0): [(1, HALF)],
        (0, 2): [(2, HALF)],
        (2, 0): [(2, HALF)],
        (1, 2): [(0, ONE)],
        (2, 1): [(0, -ONE)],
    }
    alg = SuperAlgebra(names, (0, 1, 1), table)
    group = GradingGroup(1)
    degrees = tuple(group.element((z,), ()) for z in (0, 1, -1))
    form = Mat([[HALF, ZERO, ZERO], [ZERO, ZERO, ONE], [ZERO, -ONE, ZERO]])
    return BuiltAlgebra(alg, {group.literal(): (group, degrees)}, {"form": form})


def build_kac():
    """The ten-dimensional Kac Jordan superalgebra K10 = F1 + K3 (x) K3.

    Product: (a (x) b)(c (x) d) = (-1)^(|b||c|) ( ac (x) bd
    - 3/4 (a|c)(b|d) 1 ).  Returns (K3, K10) as built algebras.  K10 carries
    the Z^2 grading by the pair of K3 degrees; the extras hold the orthogonal
    idempotents E1, E2, the factor-swap automorphism tau, and the degree data.
    """
    K3b = build_kaplansky()
    K3 = K3b.algebra
    B = K3b.extras["form"]
    zdeg3 = (0, 1, -1)

    names = ["one"] + ["%s.%s" % (a, b) for a in K3.names for b in K3.names]
    parity = [0] + [(K3.parity[a] + K3.parity[b]) % 2 for a in range(3) for b in range(3)]

    def idx(a, b):
        return 1 + 3 * a + b

    table = {}
    for k in range(10):
        table[(0, k)] = [(k, ONE)]
        table[(k, 0)] = [(k, ONE)]
    three_quarters = scalar(Fraction(3, 4))
    for a in range(3):
        for b in range(3):
            for c in range(3):
                for d in range(3):
                    sign = MINUS_ONE if (K3.parity[b] * K3.parity[c]) % 2 else ONE
                    terms = []
                    for (s, cs) in K3.product_basis(a, c):
                        for (t, ct) in K3.product_basis(b, d):
                            terms.append((idx(s, t), sign * cs * ct))
                    f = B[a, c] * B[b, d]
                    if not f.is_zero():
                        terms.append((0, -(sign * three_quarters * f)))
                    if terms:
                        table[(idx(a, b), idx(c, d))] = terms
    alg = SuperAlgebra(names, parity, table)

    group = GradingGroup(2)
    zdegrees = [(0, 0)] + [(zdeg3[a], zdeg3[b]) for a in range(3) for b in range(3)]
    degrees = tuple(group.element(z, ()) for z in zdegrees)

    E1 = alg.element({"one": -HALF, "e.e": 2})
    E2 = alg.element({"one": scalar(Fraction(3, 2)), "e.e": -2})
    tau_cols = [alg.basis_vec(0)]
    for a in range(3):
        for b in range(3):
            sign = MINUS_ONE if (K3.parity[a] * K3.parity[b]) % 2 else ONE
            col = [ZERO] * 10
            col[idx(b, a)] = sign
            tau_cols.append(tuple(col))
    tau = LinMap(alg, alg, Mat.from_cols(tau_cols, nrows=10))

    extras = {
        "K3": K3b,
        "E1": E1,
        "E2": E2,
        "tau": tau,
        "zdegrees": tuple(zdegrees),
        "zweight": tuple(z[0] + z[1] for z in zdegrees),
    }
    K10b = BuiltAlgebra(alg, {group.literal(): (group, degrees)}, extras)
    return K3b, K10b


# ---------------------------------------------------------------------------
# Tits-Kantor-Koecher style construction
# ---------------------------------------------------------------------------


def build_tkk(J, der_basis=None, verify=True):
    """Lie superalgebra  (sl2 (x) J) + der(J)  for a unital Jordan superalgebra.

    sl2 is realized as the trace-zero split quaternions q1, q2, q3 under the
    commutator; the bracket of two tensors is

        [p (x) x, q (x) y] = [p, q] (x) xy - 2 N(p, q) [L_x, L_y]

    with N the polar norm and [L_x, L_y] the supercommutator of left
    multiplications, rewritten in the derivation basis.  ``der_basis`` may
    supply the derivation basis as (matrix, parity) pairs (checked); by
    default the super-Leibniz kernel is used.  J must be supercommutative and
    unital, and the left multiplications must close into derivations — all of
    which is verified, as is the final Lie superalgebra axiom set when
    ``verify`` is set.
    """
    n = J.dim
    basis = [J.basis_vec(i) for i in range(n)]
    for i in range(n):
        for j in range(i, n):
            sign = MINUS_ONE if (J.parity[i] * J.parity[j]) % 2 else ONE
            if J.multiply(basis[i], basis[j]) != vec_scale(
                sign, J.multiply(basis[j], basis[i])
            ):
                raise AlgebraError(
                    "input is not supercommutative at (%s, %s)"
                    % (J.names[i], J.names[j])
                )
    # unit: solve u . b_j = b_j for all j
    urows = []
    urhs = []
    for j in range(n):
        for k in range(n):
            row = [ZERO] * n
            for i in range(n):
                for (t, c) in J.product_basis(i, j):
                    if t == k:
                        row[i] = row[i] + c
            urows.append(row)
            urhs.append(ONE if k == j else ZERO)
    unit = solve(Mat(urows, ncols=n), urhs)
    if unit is None:
        raise AlgebraError("input algebra has no unit")

    evens = derivations(J, 0)
    odds = derivations(J, 1)
    if der_basis is None:
        ders = [(m, 0) for m in evens] + [(m, 1) for m in odds]
    else:
        ders = [(m, p % 2) for (m, p) in der_basis]
        if len(ders) != len(evens) + len(odds):
            raise AlgebraError(
                "derivation basis has %d elements, expected %d"
                % (len(ders), len(evens) + len(odds))
            )
        for (m, p) in ders:
            if not _is_derivation(J, m, parity=p):
                raise AlgebraError("supplied matrix is not a superderivation")
    nder = len(ders)
    flat = Mat.from_cols([_flatten(m) for (m, _) in ders], nrows=n * n)

    def dcoords(mat):
        sol = solve(flat, _flatten(mat))
        if sol is None:
            raise AlgebraError(
                "left multiplications do not close into the derivation algebra"
            )
        return sol

    # left multiplication matrices
    L = []
    for i in range(n):
        cols = []
        for j in range(n):
            col = [ZERO] * n
            for (k, c) in J.product_basis(i, j):
                col[k] = c
            cols.append(col)
        L.append(Mat.from_cols(cols, nrows=n))

    lcomm = {}
    for i in range(n):
        for j in range(i, n):
            sign = MINUS_ONE if (J.parity[i] * J.parity[j]) % 2 else ONE
            comm = L[i] * L[j] - (L[j] * L[i]).scale(sign)
            cij = dcoords(comm)
            lcomm[(i, j)] = cij
            if i != j:
                lcomm[(j, i)] = tuple(-(sign * c) for c in cij)

    QB = build_quaternions()
    Qa = QB.algebra
    ngram = QB.extras["norm_gram"]
    qvecs = [Qa.basis_vec(k) for k in range(4)]
    qcomm = {}
    for a in range(1, 4):
        for b in range(1, 4):
            comm = tuple(
                x - y
                for x, y in zip(
                    Qa.multiply(qvecs[a], qvecs[b]), Qa.multiply(qvecs[b], qvecs[a])
                )
            )
            if not comm[0].is_zero():
                raise AlgebraError("quaternion commutator has a unit component")
            qcomm[(a, b)] = comm

    qnames = ("q1", "q2", "q3")
    names = ["%s[%s]" % (qn, jn) for qn in qnames for jn in J.names]
    names += ["d%d" % r for r in range(nder)]
    parity = [J.parity[x] for _ in range(3) for x in range(n)]
    parity += [p for (_, p) in ders]
    off = 3 * n

    table = {}
    minus_two = scalar(-2)
    for a in range(3):
        for b in range(3):
            comm = qcomm[(a + 1, b + 1)]
            nab = ngram[a + 1, b + 1]
            for i in range(n):
                for j in range(n):
                    terms = []
                    prod = J.product_basis(i, j)
                    for c in range(1, 4):
                        if comm[c].is_zero():
                            continue
                        for (k, cf) in prod:
                            terms.append(((c - 1) * n + k, comm[c] * cf))
                    if not nab.is_zero():
                        f = minus_two * nab
                        for r, cr in enumerate(lcomm[(i, j)]):
                            if not cr.is_zero():
                                terms.append((off + r, f * cr))
                    if terms:
                        table[(a * n + i, b * n + j)] = terms
    for r, (D, dp) in enumerate(ders):
        for a in range(3):
            for i in range(n):
                col = D.col(i)
                terms = [(a * n + k, c) for k, c in enumerate(col) if not c.is_zero()]
                if terms:
                    table[(off + r, a * n + i)] = terms
                    sign = MINUS_ONE if (dp * J.parity[i]) % 2 else ONE
                    table[(a * n + i, off + r)] = [(k, -(sign * c)) for k, c in terms]
    for r, (Dr, pr) in enumerate(ders):
        for s, (Ds, ps) in enumerate(ders):
            sign = MINUS_ONE if (pr * ps) % 2 else ONE
            comm = Dr * Ds - (Ds * Dr).scale(sign)
            cs = dcoords(comm)
            terms = [(off + k, c) for k, c in enumerate(cs) if not c.is_zero()]
            if terms:
                table[(off + r, off + s)] = terms

    alg = SuperAlgebra(names, parity, table)
    if verify:
        check_lie_super(alg)
    extras = {
        "jordan": J,
        "quaternions": QB,
        "unit": unit,
        "der_mats": ders,
        "der_offset": off,
        "der_flat": flat,
    }
    return BuiltAlgebra(alg, {}, extras)


def verify_tkk_iso_lemma(tkkb=None):
    """The 21-dimensional even ideal of tkk(K10) is an orthogonal algebra.

    Inside the even part of tkk(K10), the complement of sl2 (x) E1 is spanned
    by p (x) E2, p (x) (V (x) V) and the even derivations.  On the seven
    dimensional space U = Q0 + (V (x) V), with the quadratic form Q made of
    the quaternion norm and (a (x) b, c (x) d) -> (a|c)(b|d), the map

        p (x) E2   ->  ad_p on Q0,
        p (x) w    ->  Q(p, .) w - Q(w, .) p,
        d          ->  d restricted to V (x) V,

    is checked to be a bijective Lie algebra map onto so(U, Q).  Returns
    True; raises with a witness otherwise.
    """
    if tkkb is None:
        _, K10b = build_kac()
        tkkb = build_tkk(K10b.algebra)
    else:
        K10b = tkkb.extras.get("kac")
        if K10b is None:
            _, K10b = build_kac()
    E2 = K10b.extras["E2"]
    J = tkkb.extras["jordan"]
    QB = tkkb.extras["quaternions"]
    A = tkkb.algebra
    n = J.dim
    off = tkkb.extras["der_offset"]
    ders = tkkb.extras["der_mats"]

    # V (x) V indices inside K10: products of the two odd Kaplansky vectors
    vv = [k for k in range(n) if J.names[k] in ("vp.vp", "vp.vm", "vm.vp", "vm.vm")]
    if len(vv) != 4:
        raise AlgebraError("the Kac superalgebra layout was not recognized")
    K3form = Mat([[ZERO, ONE], [-ONE, ZERO]])  # (vp|vm) = 1 on the odd part

    def vpair(k):
        a, b = J.names[k].split(".")
        return ("vp", "vm").index(a), ("vp", "vm").index(b)

    # U basis: q1, q2, q3 then the four tensors; Gram of Q
    ngram = QB.extras["norm_gram"]
    G = [[ZERO] * 7 for _ in range(7)]
    for a in range(3):
        for b in range(3):
            G[a][b] = ngram[a + 1, b + 1]
    for r, kr in enumerate(vv):
        ar, br = vpair(kr)
        for s, ks in enumerate(vv):
            as_, bs = vpair(ks)
            G[3 + r][3 + s] = K3form[ar, as_] * K3form[br, bs]
    G = Mat(G)

    # domain basis in tkk coordinates
    def tensor_vec(a, jvec):
        v = [ZERO] * A.dim
        for k, c in enumerate(jvec):
            v[a * n + k] = c
        return tuple(v)

    dom = []
    images = []
    Qalg = QB.algebra
    for a in range(3):
        dom.append(tensor_vec(a, E2))
        cols = []
        for b in range(3):
            comm = tuple(
                x - y
                for x, y in zip(
                    Qalg.multiply(Qalg.basis_vec(a + 1), Qalg.basis_vec(b + 1)),
                    Qalg.multiply(Qalg.basis_vec(b + 1), Qalg.basis_vec(a + 1)),
                )
            )
            cols.append(comm[1:4] + (ZERO,) * 4)
        for _ in range(4):
            cols.append((ZERO,) * 7)
        images.append(Mat.from_cols(cols, nrows=7))
    # p (x) w generators
    for a in range(3):
        for r, kr in enumerate(vv):
            jvec = [ZERO] * n
            jvec[kr] = ONE
            dom.append(tensor_vec(a, tuple(jvec)))
            cols = []
            for xi in range(7):
                col = [ZERO] * 7
                qp = G[xi, a]
                if not qp.is_zero():
                    col[3 + r] = col[3 + r] + qp
                qw = G[xi, 3 + r]
                if not qw.is_zero():
                    col[a] = col[a] - qw
                cols.append(col)
            images.append(Mat.from_cols(cols, nrows=7))
    # even derivations
    for ridx, (D, p) in enumerate(ders):
        if p:
            continue
        v = [ZERO] * A.dim
        v[off + ridx] = ONE
        dom.append(tuple(v))
        cols = []
        for s, ks in enumerate(vv):
            w = D.col(ks)
            col = [ZERO] * 7
            for t, kt in enumerate(vv):
                col[3 + t] = w[kt]
            for k in range(n):
                if k not in vv and not w[k].is_zero():
                    raise AlgebraError("even derivation leaks outside V (x) V")
            cols.append(col)
        images.append(
            Mat.from_cols([(ZERO,) * 7] * 3 + cols, nrows=7)
        )

    if len(dom) != 21:
        raise AlgebraError("expected 21 generators, got %d" % len(dom))
    flat = Mat.from_cols([_flatten(m) for m in images], nrows=49)
    if rank(flat) != 21:
        raise AlgebraError("the images do not span a 21-dimensional space")
    for m in images:
        if (m.transpose() * G + G * m) != Mat.zeros(7, 7):
            raise AlgebraError("an image is not skew for the quadratic form")
    domflat = Mat.from_cols(dom, nrows=A.dim)
    for i in range(21):
        for j in range(21):
            br = A.multiply(dom[i], dom[j])
            coords = solve(domflat, br)
            if coords is None:
                raise AlgebraError("the 21-dimensional space is not closed")
            lhs = images[i] * images[j] - images[j] * images[i]
            rhs = Mat.zeros(7, 7)
            for k, c in enumerate(coords):
                if not c.is_zero():
                    rhs = rhs + images[k].scale(c)
            if lhs != rhs:
                raise AlgebraError(
                    "bracket mismatch at generator pair (%d, %d)" % (i, j)
                )
    return True


# ---------------------------------------------------------------------------
# D(2,1;a)
# ---------------------------------------------------------------------------

_WORDS = ("uuu", "uuv", "uvu", "uvv", "vuu", "vuv", "vvu", "vvv")


def _b_sympl(x, y):
    if x == "u" and y == "v":
        return 1
    if x == "v" and y == "u":
        return -1
    return 0


def _gamma_offset(x, y):
    # gamma_{uu} -> E (0), gamma_{uv} -> H (1), gamma_{vv} -> F (2)
    if x == y:
        return 0 if x == "u" else 2
    return 1


def build_D21(alpha=None, verify=True):
    """The family D(2,1;a) on sp(V1) + sp(V2) + sp(V3) acting on V1icV2icV3.

    Even part: three sp(V) copies with basis E_l = gamma_uu, H_l = gamma_uv,
    F_l = gamma_vv; odd part: the eight tensor words in u, v.  The odd
    bracket weights the three symplectic components by 1, a, -1-a.  With
    ``alpha=None`` the parameter stays symbolic; values 0 and -1 are
    rejected (the algebra degenerates there).
    """
    avalue = ALPHA if alpha is None else scalar(alpha)
    if avalue.is_zero() or (avalue + ONE).is_zero():
        raise AlgebraError("the parameter must avoid 0 and -1")
    sigma = (ONE, avalue, -ONE - avalue)

    sp_names = []
    for l in (1, 2, 3):
        sp_names += ["E%d" % l, "H%d" % l, "F%d" % l]
    names = sp_names + list(_WORDS)
    parity = [0] * 9 + [1] * 8
    word_at = {w: 9 + k for k, w in enumerate(_WORDS)}

    table = {}
    for l in range(3):
        E, H, F = 3 * l, 3 * l + 1, 3 * l + 2
        table[(E, F)] = [(H, scalar(4))]
        table[(F, E)] = [(H, scalar(-4))]
        table[(H, E)] = [(E, scalar(-2))]
        table[(E, H)] = [(E, scalar(2))]
        table[(H, F)] = [(F, scalar(2))]
        table[(F, H)] = [(F, scalar(-2))]

    # gamma action on a letter: symbol -> {letter: (letter', coeff)}
    act = {
        0: {"v": ("u", scalar(2))},             # E = gamma_uu
        1: {"u": ("u", scalar(-1)), "v": ("v", ONE)},  # H = gamma_uv
        2: {"u": ("v", scalar(-2))},            # F = gamma_vv
    }
    for l in range(3):
        for g in range(3):
            rules = act[g]
            gi = 3 * l + g
            for w in _WORDS:
                rule = rules.get(w[l])
                if rule is None:
                    continue
                letter, coeff = rule
                w2 = w[:l] + letter + w[l + 1:]
                wi = word_at[w]
                table[(gi, wi)] = [(word_at[w2], coeff)]
                table[(wi, gi)] = [(word_at[w2], -coeff)]

    others = ((1, 2), (0, 2), (0, 1))
    for w in _WORDS:
        for w2 in _WORDS:
            terms = []
            for l in range(3):
                m1, m2 = others[l]
                bv = _b_sympl(w[m1], w2[m1]) * _b_sympl(w[m2], w2[m2])
                if bv == 0:
                    continue
                f = sigma[l] if bv == 1 else -sigma[l]
                terms.append((3 * l + _gamma_offset(w[l], w2[l]), f))
            if terms:
                table[(word_at[w], word_at[w2])] = terms

    alg = SuperAlgebra(names, parity, table)
    if verify:
        check_lie_super(alg)

    group = GradingGroup(3)
    degrees = []
    for l in range(3):
        base = [0, 0, 0]
        for g, wt in ((0, -2), (1, 0), (2, 2)):
            d = list(base)
            d[l] = wt
            degrees.append(group.element(d, ()))
    for w in _WORDS:
        degrees.append(
            group.element([(-1 if c == "u" else 1) for c in w], ())
        )
    extras = {"alpha": avalue, "words": _WORDS, "word_at": word_at}
    return BuiltAlgebra(alg, {group.literal(): (group, tuple(degrees))}, extras)


def _check_sl2(f):
    if f.shape != (2, 2):
        raise AlgebraError("expected a 2x2 matrix")
    if _det2(f) != ONE:
        raise AlgebraError("matrix must have determinant 1")


def _gamma_images(f):
    """Images of (E, H, F) under conjugation by f in SL2, as coordinate columns.

    Conjugation sends gamma_{u,v} to gamma_{f(u),f(v)}; expanding bilinearly
    with f(u) = p u + r v, f(v) = q u + s v gives the three columns below.
    """
    p, q, r, s = f[0, 0], f[0, 1], f[1, 0], f[1, 1]
    colE = (p * p, 2 * p * r, r * r)
    colH = (p * q, p * s + q * r, r * s)
    colF = (q * q, 2 * q * s, s * s)
    return colE, colH, colF


def d21_triple_automorphism(built, f1, f2, f3):
    """The automorphism conjugating each ideal by f_l and acting by
    f1 (x) f2 (x) f3 on the odd part (each f_l in SL2 as a 2x2 matrix)."""
    A = built.algebra
    fs = (Mat(f1), Mat(f2), Mat(f3))
    for f in fs:
        _check_sl2(f)
    cols = []
    for l in range(3):
        ims = _gamma_images(fs[l])
        for g in range(3):
            col = [ZERO] * 17
            for t, c in enumerate(ims[g]):
                col[3 * l + t] = c
            cols.append(tuple(col))
    letters = ("u", "v")
    for w in _WORDS:
        col = [ZERO] * 17
        for a in range(2):
            for b in range(2):
                for c in range(2):
                    coeff = (
                        fs[0][a, letters.index(w[0])]
                        * fs[1][b, letters.index(w[1])]
                        * fs[2][c, letters.index(w[2])]
                    )
                    if not coeff.is_zero():
                        w2 = letters[a] + letters[b] + letters[c]
                        k = built.extras["word_at"][w2]
                        col[k] = col[k] + coeff
        cols.append(tuple(col))
    return LinMap(A, A, Mat.from_cols(cols, nrows=17))


def d21_cycle_automorphism(built):
    """Order-3 automorphism cycling the three ideals, for the parameter a
    equal to a primitive cube root of unity: (x1,x2,x3) -> (x3,x1,x2) on the
    even part and u1 (x) u2 (x) u3 -> omega . u3 (x) u1 (x) u2 on the odd part."""
    A = built.algebra
    from .scalars import OMEGA

    cols = []
    for l in range(3):
        dest = (l + 1) % 3
        for g in range(3):
            col = [ZERO] * 17
            col[3 * dest + g] = ONE
            cols.append(tuple(col))
    for w in _WORDS:
        w2 = w[2] + w[0] + w[1]
        col = [ZERO] * 17
        col[built.extras["word_at"][w2]] = OMEGA
        cols.append(tuple(col))
    return LinMap(A, A, Mat.from_cols(cols, nrows=17))


def d21_swap_automorphism(built, f=None, g=None, h=None):
    """The automorphism exchanging the last two ideals:

        (x1, x2, x3) -> (f x1 f^-1, h x3 h^-1, g x2 g^-1),
        u1 (x) u2 (x) u3 -> f(u1) (x) h(u3) (x) g(u2),

    with f, g, h in SL2 (identity by default).  An automorphism exactly when
    the parameter is -1/2."""
    A = built.algebra
    ident = Mat.identity(2)
    fs = (
        Mat(f) if f is not None else ident,
        Mat(g) if g is not None else ident,
        Mat(h) if h is not None else ident,
    )
    for m in fs:
        _check_sl2(m)
    cols = []
    ims_f = _gamma_images(fs[0])
    ims_g = _gamma_images(fs[1])
    ims_h = _gamma_images(fs[2])
    # ideal 1 -> ideal 1 via f
    for gsym in range(3):
        col = [ZERO] * 17
        for t, c in enumerate(ims_f[gsym]):
            col[t] = c
        cols.append(tuple(col))
    # ideal 2 -> ideal 3 via g (the image sits in the third block)
    for gsym in range(3):
        col = [ZERO] * 17
        for t, c in enumerate(ims_g[gsym]):
            col[6 + t] = c
        cols.append(tuple(col))
    # ideal 3 -> ideal 2 via h
    for gsym in range(3):
        col = [ZERO] * 17
        for t, c in enumerate(ims_h[gsym]):
            col[3 + t] = c
        cols.append(tuple(col))
    letters = ("u", "v")
    for w in _WORDS:
        col = [ZERO] * 17
        for a in range(2):
            for b in range(2):
                for c in range(2):
                    coeff = (
                        fs[0][a, letters.index(w[0])]
                        * fs[2][b, letters.index(w[2])]
                        * fs[1][c, letters.index(w[1])]
                    )
                    if not coeff.is_zero():
                        w2 = letters[a] + letters[b] + letters[c]
                        k = built.extras["word_at"][w2]
                        col[k] = col[k] + coeff
        cols.append(tuple(col))
    return LinMap(A, A, Mat.from_cols(cols, nrows=17))


# ---------------------------------------------------------------------------
# G(3)
# ---------------------------------------------------------------------------


def _sl2_table():
    # basis (E, H, F) = (gamma_uu, gamma_uv, gamma_vv) acting on column
    # vectors (u, v); brackets follow from the matrix commutators
    return {
        (0, 2): [(1, scalar(4))],
        (2, 0): [(1, scalar(-4))],
        (1, 0): [(0, scalar(-2))],
        (0, 1): [(0, scalar(2))],
        (1, 2): [(2, scalar(2))],
        (2, 1): [(2, scalar(-2))],
    }


def _weight_split(alg, cartans, candidates):
    """Joint eigenbasis of the adjoint of the given elements.

    Returns (vectors, tags): coordinate vectors in the given basis and their
    integer eigenvalue tuples, in deterministic order.
    """
    ops = [alg.ad_matrix(c) for c in cartans]
    blocks = joint_eigenspaces(ops, [list(candidates)] * len(ops), alg.dim)
    vectors = []
    tags = []
    for tag, vecs in blocks:
        itag = tuple(_int_of(t) for t in tag)
        for v in vecs:
            vectors.append(v)
            tags.append(itag)
    return vectors, tags


def build_G3(verify=True):
    """G(3) = (sl2 + der(C)) + V (x) C0 over the split Cayley algebra C.

    The even part pairs sl2 with the 14-dimensional derivation algebra of C;
    the odd part is the tensor of the natural 2-dimensional sl2 module with
    the trace-zero part of C.  The odd bracket is found as the unique (up to
    scale) equivariant symmetric pairing satisfying the odd Jacobi identity;
    all axioms are re-verified exactly.  The designated grading is by the
    Cartan weights (a Z^3 grading).
    """
    C = build_cayley()
    wb = cayley_weight_basis(C)
    cz = _cayley_zero_part(C, wb)
    der_alg, der_mats = derivation_superalgebra(C.algebra)
    if der_alg.dim != 14:
        raise AlgebraError(
            "expected 14 Cayley derivations, found %d" % der_alg.dim
        )
    flatD = Mat.from_cols([_flatten(m) for m in der_mats], nrows=64)
    t1c = solve(flatD, _flatten(wb["t1"]))
    t2c = solve(flatD, _flatten(wb["t2"]))
    if t1c is None or t2c is None:
        raise AlgebraError("torus elements are not in the derivation span")

    g2_vecs, g2_tags = _weight_split(der_alg, [t1c, t2c], range(-2, 3))
    seen = {}
    g2_names = []
    for tag in g2_tags:
        seen[tag] = seen.get(tag, 0) + 1
        base = "g(%d,%d)" % tag
        g2_names.append(base if seen[tag] == 1 else "%s#%d" % (base, seen[tag]))
    P2 = Mat.from_cols(g2_vecs, nrows=14)
    P2inv = inverse(P2)
    g2w = change_basis(der_alg, P2, names=g2_names)
    g2w_mats = []
    for col in range(14):
        m = Mat.zeros(8, 8)
        for k in range(14):
            c = P2[k, col]
            if not c.is_zero():
                m = m + der_mats[k].scale(c)
        g2w_mats.append(m)

    names0 = ["E", "H", "F"] + g2_names
    table0 = dict(_sl2_table())
    for (i, j), terms in g2w.table.items():
        table0[(3 + i, 3 + j)] = [(3 + k, c) for k, c in terms]
    g0 = SuperAlgebra(names0, (0,) * 17, table0)

    m_names = ["u.%s" % nm for nm in cz["names"]] + ["v.%s" % nm for nm in cz["names"]]
    mtab = {}
    # sl2 on the first slot: E: v -> 2u, H: u -> -u, v -> v, F: u -> -2v
    for c in range(7):
        mtab[(0, 7 + c)] = [(c, scalar(2))]
        mtab[(1, c)] = [(c, scalar(-1))]
        mtab[(1, 7 + c)] = [(7 + c, ONE)]
        mtab[(2, c)] = [(7 + c, scalar(-2))]
    restrict = cz["restrict"]
    g2_res = [restrict(m) for m in g2w_mats]
    for r in range(14):
        D7 = g2_res[r]
        for c in range(7):
            col = D7.col(c)
            for slot in range(2):
                terms = [
                    (slot * 7 + k, v) for k, v in enumerate(col) if not v.is_zero()
                ]
                if terms:
                    mtab[(3 + r, slot * 7 + c)] = terms
    action = ModuleAction(g0, m_names, mtab)

    t1g0 = (ZERO, ZERO, ZERO) + tuple(P2inv.apply(t1c))
    t2g0 = (ZERO, ZERO, ZERO) + tuple(P2inv.apply(t2c))
    czw = cz["weights"]
    hints = [
        (
            g0.basis_vec("H"),
            [-1] * 7 + [1] * 7,
            [-2, 0, 2] + [0] * 14,
        ),
        (
            t1g0,
            [czw[c][0] for c in range(7)] * 2,
            [0, 0, 0] + [t[0] for t in g2_tags],
        ),
        (
            t2g0,
            [czw[c][1] for c in range(7)] * 2,
            [0, 0, 0] + [t[1] for t in g2_tags],
        ),
    ]
    gens = _small_generating_set(g0)
    pairings = invariant_pairings(g0, action, hints=hints, generators=gens)
    alg, coeffs = complete_superalgebra(
        g0, action, pairings, odd_names=m_names, verify=verify
    )

    group = GradingGroup(3)
    degrees = [group.element((-2, 0, 0), ()), group.zero(), group.element((2, 0, 0), ())]
    degrees += [group.element((0,) + t, ()) for t in g2_tags]
    for slot in range(2):
        hw = -1 if slot == 0 else 1
        for c in range(7):
            degrees.append(group.element((hw,) + czw[c], ()))

    extras = {
        "cayley": C,
        "weight_basis": wb,
        "zero_part": cz,
        "g0": g0,
        "action": action,
        "hints": hints,
        "pairing_count": len(pairings),
        "coefficients": coeffs,
        "g2_matrices": g2w_mats,
        "g2_tags": g2_tags,
        "sl2_indices": (0, 1, 2),
        "g2_indices": tuple(range(3, 17)),
    }
    return BuiltAlgebra(alg, {group.literal(): (group, tuple(degrees))}, extras)


# ---------------------------------------------------------------------------
# F(4), three models
# ---------------------------------------------------------------------------


def _build_f4_cayley(verify=True):
    C = build_cayley()
    wb = cayley_weight_basis(C)
    cz = _cayley_zero_part(C, wb)
    A = C.algebra
    cbv = cz["vectors"]
    # weights of the trace-zero basis for the orthogonal Cartan c1, c2, c3
    wt3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0), (-1, 0, 0), (0, -1, 0), (0, 0, -1))

    def v7(k):
        return tuple(cbv[k][1:])

    pairs = [(r, s) for r in range(7) for s in range(r + 1, 7)]
    so7_names = ["B(%s,%s)" % (cz["names"][r], cz["names"][s]) for (r, s) in pairs]
    so7_wt = [tuple(a + b for a, b in zip(wt3[r], wt3[s])) for (r, s) in pairs]

    # M_{w,w'}(e_j) = q(w', e_j) w - q(w, e_j) w' with q = -N, N(w, e_j) = 2 w_j
    def pair_mat(r, s):
        w, wp = v7(r), v7(s)
        cols = []
        for j in range(7):
            col = [
                (-2 * wp[j]) * w[t] + (2 * w[j]) * wp[t] for t in range(7)
            ]
            cols.append(col)
        return Mat.from_cols(cols, nrows=7)

    so7_mats = [pair_mat(r, s) for (r, s) in pairs]
    # coordinates in the pair basis: via the elementary skew basis
    epair = {(a, b): k for k, (a, b) in enumerate(
        [(a, b) for a in range(7) for b in range(a + 1, 7)]
    )}
    Q21 = []
    for (r, s) in pairs:
        w, wp = v7(r), v7(s)
        col = [ZERO] * 21
        for (a, b), k in epair.items():
            col[k] = w[a] * wp[b] - w[b] * wp[a]
        Q21.append(col)
    Q21 = Mat.from_cols(Q21, nrows=21)
    Q21inv = inverse(Q21)

    def so7_coords(X):
        raw = [ZERO] * 21
        for (a, b), k in epair.items():
            raw[k] = X[b, a] * HALF
        return Q21inv.apply(raw)

    # spin action: rho(M_{w,w'}) = (l_w l_w' - l_w' l_w)/2 on the Cayley algebra
    lmats = [A.ad_matrix(A.basis_vec(k)) for k in range(8)]

    def lmat(vec8):
        m = Mat.zeros(8, 8)
        for k, c in enumerate(vec8):
            if not c.is_zero():
                m = m + lmats[k].scale(c)
        return m

    P, Pinv = wb["P"], wb["Pinv"]
    rho_wb = []
    for (r, s) in pairs:
        lw, lwp = lmat(cbv[r]), lmat(cbv[s])
        rho = (lw * lwp - lwp * lw).scale(HALF)
        rho_wb.append(Pinv * rho * P)

    names0 = ["E", "H", "F"] + so7_names
    table0 = dict(_sl2_table())
    for i in range(21):
        for j in range(21):
            if i == j:
                continue
            comm = so7_mats[i] * so7_mats[j] - so7_mats[j] * so7_mats[i]
            cs = so7_coords(comm)
            terms = [(3 + k, c) for k, c in enumerate(cs) if not c.is_zero()]
            if terms:
                table0[(3 + i, 3 + j)] = terms
    g0 = SuperAlgebra(names0, (0,) * 24, table0)

    m_names = ["u.%s" % nm for nm in wb["names"]] + ["v.%s" % nm for nm in wb["names"]]
    mtab = {}
    for c in range(8):
        mtab[(0, 8 + c)] = [(c, scalar(2))]
        mtab[(1, c)] = [(c, scalar(-1))]
        mtab[(1, 8 + c)] = [(8 + c, ONE)]
        mtab[(2, c)] = [(8 + c, scalar(-2))]
    for t in range(21):
        R = rho_wb[t]
        for c in range(8):
            col = R.col(c)
            for slot in range(2):
                terms = [
                    (slot * 8 + k, v) for k, v in enumerate(col) if not v.is_zero()
                ]
                if terms:
                    mtab[(3 + t, slot * 8 + c)] = terms
    action = ModuleAction(g0, m_names, mtab)

    # Cartan c_k = -1/4 M_{x_k, y_k}; spin weights read off the diagonal
    cartan_pairs = [pairs.index((0, 4)), pairs.index((1, 5)), pairs.index((2, 6))]
    quarter = scalar(Fraction(-1, 4))
    hints = [
        (
            g0.basis_vec("H"),
            [-1] * 8 + [1] * 8,
            [-2, 0, 2] + [0] * 21,
        )
    ]
    spin_diag = []
    for k in range(3):
        cvec = [ZERO] * 24
        cvec[3 + cartan_pairs[k]] = quarter
        ck = tuple(cvec)
        rho_c = rho_wb[cartan_pairs[k]].scale(quarter)
        diag = []
        for a in range(8):
            for b in range(8):
                if a != b and not rho_c[a, b].is_zero():
                    raise AlgebraError("Cartan spin action is not diagonal")
            diag.append(rho_c[a, a])
        spin_diag.append(diag)
        hints.append(
            (
                ck,
                diag + diag,
                [scalar(0)] * 3 + [scalar(w[k]) for w in so7_wt],
            )
        )
    gens = _small_generating_set(g0)
    pairings = invariant_pairings(g0, action, hints=hints, generators=gens)
    alg, coeffs = complete_superalgebra(
        g0, action, pairings, odd_names=m_names, verify=verify
    )

    group = GradingGroup(4)
    degrees = [
        group.element((-2, 0, 0, 0), ()),
        group.zero(),
        group.element((2, 0, 0, 0), ()),
    ]
    for w in so7_wt:
        degrees.append(group.element((0, 2 * w[0], 2 * w[1], 2 * w[2]), ()))
    for slot in range(2):
        hw = -1 if slot == 0 else 1
        for c in range(8):
            dd = tuple(_int_of(2 * spin_diag[k][c]) for k in range(3))
            degrees.append(group.element((hw,) + dd, ()))

    extras = {
        "cayley": C,
        "weight_basis": wb,
        "zero_part": cz,
        "g0": g0,
        "action": action,
        "hints": hints,
        "pairing_count": len(pairings),
        "coefficients": coeffs,
        "so7_pairs": pairs,
        "so7_mats": so7_mats,
        "so7_coords": so7_coords,
        "rho": rho_wb,
        "spin_diag": spin_diag,
        "sl2_indices": (0, 1, 2),
        "so7_indices": tuple(range(3, 24)),
    }
    return BuiltAlgebra(alg, {group.literal(): (group, tuple(degrees))}, extras)


def _lift_left(D, parity):
    """D (x) 1 on K10: acts on the first tensor slot, kills the unit."""
    cols = [(ZERO,) * 10]
    for a in range(3):
        for b in range(3):
            col = [ZERO] * 10
            for s in range(3):
                c = D[s, a]
                if not c.is_zero():
                    col[1 + 3 * s + b] = c
            cols.append(tuple(col))
    return Mat.from_cols(cols, nrows=10)


def _lift_right(D, parity, k3_parity):
    """1 (x) D on K10 with the sign (-1)^(|D||a|) jumping over the first slot."""
    cols = [(ZERO,) * 10]
    for a in range(3):
        sign = MINUS_ONE if (parity * k3_parity[a]) % 2 else ONE
        for b in range(3):
            col = [ZERO] * 10
            for t in range(3):
                c = D[t, b]
                if not c.is_zero():
                    col[1 + 3 * a + t] = sign * c
            cols.append(tuple(col))
    return Mat.from_cols(cols, nrows=10)


def _build_f4_tkk(verify=True):
    K3b, K10b = build_kac()
    K3 = K3b.algebra
    K10 = K10b.algebra

    # weight-adapted derivations of K3: split by the grading derivation delta
    delta = _diag([ZERO, ONE, -ONE])
    evens3 = derivations(K3, 0)
    odds3 = derivations(K3, 1)
    if len(evens3) != 3 or len(odds3) != 2:
        raise AlgebraError("unexpected Kaplansky derivation dimensions")
    flat3 = Mat.from_cols([_flatten(m) for m in evens3 + odds3], nrows=9)

    def coords3(m):
        c = solve(flat3, _flatten(m))
        if c is None:
            raise AlgebraError("matrix is outside the derivation space")
        return c

    def adapt(mats, parities, cands):
        # simultaneous ad-delta eigenvectors within the span of mats
        n = len(mats)
        sub = Mat.from_cols(
            [coords3(delta * m - m * delta) for m in mats], nrows=5
        )
        # rewrite in the local coordinates of the given family
        local = []
        for j in range(n):
            col = sub.col(j)
            # only the coefficients over this family are relevant
            offset = 0 if parities == 0 else 3
            local.append([col[offset + k] for k in range(n)])
        admat = Mat.from_cols(local, nrows=n)
        blocks = joint_eigenspaces([admat], [list(cands)], n)
        out = []
        for tag, vecs in blocks:
            wt = _int_of(tag[0])
            for v in vecs:
                m = Mat.zeros(3, 3)
                for k, c in enumerate(v):
                    if not c.is_zero():
                        m = m + mats[k].scale(c)
                out.append((wt, m))
        return out

    evens_w = adapt(evens3, 0, (-2, 0, 2))
    odds_w = adapt(odds3, 1, (-1, 1))
    k3p = K3.parity

    der10 = []
    der_z = []
    for wt, m in evens_w:
        der10.append((_lift_left(m, 0), 0))
        der_z.append((wt, 0))
    for wt, m in evens_w:
        der10.append((_lift_right(m, 0, k3p), 0))
        der_z.append((0, wt))
    for wt, m in odds_w:
        der10.append((_lift_left(m, 1), 1))
        der_z.append((wt, 0))
    for wt, m in odds_w:
        der10.append((_lift_right(m, 1, k3p), 1))
        der_z.append((0, wt))

    tkkb = build_tkk(K10, der_basis=der10, verify=verify)
    alg = tkkb.algebra

    group = GradingGroup(2, (2, 2))
    qdeg = ((1, 0), (0, 1), (1, 1))
    zdegs = K10b.extras["zdegrees"]
    degrees = []
    for a in range(3):
        for x in range(10):
            degrees.append(group.element(zdegs[x], qdeg[a]))
    for z in der_z:
        degrees.append(group.element(z, (0, 0)))
    degrees = tuple(degrees)

    # factor-swap automorphism lifted to the whole algebra
    tau = K10b.extras["tau"].matrix
    n = 10
    off = tkkb.extras["der_offset"]
    flat10 = tkkb.extras["der_flat"]
    cols = []
    for a in range(3):
        for x in range(10):
            col = [ZERO] * 40
            tv = tau.col(x)
            for k, c in enumerate(tv):
                col[a * n + k] = c
            cols.append(tuple(col))
    for (D, p) in der10:
        conj = tau * D * tau
        c = solve(flat10, _flatten(conj))
        if c is None:
            raise AlgebraError("swap does not normalize the derivations")
        col = [ZERO] * 40
        for k, v in enumerate(c):
            col[off + k] = v
        cols.append(tuple(col))
    tau_hat = LinMap(alg, alg, Mat.from_cols(cols, nrows=40))

    # conjugation by q1/q2 on the quaternion slot: diagonal signs
    QB = tkkb.extras["quaternions"]
    Qa = QB.algebra
    adq = []
    for gen in (1, 2):
        gvec = Qa.basis_vec(gen)
        signs = []
        for a in range(3):
            # q_gen^2 = 1 for gen in (1, 2), so the inverse is q_gen itself
            conj = Qa.multiply(Qa.multiply(gvec, Qa.basis_vec(a + 1)), gvec)
            signs += [conj[a + 1]] * 10
        signs += [ONE] * 10
        adq.append(LinMap(alg, alg, _diag(signs)))

    ztot = []
    for a in range(3):
        for x in range(10):
            ztot.append(zdegs[x][0] + zdegs[x][1])
    for z in der_z:
        ztot.append(z[0] + z[1])

    tkkb.gradings[group.literal()] = (group, degrees)
    tkkb.extras.update(
        {
            "kac": K10b,
            "kaplansky": K3b,
            "tau_hat": tau_hat,
            "ad_q": adq,
            "zweight_total": tuple(ztot),
            "der_zdegrees": tuple(der_z),
        }
    )
    return tkkb


# the seven anticommuting elements of the quaternionic model, as index
# triples over (1, q1, q2, q3); their squares are frozen below and asserted
_W_TRIPLES = (
    (1, 0, 0),
    (3, 0, 0),
    (2, 0, 1),
    (2, 0, 3),
    (2, 1, 2),
    (2, 3, 2),
    (2, 2, 2),
)
_W_SQUARES = (1, -1, 1, -1, 1, -1, 1)
_W_DEGREES = {
    1: (0, 1, 0, 0),
    2: (0, 1, 1, 0),
    3: (0, 0, 1, 1),
    4: (2, 0, 1, 1),
    5: (2, 1, 1, 0),
    6: (2, 1, 0, 0),
    7: (2, 0, 0, 0),
}


def _mono_mul(m1, m2, squares):
    """Product of square-free monomials in anticommuting generators."""
    sign, out = m1[0] * m2[0], list(m1[1])
    for g in m2[1]:
        # move g left past the tail of out
        pos = len(out)
        while pos > 0 and out[pos - 1] > g:
            sign = -sign
            pos -= 1
        if pos > 0 and out[pos - 1] == g:
            sign *= squares[g - 1]
            out.pop(pos - 1)
        else:
            out.insert(pos, g)
    return (sign, tuple(out))


def _build_f4_quaternion(verify=True):
    QB = build_quaternions()
    Qa = QB.algebra
    qvecs = [Qa.basis_vec(k) for k in range(4)]

    def lmult(k):
        return Qa.ad_matrix(qvecs[k])

    def rmult(k):
        cols = [Qa.multiply(qvecs[j], qvecs[k]) for j in range(4)]
        return Mat.from_cols(cols, nrows=4)

    bar_signs = (ONE, MINUS_ONE, MINUS_ONE, MINUS_ONE)

    Tw = []
    for (a, b, c) in _W_TRIPLES:
        first = lmult(a) * rmult(b).scale(bar_signs[b])
        Tw.append(_kron(first, lmult(c)))
    ident16 = Mat.identity(16)
    for k in range(7):
        sq = Tw[k] * Tw[k]
        if sq != ident16.scale(scalar(_W_SQUARES[k])):
            raise AlgebraError("square of generator %d is off" % (k + 1))
        for l in range(k + 1, 7):
            if Tw[k] * Tw[l] + Tw[l] * Tw[k] != Mat.zeros(16, 16):
                raise AlgebraError(
                    "generators %d and %d do not anticommute" % (k + 1, l + 1)
                )

    spairs = [(k, l) for k in range(1, 8) for l in range(k + 1, 8)]
    s_at = {p: i for i, p in enumerate(spairs)}
    s_names = ["s(%d,%d)" % p for p in spairs]
    s_mats = [Tw[k - 1] * Tw[l - 1] * HALF for (k, l) in spairs]

    # structure constants of the orthogonal part via monomial arithmetic
    table0 = {}
    qcoords = {}
    for a in range(1, 4):
        for b in range(1, 4):
            comm = tuple(
                x - y
                for x, y in zip(
                    Qa.multiply(qvecs[a], qvecs[b]), Qa.multiply(qvecs[b], qvecs[a])
                )
            )
            terms = [(c - 1, comm[c]) for c in range(1, 4) if not comm[c].is_zero()]
            if terms:
                table0[(a - 1, b - 1)] = terms
    for i, p1 in enumerate(spairs):
        for j, p2 in enumerate(spairs):
            if i == j:
                continue
            prod1 = _mono_mul((1, p1), (1, p2), _W_SQUARES)
            prod2 = _mono_mul((1, p2), (1, p1), _W_SQUARES)
            acc = {}
            for sgn, mono in (prod1, (-prod2[0], prod2[1])):
                if mono in acc:
                    acc[mono] += sgn
                else:
                    acc[mono] = sgn
            terms = []
            for mono, cf in acc.items():
                if cf == 0:
                    continue
                if len(mono) != 2:
                    raise AlgebraError("bracket left the pair span")
                terms.append((3 + s_at[mono], scalar(Fraction(cf, 2))))
            if terms:
                table0[(3 + i, 3 + j)] = terms
    names0 = ["q1", "q2", "q3"] + s_names
    g0 = SuperAlgebra(names0, (0,) * 24, table0)

    m_names = [
        "m(%s,%s)" % (Qa.names[x], Qa.names[y]) for x in range(4) for y in range(4)
    ]
    mtab = {}
    for a in range(3):
        act = _kron(Mat.identity(4), rmult(a + 1)).scale(MINUS_ONE)
        for c in range(16):
            col = act.col(c)
            terms = [(k, v) for k, v in enumerate(col) if not v.is_zero()]
            if terms:
                mtab[(a, c)] = terms
    for i in range(21):
        for c in range(16):
            col = s_mats[i].col(c)
            terms = [(k, v) for k, v in enumerate(col) if not v.is_zero()]
            if terms:
                mtab[(3 + i, c)] = terms
    action = ModuleAction(g0, m_names, mtab)

    # Cartan: q1 and the three disjoint pair products, doubled to squares 1
    cartans = [g0.basis_vec(0)]
    for p in ((1, 2), (3, 4), (5, 6)):
        v = [ZERO] * 24
        v[3 + s_at[p]] = scalar(2)
        cartans.append(tuple(v))

    g0_vecs, g0_tags = _weight_split(g0, cartans, range(-2, 3))
    g0_names_w = ["gw%02d" % k for k in range(24)]
    P24 = Mat.from_cols(g0_vecs, nrows=24)
    g0w = change_basis(g0, P24, names=g0_names_w)
    P24inv = inverse(P24)

    mops = [action.matrix(c) for c in cartans]
    mblocks = joint_eigenspaces(mops, [[-1, 1]] * 4, 16)
    m_vecs = []
    m_tags = []
    for tag, vecs in mblocks:
        itag = tuple(_int_of(t) for t in tag)
        for v in vecs:
            m_vecs.append(v)
            m_tags.append(itag)
    P16 = Mat.from_cols(m_vecs, nrows=16)
    P16inv = inverse(P16)
    m_names_w = ["mw%02d" % k for k in range(16)]

    mtab_w = {}
    for r in range(24):
        mat = P16inv * action.matrix(P24.col(r)) * P16
        for c in range(16):
            col = mat.col(c)
            terms = [(k, v) for k, v in enumerate(col) if not v.is_zero()]
            if terms:
                mtab_w[(r, c)] = terms
    action_w = ModuleAction(g0w, m_names_w, mtab_w)

    hints = []
    for k in range(4):
        helt = P24inv.apply(cartans[k])
        hints.append(
            (
                tuple(helt),
                [t[k] for t in m_tags],
                [t[k] for t in g0_tags],
            )
        )
    gens = _small_generating_set(g0w)
    pairings = invariant_pairings(g0w, action_w, hints=hints, generators=gens)
    algw, coeffs = complete_superalgebra(
        g0w, action_w, pairings, odd_names=m_names_w, verify=verify
    )

    P40 = _block_diag(P24, P16)
    alg = change_basis(algw, inverse(P40), names=names0 + m_names)

    group = GradingGroup(0, (4, 2, 2, 2))
    qdeg2 = ((0, 0), (1, 0), (0, 1), (1, 1))
    dmap = (1, 1, 3, 3)
    y1map = (0, 1, 0, 1)
    degs = [
        group.element((), (0, 0, 0, 1)),
        group.element((), (2, 0, 0, 0)),
        group.element((), (2, 0, 0, 1)),
    ]
    for (k, l) in spairs:
        d = tuple(x + y for x, y in zip(_W_DEGREES[k], _W_DEGREES[l]))
        degs.append(group.element((), d))
    for x in range(4):
        for y in range(4):
            degs.append(
                group.element((), (dmap[y], qdeg2[x][0], qdeg2[x][1], y1map[y]))
            )

    extras = {
        "quaternions": QB,
        "g0": g0,
        "action": action,
        "g0_weighted": g0w,
        "action_weighted": action_w,
        "hints": hints,
        "pairing_count": len(pairings),
        "coefficients": coeffs,
        "generators": Tw,
        "generator_squares": _W_SQUARES,
        "pair_index": s_at,
        "pair_names": s_names,
        "m_layout": m_names,
        "sl2_indices": (0, 1, 2),
        "w_degrees": _W_DEGREES,
    }
    return BuiltAlgebra(alg, {group.literal(): (group, tuple(degs))}, extras)


def build_F4(model="cayley", verify=True):
    """F(4), dimension 40 = 24 + 16, in one of three models.

    ``cayley``: sl2 + so7 acting on V (x) C via the spin action of the split
    Cayley algebra; carries the Cartan Z^4 grading.  ``tkk``: the
    Tits-Kantor-Koecher construction over the Kac superalgebra; carries a
    Z^2 x Z_2^2 grading.  ``quaternion``: sl2 + so7 realized inside three
    tensor copies of the split quaternions acting on Q (x) Q; carries the
    Z_4 x Z_2^3 grading.
    """
    if model == "cayley":
        return _build_f4_cayley(verify=verify)
    if model == "tkk":
        return _build_f4_tkk(verify=verify)
    if model == "quaternion":
        return _build_f4_quaternion(verify=verify)
    raise AlgebraError(
        "unknown model %r; choose cayley, tkk or quaternion" % (model,)
    )

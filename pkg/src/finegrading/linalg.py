"""Exact dense linear algebra over the scalar field.

Everything runs over :class:`~finegrading.scalars.Scalar`, so ranks, kernels
and eigenspace splittings are exact — no tolerances anywhere.  Pivoting is
deterministic (first nonzero entry scanning top to bottom), which keeps
reduced forms and kernel bases reproducible across runs.

:func:`joint_eigenspaces` refines the ambient space under a family of
commuting operators whose candidate eigenvalues are supplied by the caller;
it never searches for eigenvalues, and it checks that the candidates account
for the whole space.
"""

from __future__ import annotations

from .errors import LinAlgError
from .scalars import ONE, ZERO, Scalar, scalar

__all__ = [
    "Mat",
    "rref",
    "rank",
    "kernel",
    "solve",
    "inverse",
    "joint_eigenspaces",
    "sparse_row_reduce",
    "sparse_kernel",
    "vec_add",
    "vec_sub",
    "vec_scale",
    "is_zero_vec",
]


class Mat:
    """Immutable dense matrix with Scalar entries."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows, ncols=None):
        data = tuple(tuple(scalar(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise LinAlgError("ragged rows")
            if ncols is not None and ncols != width:
                raise LinAlgError("ncols mismatch")
            ncols = width
        elif ncols is None:
            ncols = 0
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, *args):
        raise AttributeError("Mat is immutable")

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @staticmethod
    def zeros(m, n):
        return Mat([[ZERO] * n for _ in range(m)], ncols=n)

    @staticmethod
    def identity(n):
        return Mat([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def from_cols(cols, nrows=None):
        cols = [tuple(scalar(x) for x in c) for c in cols]
        if cols:
            nrows = len(cols[0])
        elif nrows is None:
            nrows = 0
        return Mat([[c[i] for c in cols] for i in range(nrows)], ncols=len(cols))

    def __getitem__(self, key):
        i, j = key
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def cols(self):
        return [self.col(j) for j in range(self.ncols)]

    def transpose(self):
        return Mat([self.col(j) for j in range(self.ncols)], ncols=self.nrows)

    def __add__(self, other):
        if self.shape != other.shape:
            raise LinAlgError("shape mismatch in +")
        return Mat(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            ncols=self.ncols,
        )

    def __sub__(self, other):
        if self.shape != other.shape:
            raise LinAlgError("shape mismatch in -")
        return Mat(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            ncols=self.ncols,
        )

    def __neg__(self):
        return Mat([[-a for a in r] for r in self.rows], ncols=self.ncols)

    def scale(self, c):
        c = scalar(c)
        return Mat([[c * a for a in r] for r in self.rows], ncols=self.ncols)

    def __mul__(self, other):
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise LinAlgError(
                    "cannot multiply %s by %s" % (self.shape, other.shape)
                )
            ocols = other.ncols
            out = []
            for r in self.rows:
                acc = [ZERO] * ocols
                for a, orow in zip(r, other.rows):
                    if a.is_zero():
                        continue
                    acc = [x + a * y for x, y in zip(acc, orow)]
                out.append(acc)
            return Mat(out, ncols=ocols)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def apply(self, vec):
        """Matrix times column vector (a tuple)."""
        vec = tuple(scalar(x) for x in vec)
        if len(vec) != self.ncols:
            raise LinAlgError("vector length %d, expected %d" % (len(vec), self.ncols))
        out = [ZERO] * self.nrows
        for i, r in enumerate(self.rows):
            acc = ZERO
            for a, x in zip(r, vec):
                if not a.is_zero() and not x.is_zero():
                    acc = acc + a * x
            out[i] = acc
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, Mat) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def is_zero(self):
        return all(a.is_zero() for r in self.rows for a in r)

    def __repr__(self):
        body = "; ".join(", ".join(str(a) for a in r) for r in self.rows)
        return "Mat[%s]" % body


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u):
    c = scalar(c)
    return tuple(c * a for a in u)


def is_zero_vec(u):
    return all(a.is_zero() for a in u)


def rref(mat):
    """Reduced row echelon form; returns (Mat, pivot column tuple)."""
    rows = [list(r) for r in mat.rows]
    nrows, ncols = len(rows), mat.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * x for x in rows[r]]
        for i in range(nrows):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return Mat(rows, ncols=ncols), tuple(pivots)


def rank(mat):
    return len(rref(mat)[1])


def kernel(mat):
    """Basis of the right null space, as a list of coordinate tuples.

    Deterministic: one basis vector per free column, ascending, with a 1 in
    that free coordinate.
    """
    red, pivots = rref(mat)
    ncols = mat.ncols
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for prow, pc in enumerate(pivots):
            v[pc] = -red[prow, fc]
        basis.append(tuple(v))
    return basis


def solve(mat, rhs):
    """One solution x of mat * x = rhs, or None when the system is
    inconsistent (inconsistency is an expected outcome, not an error)."""
    rhs = tuple(scalar(x) for x in rhs)
    if len(rhs) != mat.nrows:
        raise LinAlgError("rhs length %d, expected %d" % (len(rhs), mat.nrows))
    if not mat.rows:
        if any(not b.is_zero() for b in rhs):
            return None
        return (ZERO,) * mat.ncols
    aug = Mat([list(r) + [b] for r, b in zip(mat.rows, rhs)], ncols=mat.ncols + 1)
    red, pivots = rref(aug)
    if pivots and pivots[-1] == mat.ncols:
        return None
    x = [ZERO] * mat.ncols
    for prow, pc in enumerate(pivots):
        x[pc] = red[prow, mat.ncols]
    return tuple(x)


def inverse(mat):
    n = mat.nrows
    if n != mat.ncols:
        raise LinAlgError("inverse of a non-square matrix")
    aug = Mat(
        [list(r) + list(Mat.identity(n).rows[i]) for i, r in enumerate(mat.rows)],
        ncols=2 * n,
    )
    red, pivots = rref(aug)
    if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) < n:
        raise LinAlgError("matrix is singular")
    return Mat([r[n:] for r in red.rows], ncols=n)


def sparse_row_reduce(rows, ncols):
    """Reduced row basis of a (possibly huge) iterable of sparse rows.

    Rows are dicts ``{column: Scalar}``.  Returns ``{pivot_column: row_dict}``
    with pivot entries 1 and full back-reduction, i.e. the rref of the row
    space.  Only independent rows are retained, so memory stays proportional
    to the rank even when millions of constraint rows are streamed through.
    """
    basis = {}
    for row in rows:
        row = {c: v for c, v in row.items() if not v.is_zero()}
        while row:
            p = min(row)
            if p in basis:
                f = row.pop(p)
                for c, v in basis[p].items():
                    if c == p:
                        continue
                    nv = row.get(c, ZERO) - f * v
                    if nv.is_zero():
                        row.pop(c, None)
                    else:
                        row[c] = nv
            else:
                inv = row[p].inverse()
                row = {c: inv * v for c, v in row.items()}
                basis[p] = row
                break
    # back-reduce so every pivot column appears in exactly one row
    for p in sorted(basis, reverse=True):
        prow = basis[p]
        for q, qrow in basis.items():
            if q == p or p not in qrow:
                continue
            f = qrow.pop(p)
            for c, v in prow.items():
                if c == p:
                    continue
                nv = qrow.get(c, ZERO) - f * v
                if nv.is_zero():
                    qrow.pop(c, None)
                else:
                    qrow[c] = nv
    return basis


def sparse_kernel(rows, ncols):
    """Kernel basis (dense tuples) of the linear system given by sparse rows."""
    basis = sparse_row_reduce(rows, ncols)
    pivots = sorted(basis)
    free = [c for c in range(ncols) if c not in basis]
    out = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for p in pivots:
            w = basis[p].get(fc)
            if w is not None:
                v[p] = -w
        out.append(tuple(v))
    return out


def joint_eigenspaces(ops, candidates, ambient=None):
    """Simultaneous eigenspace splitting for commuting operators.

    ``ops`` is a list of square matrices on the same n-dimensional space,
    ``candidates[i]`` the candidate eigenvalues for ``ops[i]`` (these are
    never searched for; the caller supplies them).  Returns a list of
    ``(eigenvalue_tuple, [vectors])`` pairs with nonempty vector lists.
    Raises LinAlgError if the candidates fail to exhaust the space.
    """
    if len(ops) != len(candidates):
        raise LinAlgError("one candidate list per operator required")
    if ambient is None:
        if not ops:
            raise LinAlgError("no operators and no ambient dimension")
        ambient = ops[0].nrows
    for op in ops:
        if op.shape != (ambient, ambient):
            raise LinAlgError("operator shape %s, ambient %d" % (op.shape, ambient))
    for a in range(len(ops)):
        for b in range(a + 1, len(ops)):
            if ops[a] * ops[b] != ops[b] * ops[a]:
                raise LinAlgError("operators %d and %d do not commute" % (a, b))
    ident = Mat.identity(ambient)
    for op, cands in zip(ops, candidates):
        ann = ident
        for lam in cands:
            ann = ann * (op - ident.scale(scalar(lam)))
        if not ann.is_zero():
            raise LinAlgError(
                "operator is not annihilated by its candidate eigenvalues"
            )
    blocks = [((), [ident.col(j) for j in range(ambient)])]
    for op, cands in zip(ops, candidates):
        cands = [scalar(c) for c in cands]
        if len(set(cands)) != len(cands):
            raise LinAlgError("duplicate candidate eigenvalues")
        new_blocks = []
        for tag, vecs in blocks:
            B = Mat.from_cols(vecs, nrows=ambient)
            covered = 0
            for lam in cands:
                # kernel of (op - lam) restricted to span(vecs)
                M = op * B - B.scale(lam)
                ker = kernel(M)
                if not ker:
                    continue
                sub = [B.apply(c) for c in ker]
                covered += len(sub)
                new_blocks.append((tag + (lam,), sub))
            if covered != len(vecs):
                raise LinAlgError(
                    "candidate eigenvalues cover %d of %d dimensions in a block"
                    % (covered, len(vecs))
                )
        blocks = new_blocks
    total = sum(len(v) for _, v in blocks)
    if total != ambient:
        raise LinAlgError("eigenspace dimensions sum to %d, ambient %d" % (total, ambient))
    return blocks

"""Quadratic-space normalization, even Clifford algebras and their
graded-division classes.

The division class of each configuration below was worked out by hand from
the normal form before the classifiers were run (matrix-algebra peeling for
the hyperbolic pairs, quaternion factors for anticommuting unit pairs) and
frozen here; the two independent routes -- idempotent refinement inside the
algebra and the degree-pattern case table -- must both reproduce it.
"""

from fractions import Fraction

import pytest

from finegrading.abgroup import GradingGroup
from finegrading.clifford import (
    GradedQuadraticSpace,
    build_even_clifford,
    check_uuv_factorization,
    clifford_algebra,
    dim7_case_classify,
    division_class,
    normalize_quadratic_basis,
    scalar_sqrt,
    verify_octonion_clifford_model,
    verify_quaternion_clifford_model,
)
from finegrading.errors import CliffordError
from finegrading.linalg import Mat
from finegrading.scalars import ALPHA, IUNIT, OMEGA, ONE, ZERO, scalar

# ---------------------------------------------------------------------------
# the ten reference configurations
#
# (label, free_rank, moduli, degree coordinates, expected class, case)
# Degree coordinates are (free part, torsion part) per basis vector.
# ---------------------------------------------------------------------------

CONFIGS = (
    (
        "three-pairs-Z3",
        3,
        (),
        [
            ((1, 0, 0), ()),
            ((-1, 0, 0), ()),
            ((0, 1, 0), ()),
            ((0, -1, 0), ()),
            ((0, 0, 1), ()),
            ((0, 0, -1), ()),
            ((0, 0, 0), ()),
        ],
        "F",
        "m=3",
    ),
    (
        "two-pairs-Z2xZ22",
        2,
        (2, 2),
        [
            ((1, 0), (0, 0)),
            ((-1, 0), (0, 0)),
            ((0, 1), (0, 0)),
            ((0, -1), (0, 0)),
            ((0, 0), (1, 0)),
            ((0, 0), (0, 1)),
            ((0, 0), (1, 1)),
        ],
        "Q",
        "m=2",
    ),
    (
        "one-pair-ZxZ23",
        1,
        (2, 2, 2),
        [
            ((1,), (0, 0, 0)),
            ((-1,), (0, 0, 0)),
            ((0,), (1, 0, 0)),
            ((0,), (0, 1, 0)),
            ((0,), (0, 0, 1)),
            ((0,), (1, 1, 1)),
            ((0,), (0, 0, 0)),
        ],
        "Q",
        "m=1 r=3",
    ),
    (
        "one-pair-ZxZ24",
        1,
        (2, 2, 2, 2),
        [
            ((1,), (0, 0, 0, 0)),
            ((-1,), (0, 0, 0, 0)),
            ((0,), (1, 0, 0, 0)),
            ((0,), (0, 1, 0, 0)),
            ((0,), (0, 0, 1, 0)),
            ((0,), (0, 0, 0, 1)),
            ((0,), (1, 1, 1, 1)),
        ],
        "QQ",
        "m=1 r=4",
    ),
    (
        "units-Z26",
        0,
        (2,) * 6,
        [
            ((), (1, 0, 0, 0, 0, 0)),
            ((), (0, 1, 0, 0, 0, 0)),
            ((), (0, 0, 1, 0, 0, 0)),
            ((), (0, 0, 0, 1, 0, 0)),
            ((), (0, 0, 0, 0, 1, 0)),
            ((), (0, 0, 0, 0, 0, 1)),
            ((), (1, 1, 1, 1, 1, 1)),
        ],
        "QQQ",
        "m=0 r=6",
    ),
    (
        "units-Z25-full-sum",
        0,
        (2,) * 5,
        [
            ((), (1, 0, 0, 0, 0)),
            ((), (0, 1, 0, 0, 0)),
            ((), (0, 0, 1, 0, 0)),
            ((), (0, 0, 0, 1, 0)),
            ((), (0, 0, 0, 0, 1)),
            ((), (1, 1, 1, 1, 1)),
            ((), (0, 0, 0, 0, 0)),
        ],
        "QQ",
        "m=0 r=5 (i)",
    ),
    (
        "units-Z25-split-sum",
        0,
        (2,) * 5,
        [
            ((), (1, 0, 0, 0, 0)),
            ((), (0, 1, 0, 0, 0)),
            ((), (0, 0, 1, 0, 0)),
            ((), (0, 0, 0, 1, 0)),
            ((), (0, 0, 0, 0, 1)),
            ((), (1, 1, 0, 0, 0)),
            ((), (0, 0, 1, 1, 1)),
        ],
        "QQ",
        "m=0 r=5 (ii)",
    ),
    (
        "units-Z24-two-sums",
        0,
        (2,) * 4,
        [
            ((), (1, 0, 0, 0)),
            ((), (0, 1, 0, 0)),
            ((), (0, 0, 1, 0)),
            ((), (0, 0, 0, 1)),
            ((), (1, 1, 0, 0)),
            ((), (0, 0, 1, 1)),
            ((), (0, 0, 0, 0)),
        ],
        "QQ",
        "m=0 r=4 (i)",
    ),
    (
        "units-Z24-star",
        0,
        (2,) * 4,
        [
            ((), (1, 0, 0, 0)),
            ((), (0, 1, 0, 0)),
            ((), (0, 0, 1, 0)),
            ((), (0, 0, 0, 1)),
            ((), (1, 1, 0, 0)),
            ((), (1, 0, 1, 0)),
            ((), (1, 0, 0, 1)),
        ],
        "Q",
        "m=0 r=4 (ii)",
    ),
    (
        "units-Z23-fano",
        0,
        (2, 2, 2),
        [
            ((), (1, 0, 0)),
            ((), (0, 1, 0)),
            ((), (0, 0, 1)),
            ((), (1, 1, 0)),
            ((), (1, 0, 1)),
            ((), (0, 1, 1)),
            ((), (1, 1, 1)),
        ],
        "F",
        "m=0 r=3",
    ),
)


def space_of(cfg):
    _, free_rank, moduli, coords, _, _ = cfg
    G = GradingGroup(free_rank, moduli)
    return normalize_quadratic_basis(
        G, [G.element(f, t) for f, t in coords]
    )


# ---------------------------------------------------------------------------
# scalar square roots
# ---------------------------------------------------------------------------


def test_scalar_sqrt_values():
    assert scalar_sqrt(scalar(Fraction(9, 4))) == scalar(Fraction(3, 2))
    assert scalar_sqrt(scalar(-4)) == scalar(2) * IUNIT
    assert scalar_sqrt(scalar(-1)) == IUNIT
    assert scalar_sqrt(ZERO) == ZERO
    assert scalar_sqrt(scalar(16)) == scalar(4)
    r = scalar_sqrt(scalar(Fraction(-1, 4)))
    assert r * r == scalar(Fraction(-1, 4))


def test_scalar_sqrt_rejects():
    for bad in (scalar(2), scalar(-3), ALPHA, OMEGA, ALPHA + scalar(1)):
        with pytest.raises(CliffordError):
            scalar_sqrt(bad)


# ---------------------------------------------------------------------------
# the full Clifford algebra
# ---------------------------------------------------------------------------


def test_clifford_rank_one():
    alg, words = clifford_algebra(("x",), [[2]])
    assert alg.dim == 2 and words == ((), (0,))
    # x^2 = 1
    assert alg.product_basis(1, 1) == ((0, ONE),)
    assert alg.parity == (0, 1)


def test_clifford_hyperbolic_pair():
    alg, words = clifford_algebra(("u", "v"), [[0, 1], [1, 0]])
    assert alg.dim == 4
    u, v = alg.basis_vec(1), alg.basis_vec(2)
    assert alg.multiply(u, u) == alg.zero()
    uv = alg.multiply(u, v)
    vu = alg.multiply(v, u)
    # u v + v u = 1
    assert tuple(a + b for a, b in zip(uv, vu)) == alg.basis_vec(0)
    br = tuple(a - b for a, b in zip(uv, vu))
    assert alg.multiply(br, br) == alg.basis_vec(0)  # [u,v]^2 = 1


def test_clifford_orthogonal_relations():
    alg, words = clifford_algebra(("a", "b", "c"), [[2, 0, 0], [0, 2, 0], [0, 0, 2]])
    assert alg.dim == 8
    for i in range(3):
        for j in range(3):
            x, y = alg.basis_vec(1 + i), alg.basis_vec(1 + j)
            anti = tuple(
                p + q for p, q in zip(alg.multiply(x, y), alg.multiply(y, x))
            )
            want = alg.basis_vec(0) if i == j else alg.zero()
            assert anti == tuple(c + c for c in want)
    # the volume element squares to -1 here
    vol = alg.basis_vec(alg.dim - 1)
    assert alg.multiply(vol, vol) == tuple(-c for c in alg.basis_vec(0))


def test_clifford_rejects():
    with pytest.raises(CliffordError):
        clifford_algebra(tuple("abcdefgh"), [[0] * 8] * 8)
    with pytest.raises(CliffordError):
        clifford_algebra(("x", "y"), [[2, 1], [0, 2]])  # not symmetric
    with pytest.raises(CliffordError):
        clifford_algebra(("x",), [[ALPHA]])  # not rational


# ---------------------------------------------------------------------------
# graded quadratic spaces
# ---------------------------------------------------------------------------


def z2n(k):
    return GradingGroup(0, (2,) * k)


def test_space_validation():
    G = z2n(2)
    e = lambda *t: G.element((), t)
    with pytest.raises(CliffordError):  # even anisotropic part
        GradedQuadraticSpace(G, (), (e(1, 0), e(1, 0)))
    with pytest.raises(CliffordError):  # duplicates
        GradedQuadraticSpace(G, (), (e(1, 0), e(1, 0), e(0, 0)))
    with pytest.raises(CliffordError):  # nonzero sum
        GradedQuadraticSpace(G, (), (e(1, 0), e(0, 1), e(0, 0)))
    Z = GradingGroup(1, ())
    with pytest.raises(CliffordError):  # not 2-torsion
        GradedQuadraticSpace(Z, (), (Z.element((1,), ()),))


def test_space_layout():
    G = GradingGroup(1, (2, 2))
    g = G.element((1,), (0, 0))
    h1, h2, h3 = (
        G.element((0,), (1, 0)),
        G.element((0,), (0, 1)),
        G.element((0,), (1, 1)),
    )
    sp = GradedQuadraticSpace(G, (g,), (h1, h2, h3))
    assert sp.m == 1 and sp.l == 1 and sp.dim == 5
    assert sp.degrees == (g, -g, h1, h2, h3)
    gram = sp.gram()
    assert gram[(0, 1)] == ONE and gram[(1, 0)] == ONE
    assert gram[(2, 2)] == scalar(2) and gram[(4, 4)] == scalar(2)
    assert gram[(0, 0)].is_zero() and gram[(0, 2)].is_zero()
    assert sp.names == ("u1", "v1", "w1", "w2", "w3")


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------


def test_normalize_pairs_by_duality():
    Z = GradingGroup(1, ())
    el = lambda k: Z.element((k,), ())
    sp = normalize_quadratic_basis(Z, [el(2), el(1), el(-1), el(-2), el(0)])
    assert sp.m == 2 and sp.l == 0
    assert [g.free[0] for g in sp.pair_degrees] == [2, 1]
    assert sp.unit_degrees[0].is_zero()
    assert sp.shift.is_zero()


def test_normalize_unpaired_raises():
    Z = GradingGroup(1, ())
    el = lambda k: Z.element((k,), ())
    with pytest.raises(CliffordError):
        normalize_quadratic_basis(Z, [el(1), el(1), el(0)])


def test_normalize_merge_and_shift():
    G = z2n(2)
    e = lambda *t: G.element((), t)
    sp = normalize_quadratic_basis(
        G, [e(1, 0), e(1, 0), e(0, 1), e(1, 1), e(0, 0)]
    )
    # the two equal degrees merge into a pair; the shift (1,0) restores
    # a zero sum for the remaining three anisotropic degrees
    assert sp.m == 1 and sp.l == 1
    assert sp.shift == e(1, 0)
    assert sp.pair_degrees == (e(0, 0),)
    assert sp.unit_degrees == (e(1, 1), e(0, 1), e(1, 0))
    built = build_even_clifford(sp, verify=False)
    assert built.dim == 16
    assert division_class(built) == "Q"


def test_normalize_rescales_lengths():
    G = z2n(1)
    e = lambda t: G.element((), (t,))
    gram = [[scalar(8), 0, 0], [0, scalar(-2), 0], [0, 0, 2]]
    sp = normalize_quadratic_basis(G, [e(1), e(1), e(0)], gram)
    assert sp.m == 1 and sp.l == 0
    assert any("rescaled" in line for line in sp.trace)
    built = build_even_clifford(sp)
    assert division_class(built) == "F"


def test_normalize_isotropic_diagonal():
    G = z2n(1)
    e = lambda t: G.element((), (t,))
    gram = [[0, 1, 0], [1, 0, 0], [0, 0, 2]]
    sp = normalize_quadratic_basis(G, [e(1), e(1), e(0)], gram)
    assert sp.m == 1 and sp.l == 0


def test_normalize_rejects():
    Z = GradingGroup(1, ())
    el = lambda k: Z.element((k,), ())
    G = z2n(1)
    e = lambda t: G.element((), (t,))
    with pytest.raises(CliffordError):  # even dimension
        normalize_quadratic_basis(G, [e(0), e(1)])
    with pytest.raises(CliffordError):  # gram pairs incompatible degrees
        normalize_quadratic_basis(
            Z, [el(1), el(0), el(0)], [[0, 1, 0], [1, 2, 0], [0, 0, 2]]
        )
    with pytest.raises(CliffordError):  # degenerate
        normalize_quadratic_basis(
            G, [e(0), e(1), e(1)], [[2, 0, 0], [0, 0, 0], [0, 0, 2]]
        )


def test_normalize_fixes_normal_input():
    sp = space_of(CONFIGS[4])  # Z_2^6 units, already normal
    assert sp.m == 0 and sp.l == 3
    assert sp.shift.is_zero()
    assert sp.basis == Mat.identity(7)


# ---------------------------------------------------------------------------
# the even Clifford algebra
# ---------------------------------------------------------------------------


def test_even_clifford_quaternion_pattern():
    # three anisotropic units with degrees a, b, a+b: the even algebra is
    # spanned by 1, w1w2, w1w3, w2w3 with (w1w2)^2 = -1 -- quaternions
    G = z2n(2)
    e = lambda *t: G.element((), t)
    sp = normalize_quadratic_basis(G, [e(1, 0), e(0, 1), e(1, 1)])
    built = build_even_clifford(sp)
    alg = built.algebra
    assert alg.dim == 4
    assert built.extras["zsquare"] == -ONE  # l = 1
    p = alg.basis_vec(1)
    assert alg.multiply(p, p) == tuple(-c for c in alg.basis_vec(0))
    group, degs = built.grading(G.literal())
    assert degs[0].is_zero()
    assert sorted(d.torsion for d in degs) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert division_class(built) == "Q"


def test_even_clifford_z_square_signs():
    # z^2 = (-1)^l, independently of the number of hyperbolic pairs
    for cfg, want in ((CONFIGS[0], ONE), (CONFIGS[4], -ONE), (CONFIGS[9], -ONE)):
        sp = space_of(cfg)
        built = build_even_clifford(sp, verify=False)
        assert built.extras["zsquare"] == want


def test_even_clifford_verified_builds():
    # run the full structural verification on one hyperbolic and one
    # anisotropic configuration (bar involution, central z, so(U,q) span)
    for cfg in (CONFIGS[2], CONFIGS[9]):
        built = build_even_clifford(space_of(cfg))
        assert built.dim == 64


def test_even_clifford_grading_degrees():
    built = build_even_clifford(space_of(CONFIGS[9]), verify=False)
    group, degs = built.grading(built.extras["space"].group.literal())
    words = built.extras["words"]
    even = built.extras["even_indices"]
    space = built.extras["space"]
    for t, k in enumerate(even):
        d = group.zero()
        for i in words[k]:
            d = d + space.degrees[i]
        assert degs[t] == d


# ---------------------------------------------------------------------------
# division classes, both routes
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("cfg", CONFIGS, ids=[c[0] for c in CONFIGS])
def test_division_class_both_routes(cfg):
    name, _, _, _, expected, case = cfg
    sp = space_of(cfg)
    by_table = dim7_case_classify(sp)
    assert by_table == expected
    assert by_table.info["case"] == case
    built = build_even_clifford(sp, verify=False)
    by_algebra = division_class(built)
    assert by_algebra == expected
    assert by_algebra == by_table
    assert by_algebra.info["division_dim"] == by_algebra.info["support_size"]


def test_division_class_details():
    built = build_even_clifford(space_of(CONFIGS[0]), verify=False)
    dc = division_class(built)
    assert dc == "F" and dc.info["support_size"] == 1
    e = dc.info["idempotent"]
    assert built.algebra.multiply(e, e) == e
    # the star configuration needs genuine refinement cuts
    built9 = build_even_clifford(space_of(CONFIGS[8]), verify=False)
    dc9 = division_class(built9)
    assert dc9 == "Q" and dc9.info["cuts"] >= 2


def test_division_class_label_handling():
    built = build_even_clifford(space_of(CONFIGS[9]), verify=False)
    label = next(iter(built.gradings))
    built.gradings["other"] = built.gradings[label]
    with pytest.raises(CliffordError):
        division_class(built)
    assert division_class(built, label) == "F"


def test_dim7_table_needs_dim7():
    G = z2n(2)
    e = lambda *t: G.element((), t)
    sp = normalize_quadratic_basis(G, [e(1, 0), e(0, 1), e(1, 1)])
    with pytest.raises(CliffordError):
        dim7_case_classify(sp)


def test_dim7_records_permutation():
    sp = space_of(CONFIGS[6])
    dc = dim7_case_classify(sp)
    perm = dc.info["permutation"]
    assert sorted(perm) == list(range(7))


# ---------------------------------------------------------------------------
# factoring off hyperbolic pairs
# ---------------------------------------------------------------------------


def test_uuv_factorization_chain():
    sp = space_of(CONFIGS[0])
    expected_cent = [16, 4, 1]
    while sp.m:
        rep = check_uuv_factorization(sp)
        assert rep["ok"]
        assert rep["s_dim"] == 4
        assert rep["centralizer_dim"] == expected_cent[3 - sp.m]
        assert rep["dims_multiply"]
        sp = GradedQuadraticSpace(sp.group, sp.pair_degrees[1:], sp.unit_degrees)
    assert build_even_clifford(sp).dim == 1


def test_uuv_factorization_with_units():
    rep = check_uuv_factorization(space_of(CONFIGS[2]))
    assert rep["ok"] and rep["centralizer_dim"] == 16


def test_uuv_needs_a_pair():
    with pytest.raises(CliffordError):
        check_uuv_factorization(space_of(CONFIGS[9]))


# ---------------------------------------------------------------------------
# the two concrete models
# ---------------------------------------------------------------------------


def test_octonion_clifford_model():
    rep = verify_octonion_clifford_model()
    assert rep["ok"]
    assert rep["span_dim"] == 64
    assert rep["l_squares"] and rep["homomorphism"] and rep["norm_adjoint"]


def test_quaternion_clifford_model():
    rep = verify_quaternion_clifford_model()
    assert rep["ok"]
    assert rep["w_squares"] and rep["w_anticommute"]
    assert rep["w_degrees_rank"] == 6
    assert rep["h_sample"] == (scalar(-2), ZERO, ZERO, ZERO)
    assert rep["conjugation_antiautomorphism"]
    assert rep["h_skew_hermitian"] and rep["h_phi_adjoint"]


def test_quaternion_model_realizes_triple_class():
    # the degree pattern of the seven anticommuting generators is exactly
    # the full-rank configuration whose even Clifford algebra is the
    # triple quaternion division algebra
    from finegrading.clifford import _W_SLOTS

    qdeg = {0: (0, 0), 1: (1, 0), 2: (0, 1), 3: (1, 1)}
    G = z2n(6)
    degs = [
        G.element((), qdeg[a] + qdeg[b] + qdeg[c]) for a, b, c in _W_SLOTS
    ]
    sp = normalize_quadratic_basis(G, degs)
    assert sp.m == 0
    assert dim7_case_classify(sp) == "QQQ"

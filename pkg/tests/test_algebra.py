"""Matrix algebra layer: axiom checking, leg embeddings, multiplication
maps, and the algebra text format."""

import random

import pytest

from xctangle.algebra import (
    RingMatrix,
    builtin_uqsl2,
    check_axioms,
    embed_R,
    embed_kappa,
    flip_matrix,
    mat_mul,
    mat_tensor,
    mu_groups,
    parse_algebra,
    print_algebra,
)
from xctangle.errors import DimensionError, ParseError
from xctangle.ring import Coefficient


def test_builtin_passes_all_axioms():
    report = check_axioms(builtin_uqsl2())
    assert report["ok"]
    for name, res in report.items():
        if name != "ok":
            assert res["ok"], name


def test_axiom_failure_reports_entry():
    a = builtin_uqsl2()
    broken = type(a)(d=a.d, R=a.R, Rinv=a.R, kappa=a.kappa,
                     kappainv=a.kappainv, variant=a.variant)
    report = check_axioms(broken)
    assert not report["ok"]
    assert not report["invertibility-R"]["ok"]
    assert "entry" in report["invertibility-R"]


def test_matrix_dimension_errors():
    with pytest.raises(DimensionError):
        mat_mul(RingMatrix.identity(2), RingMatrix.identity(3))
    with pytest.raises(DimensionError):
        RingMatrix([[Coefficient.one()], [Coefficient.one(),
                                          Coefficient.one()]])


def test_flip_matrix_swaps_factors():
    f = flip_matrix(2)
    assert mat_mul(f, f) == RingMatrix.identity(4)
    a = builtin_uqsl2()
    # flip . (x (x) y) . flip = (y (x) x) as conjugation on kappa (x) kappa^-1
    lhs = mat_mul(mat_mul(f, mat_tensor(a.kappa, a.kappainv)), f)
    assert lhs == mat_tensor(a.kappainv, a.kappa)


def test_embed_R_identity_on_other_legs():
    a = builtin_uqsl2()
    full = embed_R(a, 1, 2, 3)
    direct = mat_tensor(a.R, RingMatrix.identity(a.d))
    assert full == direct
    assert mat_mul(embed_R(a, 1, 3, 3), embed_R(a, 1, 3, 3, inverse=True)) \
        == RingMatrix.identity(a.d ** 3)


def test_embed_kappa_multiplicative():
    a = builtin_uqsl2()
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randrange(1, 5)
        i = rng.randrange(1, n + 1)
        k1 = embed_kappa(a, i, n)
        k2 = embed_kappa(a, i, n, inverse=True)
        assert mat_mul(k1, k2) == RingMatrix.identity(a.d ** n)


def test_mu_groups_concatenates_products():
    a = builtin_uqsl2()
    # multiplying two legs of kappa (x) kappa gives kappa^2 on one leg
    m = mu_groups(mat_tensor(a.kappa, a.kappa), a.d, [2], a.variant)
    assert m == mat_mul(a.kappa, a.kappa)


def test_algebra_text_round_trip():
    a = builtin_uqsl2()
    b = parse_algebra(print_algebra(a))
    assert b.d == a.d
    assert b.R == a.R and b.Rinv == a.Rinv
    assert b.kappa == a.kappa and b.kappainv == a.kappainv


def test_parse_algebra_errors():
    with pytest.raises(ParseError):
        parse_algebra("dim: 2\nring: laurent\nR:\n1, 0\n")

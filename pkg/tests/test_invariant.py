"""Universal evaluation: functoriality, monoidality, permutation
realization, scalar extraction, and the size guardrail."""

import random

import pytest

from xctangle.algebra import builtin_uqsl2
from xctangle.errors import GuardrailError, NonScalarError
from xctangle.gauss import XCGaussDiagram, braiding, compose, identity, tensor
from xctangle.invariant import (
    identity_value,
    iota_realize,
    long_knot_scalar,
    ve_compose,
    ve_tensor,
    zeval,
)
from xctangle.randomgen import random_diagram
from xctangle.ring import Coefficient

ALG = builtin_uqsl2()


def test_identity_evaluates_to_identity():
    v = zeval(identity(2), ALG)
    assert v == identity_value(2, ALG)
    assert long_knot_scalar(zeval(identity(1), ALG)).is_one()


def test_kink_scalar_is_monomial():
    # over-then-under kink with the compensating rotation marker
    kink = XCGaussDiagram(1, (1,), [(1, 1)],
                          [(("O", 1), ("D", -1), ("U", 1))])
    lam = long_knot_scalar(zeval(kink, ALG))
    assert len(lam.terms) == 1  # a pure power of q: the framing factor


def test_braiding_value_is_permutation():
    v = zeval(braiding(1, 1), ALG)
    assert v.sigma == (2, 1)
    # realized matrix is the flip
    m = iota_realize(v)
    got = [[not m[(i, j)].is_zero() for j in range(4)] for i in range(4)]
    assert got == [
        [True, False, False, False],
        [False, False, True, False],
        [False, True, False, False],
        [False, False, False, True],
    ]


def test_functoriality_randomized():
    rng = random.Random(41)
    for _ in range(300):
        n = rng.randrange(1, 3)
        d1 = random_diagram(rng, n=n, max_chords=2, max_diamonds=2)
        d2 = random_diagram(rng, n=n, max_chords=2, max_diamonds=2)
        assert zeval(compose(d2, d1), ALG) == \
            ve_compose(zeval(d2, ALG), zeval(d1, ALG))


def test_monoidality_randomized():
    rng = random.Random(43)
    for _ in range(300):
        d1 = random_diagram(rng, n=1, max_chords=2, max_diamonds=2)
        d2 = random_diagram(rng, n=rng.randrange(1, 3),
                            max_chords=1, max_diamonds=2)
        assert zeval(tensor(d1, d2), ALG) == \
            ve_tensor(zeval(d1, ALG), zeval(d2, ALG))


def test_guardrail():
    with pytest.raises(GuardrailError):
        zeval(identity(3), ALG, guardrail=7)


def test_long_knot_scalar_rejects_non_scalar():
    with pytest.raises(NonScalarError) as exc:
        long_knot_scalar(zeval(XCGaussDiagram(1, (1,), [],
                                              [(("D", 1),)]), ALG))
    assert exc.value.entry is not None


def test_trefoil_scalar_golden():
    tre = XCGaussDiagram(
        1, (1,), [(1, 1), (2, 1), (3, 1)],
        [(("O", 1), ("U", 2), ("O", 3), ("U", 1), ("O", 2), ("U", 3))])
    from xctangle.virtualt import lift
    lam = long_knot_scalar(zeval(lift(tre), ALG))
    assert lam == Coefficient.laurent({4: 1, 0: 1, -2: -1})

"""Signed Gauss codes: planar lifts, the forgetful direction, classical
moves on codes, the bracket oracle, and the code text format."""

import random

import pytest

from xctangle.algebra import builtin_uqsl2
from xctangle.errors import NoSiteError, ValidationError
from xctangle.gauss import DIAMOND, XCGaussDiagram, identity
from xctangle.invariant import iota_realize, long_knot_scalar, zeval
from xctangle.randomgen import random_code
from xctangle.ring import Coefficient
from xctangle.virtualt import (
    bracket_oracle,
    forget,
    lift,
    parse_code,
    print_code,
    random_move_on_code,
    rotation_total,
    underfirst_writhe,
    validate_code,
    writhe,
)

ALG = builtin_uqsl2()

TREFOIL = XCGaussDiagram(
    1, (1,), [(1, 1), (2, 1), (3, 1)],
    [(("O", 1), ("U", 2), ("O", 3), ("U", 1), ("O", 2), ("U", 3))])


def test_validate_code_rejects_diamonds():
    with pytest.raises(ValidationError):
        validate_code(XCGaussDiagram(1, (1,), [], [((DIAMOND, 1),)]))


def test_forget_drops_diamonds():
    d = XCGaussDiagram(1, (1,), [(1, 1)],
                       [(("O", 1), ("D", -1), ("U", 1))])
    assert forget(d).events == ((("O", 1), ("U", 1)),)


def test_counting_helpers():
    assert writhe(TREFOIL) == 3
    assert rotation_total(lift(TREFOIL)) == 2 * underfirst_writhe(TREFOIL) - 3
    assert writhe(identity(2)) == 0


def test_lift_of_empty_code_is_identity():
    assert lift(identity(3)) == identity(3)


def test_lift_is_section_randomized():
    rng = random.Random(71)
    for _ in range(300):
        g = random_code(rng, n=rng.randrange(1, 4), max_chords=6)
        L = lift(g)
        assert forget(L) == g
        if g.n == 1:
            assert rotation_total(L) + writhe(g) == 2 * underfirst_writhe(g)


def test_positive_kink_lift_balance():
    kink = XCGaussDiagram(1, (1,), [(1, 1)], [(("O", 1), ("U", 1))])
    assert rotation_total(lift(kink)) == -1


def test_moves_on_codes_change_writhe_correctly():
    rng = random.Random(73)
    g = TREFOIL
    r1 = random_move_on_code(g, "R1f", rng)
    assert writhe(r1) == writhe(g)  # canceling kink pair
    r2 = random_move_on_code(g, "R2", rng)
    assert writhe(r2) == writhe(g)
    ro = random_move_on_code(g, "reorder", rng)
    assert forget(lift(ro)) == ro
    assert sorted(s for _, s in ro.chords) == sorted(s for _, s in g.chords)


def test_r3_requires_triangle():
    with pytest.raises(NoSiteError):
        random_move_on_code(identity(1), "R3", random.Random(0))
    tri = XCGaussDiagram(
        1, (1,), [(1, 1), (2, 1), (3, 1)],
        [(("O", 2), ("O", 1), ("O", 3), ("U", 1), ("U", 3), ("U", 2))])
    moved = random_move_on_code(tri, "R3", random.Random(0))
    assert writhe(moved) == 3 and len(moved.chords) == 3
    assert moved != tri


def test_move_invariance_of_lifted_value():
    rng = random.Random(79)
    checked = 0
    while checked < 40:
        g = random_code(rng, n=1, max_chords=3)
        kind = rng.choice(["R1f", "R2", "R3", "reorder"])
        try:
            g2 = random_move_on_code(g, kind, rng)
        except NoSiteError:
            continue
        if len(g2.chords) > 5:
            continue
        checked += 1
        assert iota_realize(zeval(lift(g), ALG)) == \
            iota_realize(zeval(lift(g2), ALG))


def test_bracket_oracle_values():
    assert bracket_oracle(identity(1)).is_one()
    kink = XCGaussDiagram(1, (1,), [(1, 1)], [(("O", 1), ("U", 1))])
    assert bracket_oracle(kink).is_one()  # normalization absorbs the kink
    assert bracket_oracle(TREFOIL) == Coefficient.laurent(
        {8: -1, 6: 1, 2: 1})


def test_bracket_oracle_rejects_multistrand():
    with pytest.raises(ValidationError):
        bracket_oracle(identity(2))


def test_bracket_matches_lifted_scalar():
    # documented comparison: bracket = scalar|_{q -> 1/q} * q^(2 writhe)
    for g in (identity(1), TREFOIL):
        scal = long_knot_scalar(zeval(lift(g), ALG))
        mirrored = Coefficient.laurent(
            {-e: c for e, c in scal.terms.items()})
        assert bracket_oracle(g) == \
            mirrored * Coefficient.q_power(2 * writhe(g))


def test_code_text_round_trip():
    rng = random.Random(83)
    for _ in range(300):
        g = random_code(rng, n=rng.randrange(1, 4), max_chords=5)
        assert parse_code(print_code(g)) == g


def test_parse_code_rejects_sign_conflict():
    with pytest.raises(Exception):
        parse_code("strands: 1\nstrand 1: O1+ U1-\n")

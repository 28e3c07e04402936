"""Finite-type layer: subdiagram calculus, pairing, framing formula,
truncation, and the formula text format."""

import random

import pytest

from xctangle.errors import ValidationError
from xctangle.gauss import XCGaussDiagram, identity
from xctangle.polyak import (
    FormalDiagramSum,
    FormulaTerm,
    check_formula_invariance,
    framing_formula,
    framing_terms,
    map_I,
    map_I_inverse,
    pairing,
    parse_formula,
    print_formula,
    subdiagrams,
    truncate_degree,
)
from xctangle.randomgen import random_code, random_diagram
from xctangle.virtualt import lift, rotation_total, underfirst_writhe, writhe

ONE_EACH = XCGaussDiagram(1, (1,), [(1, 1)],
                          [(("O", 1), ("D", 1), ("U", 1))])


def test_subdiagram_counts():
    assert len(list(subdiagrams(identity(1)))) == 1
    assert len(list(subdiagrams(ONE_EACH))) == 4
    tre = lift(XCGaussDiagram(
        1, (1,), [(1, 1), (2, 1), (3, 1)],
        [(("O", 1), ("U", 2), ("O", 3), ("U", 1), ("O", 2), ("U", 3))]))
    assert len(list(subdiagrams(tre))) == 2 ** tre.decoration_count()


def test_map_I_contains_empty_and_self():
    s = map_I(ONE_EACH)
    keys = {d.decoration_count(): c for d, c in s.items()}
    assert keys[0] == 1  # the empty diagram appears once
    assert s.terms[max(s.terms, key=lambda k: len(k))]  # full diagram kept


def test_map_I_of_empty():
    s = map_I(identity(2))
    assert len(s) == 1
    assert s == FormalDiagramSum.of(identity(2))


def test_inverse_round_trip_exhaustive_small():
    rng = random.Random(89)
    for _ in range(200):
        d = random_diagram(rng, n=rng.randrange(1, 3),
                           max_chords=2, max_diamonds=3)
        assert d.decoration_count() <= 5
        assert map_I_inverse(map_I(d)) == FormalDiagramSum.of(d)


def test_linearity_of_inverse():
    a = ONE_EACH
    b = identity(1)
    s = FormalDiagramSum()
    s.add(a, 2)
    s.add(b, -3)
    direct = map_I_inverse(s)
    via = FormalDiagramSum()
    via.add_sum(map_I_inverse(FormalDiagramSum.of(a)), 2)
    via.add_sum(map_I_inverse(FormalDiagramSum.of(b)), -3)
    assert direct == via


def test_truncate_degree():
    s = map_I(ONE_EACH)
    assert truncate_degree(s, 0) == FormalDiagramSum()
    assert truncate_degree(s, 10) == s
    t = truncate_degree(s, 1)
    assert all(d.decoration_count() < 1 for d, _ in t.items())
    with pytest.raises(ValidationError):
        truncate_degree(s, -1)


def test_pairing_examples():
    dia = FormulaTerm(1, XCGaussDiagram(1, (1,), [], [(("D", 0),)]))
    empty = FormulaTerm(5, identity(1))
    assert pairing([empty], ONE_EACH) == 5
    assert pairing([dia], ONE_EACH) == rotation_total(ONE_EACH)
    # signed template slots must match exactly
    minus_dia = FormulaTerm(1, XCGaussDiagram(1, (1,), [], [(("D", -1),)]))
    assert pairing([minus_dia], ONE_EACH) == 0


def test_pairing_underfirst_chord_template():
    chord = FormulaTerm(
        1, XCGaussDiagram(1, (1,), [(1, 1)], [(("U", 1), ("O", 1))]),
        frozenset({1}))
    rng = random.Random(97)
    for _ in range(50):
        g = random_code(rng, n=1, max_chords=5)
        assert pairing([chord], g) == underfirst_writhe(g)


def test_pairing_is_linear_in_the_formula():
    terms = framing_terms()
    doubled = [FormulaTerm(2 * t.coefficient, t.template,
                           t.unsigned_chords) for t in terms]
    d = lift(random_code(random.Random(101), n=1, max_chords=4))
    assert pairing(doubled, d) == 2 * pairing(terms, d)


def test_pairing_rejects_multistrand():
    with pytest.raises(ValidationError):
        pairing([], identity(2))


def test_framing_formula_examples():
    assert framing_formula(identity(1)) == 0
    kink = XCGaussDiagram(1, (1,), [(1, 1)], [(("O", 1), ("U", 1))])
    assert framing_formula(lift(kink)) == 1
    rng = random.Random(103)
    for _ in range(100):
        g = random_code(rng, n=1, max_chords=6)
        assert framing_formula(lift(g)) == writhe(g)


def test_invariance_harness_flags_bad_formula():
    plus = FormulaTerm(
        1, XCGaussDiagram(1, (1,), [(1, 1)], [(("O", 1), ("U", 1))]))
    bad = check_formula_invariance([plus], 40, seed=5)
    assert not bad["invariant"] and bad["failures"]
    good = check_formula_invariance(framing_terms(), 40, seed=5)
    assert good["invariant"] and good["samples"] == 40


def test_formula_text_round_trip():
    text = print_formula(framing_terms())
    back = parse_formula(text)
    assert print_formula(back) == text
    assert [t.coefficient for t in back] == [2, -1]
    assert back[0].unsigned_chords == frozenset({1})


def test_formula_terms_must_be_one_strand():
    with pytest.raises(ValidationError):
        FormulaTerm(1, identity(2))

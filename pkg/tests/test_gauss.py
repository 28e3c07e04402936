"""Diagram combinatorics: validation, composition, tensor, braiding,
canonical forms and the text format."""

import random

import pytest

from xctangle.errors import ParseError, ValidationError
from xctangle.gauss import (
    XCGaussDiagram,
    braiding,
    canonical_key,
    compose,
    identity,
    is_pure,
    parse_diagram,
    print_diagram,
    renumber_canonically,
    tensor,
    validate,
)
from xctangle.randomgen import random_diagram


def test_validate_accepts_identity():
    validate(identity(3))
    assert is_pure(identity(3))


def test_validate_rejects_bad_top():
    with pytest.raises(ValidationError):
        validate(XCGaussDiagram(2, (1, 1), [], [(), ()]))


def test_validate_rejects_dangling_chord():
    with pytest.raises(ValidationError):
        validate(XCGaussDiagram(1, (1,), [(1, 1)], [(("O", 1),)]))
    with pytest.raises(ValidationError):
        validate(XCGaussDiagram(1, (1,), [(1, 1)],
                                [(("O", 1), ("O", 1))]))


def test_validate_rejects_unknown_chord_sign():
    with pytest.raises(ValidationError):
        validate(XCGaussDiagram(1, (1,), [(1, 0)],
                                [(("O", 1), ("U", 1))]))


def test_compose_stacks_events():
    kink = XCGaussDiagram(1, (1,), [(1, 1)], [(("O", 1), ("U", 1))])
    twice = compose(kink, kink)
    assert len(twice.chords) == 2
    assert len(twice.events[0]) == 4


def test_compose_strand_count_mismatch():
    with pytest.raises(ValidationError):
        compose(identity(2), identity(3))


def test_tensor_shifts_strands():
    kink = XCGaussDiagram(1, (1,), [(1, 1)], [(("O", 1), ("U", 1))])
    t = tensor(identity(2), kink)
    assert t.n == 3
    assert t.events[2] != ()


def test_unit_and_associativity_randomized():
    rng = random.Random(23)
    for _ in range(1000):
        n = rng.randrange(1, 4)
        a = random_diagram(rng, n=n, max_chords=2, max_diamonds=2)
        b = random_diagram(rng, n=n, max_chords=2, max_diamonds=2)
        c = random_diagram(rng, n=n, max_chords=2, max_diamonds=2)
        assert canonical_key(compose(a, identity(n))) == canonical_key(a)
        assert canonical_key(compose(identity(n), a)) == canonical_key(a)
        lhs = compose(c, compose(b, a))
        rhs = compose(compose(c, b), a)
        assert canonical_key(lhs) == canonical_key(rhs)


def test_braiding_naturality():
    rng = random.Random(29)
    for _ in range(200):
        n, m = rng.randrange(1, 3), rng.randrange(1, 3)
        d1 = random_diagram(rng, n=n, max_chords=1, max_diamonds=2, pure=True)
        d2 = random_diagram(rng, n=m, max_chords=1, max_diamonds=2, pure=True)
        lhs = compose(tensor(d2, d1), braiding(n, m))
        rhs = compose(braiding(n, m), tensor(d1, d2))
        assert canonical_key(lhs) == canonical_key(rhs)


def test_canonical_key_ignores_chord_names():
    d = XCGaussDiagram(1, (1,), [(7, 1), (3, -1)],
                       [(("O", 7), ("U", 3), ("U", 7), ("O", 3))])
    e = XCGaussDiagram(1, (1,), [(1, 1), (2, -1)],
                       [(("O", 1), ("U", 2), ("U", 1), ("O", 2))])
    assert canonical_key(d) == canonical_key(e)
    assert renumber_canonically(d) == renumber_canonically(e)


def test_text_round_trip_random():
    rng = random.Random(31)
    for _ in range(500):
        d = random_diagram(rng, n=rng.randrange(1, 4),
                           max_chords=3, max_diamonds=3)
        assert parse_diagram(print_diagram(d)) == d


def test_parse_reports_position():
    with pytest.raises(ParseError) as exc:
        parse_diagram("strands: 1\nstrand 1: O1 X9\n")
    assert exc.value.line == 2


def test_parse_unsigned_requires_flag():
    text = "strands: 1\nchords: 1:?\nstrand 1: O1 U1\n"
    with pytest.raises(ParseError):
        parse_diagram(text)
    d, unsigned = parse_diagram(text, allow_unsigned=True)
    assert unsigned == {1}

"""Move engine: pattern table, site search, application, stale sites,
orbit search, and the closure validator."""

import random

import pytest

from xctangle import moves as M
from xctangle.algebra import builtin_uqsl2
from xctangle.errors import (
    NoSiteError,
    ParseError,
    StaleSiteError,
    ValidationError,
)
from xctangle.gauss import XCGaussDiagram, canonical_key, identity
from xctangle.invariant import iota_realize, zeval
from xctangle.randomgen import random_diagram

ALG = builtin_uqsl2()

KINK = XCGaussDiagram(1, (1,), [(1, 1)],
                      [(("O", 1), ("D", -1), ("U", 1))])


def test_builtin_table_shape():
    pats = M.builtin_patterns()
    by_kind = {}
    for p in pats:
        by_kind.setdefault(p.kind, []).append(p)
    assert set(by_kind) == set(M.KINDS)
    assert len(by_kind["G0r"]) == 2
    assert len(by_kind["G1f"]) == 2
    assert len(by_kind["G2p"]) == 4
    assert len(by_kind["G3"]) == 1


def test_every_builtin_pattern_is_sound():
    # the full certification runs in the acceptance suite; here we spot
    # check the quick patterns and that the validator produces witnesses
    for p in M.builtin_patterns():
        if p.kind in ("G0r", "G1f"):
            ok, ce = M.validate_pattern(p, ALG)
            assert ok and ce is None


def test_validator_rejects_wrong_pattern():
    # dropping the diamonds from the kink rotation move breaks it
    wrong = M.MovePattern(
        "G1f", 1, (("c", "+"),),
        (((("O"), "c"), ("U", "c")),),
        (((("U"), "c"), ("O", "c")),))
    ok, counterexample = M.validate_pattern(wrong, ALG)
    assert not ok
    assert counterexample is not None


def test_find_sites_deterministic():
    d = random_diagram(random.Random(3), n=2, max_chords=3, max_diamonds=3)
    for kind in M.KINDS:
        assert M.find_sites(d, kind) == M.find_sites(d, kind)


def test_unknown_kind_rejected():
    with pytest.raises(ValidationError):
        M.find_sites(identity(1), "G9")


def test_kink_rotation_move_round_trip():
    sites = [s for s in M.find_sites(KINK, "G1f") if s.side == "L"]
    assert sites
    flipped = M.apply(KINK, sites[0])
    assert flipped.events[0] == (("U", 1), ("D", 1), ("O", 1))
    back_sites = [s for s in M.find_sites(flipped, "G1f") if s.side == "R"]
    assert any(M.apply(flipped, s) == KINK for s in back_sites)


def test_pair_cancellation():
    d = XCGaussDiagram(1, (1,), [(1, 1), (2, -1)],
                       [(("O", 1), ("O", 2), ("U", 1), ("U", 2))])
    dels = [s for s in M.find_sites(d, "G2") if s.side == "L"]
    assert any(M.apply(d, s) == identity(1) for s in dels)


def test_antiparallel_pair_leaves_residual_diamond():
    d = XCGaussDiagram(1, (1,), [(1, 1), (2, -1)],
                       [(("O", 1), ("O", 2), ("U", 2), ("D", -1),
                         ("U", 1))])
    dels = [s for s in M.find_sites(d, "G2p") if s.side == "L"]
    results = {M.apply(d, s).events for s in dels}
    assert ((("D", -1),),) in results


def test_apply_preserves_invariant_value():
    rng = random.Random(67)
    base = identity(1)
    want = iota_realize(zeval(base, ALG))
    d = base
    for _ in range(40):
        kind = rng.choice(M.KINDS)
        sites = M.find_sites(d, kind)
        if not sites:
            continue
        nxt = M.apply(d, sites[rng.randrange(len(sites))])
        if nxt.decoration_count() > 6:
            continue
        d = nxt
        assert iota_realize(zeval(d, ALG)) == want


def test_stale_site_detected():
    sites = [s for s in M.find_sites(KINK, "G1f") if s.side == "L"]
    other = XCGaussDiagram(1, (1,), [(1, -1)],
                           [(("O", 1), ("D", -1), ("U", 1))])
    with pytest.raises(StaleSiteError):
        M.apply(other, sites[0])


def test_random_site_raises_without_sites():
    with pytest.raises(NoSiteError):
        M.random_site(identity(1), "G3", random.Random(0))


def test_orbit_contains_seed_and_flags_truncation():
    res = M.orbit(identity(1), max_depth=1, max_size=2)
    assert canonical_key(identity(1)) in res.keys
    assert res.truncated  # larger diagrams were cut off by max_size
    with pytest.raises(ValidationError):
        M.orbit(identity(1), max_depth=0, max_size=2)


def test_orbit_closes_small_family():
    # a single diamond pair cancels to the identity strand within depth 1
    d = XCGaussDiagram(1, (1,), [], [(("D", 1), ("D", -1))])
    res = M.orbit(d, max_depth=1, max_size=2)
    assert canonical_key(identity(1)) in res.keys


def test_pattern_parse_errors():
    with pytest.raises(ParseError):
        M.parse_patterns("pattern G7\nend\n")
    with pytest.raises(ParseError):
        M.parse_patterns("pattern G2\nfrag 1: Oa\nend\n")
    with pytest.raises(ParseError):
        M.parse_patterns("pattern G2\nfrag 1: Qa\nto 1:\nend\n")

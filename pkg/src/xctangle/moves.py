"""Local rewrite moves on Gauss diagrams.

Moves are shipped as data (``data/patterns.cfg``) in a small template
language over the diagram event syntax:

* a pattern has a ``kind`` (G0r, G0, G1f, G2, G2p, G3), sign-variable
  declarations and one or more strand fragments, each a run of adjacent
  events, with a replacement run per fragment;
* chord variables (letters) stand for concrete chords, sign expressions
  are ``+``, ``-``, ``e`` or ``-e`` (one shared sign choice per match);
* all patterns are bidirectional: sites are found for both the left and
  the right side, and applying a site rewrites to the other side.

``validate_pattern`` is the binding correctness gate: it embeds both sides
of a pattern into an exhaustive family of small closures (fragments
distributed over up to three strands, with small decoration contexts) and
checks that the evaluated invariant agrees exactly on every closure.

Config format::

    pattern <kind>
    var <letter>: +|-|e|-e
    frag <i>: <tokens>
    to <i>: <tokens>
    end

where tokens are ``O<letter>``, ``U<letter>``, ``D+``, ``D-``.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from itertools import permutations, product

from .errors import NoSiteError, ParseError, StaleSiteError, ValidationError
from .gauss import (
    DIAMOND,
    OVER,
    UNDER,
    XCGaussDiagram,
    canonical_key,
    validate,
)

Token = tuple[str, object]  # ("O"|"U", varname) or ("D", ±1)

KINDS = ("G0r", "G0", "G1f", "G2", "G2p", "G3")


@dataclass(frozen=True)
class MovePattern:
    kind: str
    variant: int
    vars: tuple[tuple[str, str], ...]  # (letter, sign expression)
    left: tuple[tuple[Token, ...], ...]
    right: tuple[tuple[Token, ...], ...]

    def sign_of(self, letter: str, eps: int) -> int:
        expr = dict(self.vars)[letter]
        return {"+": 1, "-": -1, "e": eps, "-e": -eps}[expr]

    def uses_eps(self) -> bool:
        return any(expr in ("e", "-e") for _, expr in self.vars)


@dataclass(frozen=True)
class MoveSite:
    """A concrete applicable instance of one side of a pattern.

    ``side`` names the matched side ("L" or "R"); applying the site
    rewrites it to the other side.  ``locs`` gives one (strand, position)
    per fragment: the start of the matched run, or the insertion slot when
    the matched side's fragments are all empty.  ``assign`` maps chord
    variables to concrete chord ids (empty for insertion sites) and
    ``eps`` fixes the shared sign choice.
    """

    pattern: MovePattern
    side: str
    locs: tuple[tuple[int, int], ...]
    assign: tuple[tuple[str, int], ...]
    eps: int


def _parse_token(tok: str, lineno: int) -> Token:
    if tok in ("D+", "D-"):
        return (DIAMOND, 1 if tok == "D+" else -1)
    if len(tok) == 2 and tok[0] in (OVER, UNDER) and tok[1].isalpha():
        return (tok[0], tok[1])
    raise ParseError(f"unknown pattern token {tok!r}", lineno, 1)


def parse_patterns(text: str) -> list[MovePattern]:
    patterns: list[MovePattern] = []
    counts: dict[str, int] = {}
    cur = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("pattern "):
            if cur is not None:
                raise ParseError("nested pattern block", lineno, 1)
            kind = line[len("pattern "):].strip()
            if kind not in KINDS:
                raise ParseError(f"unknown move kind {kind!r}", lineno, 1)
            cur = {"kind": kind, "vars": [], "left": {}, "right": {}}
        elif line == "end":
            if cur is None:
                raise ParseError("'end' outside a pattern block", lineno, 1)
            ids = sorted(cur["left"])
            if ids != sorted(cur["right"]) or ids != list(range(1, len(ids) + 1)):
                raise ParseError("fragment ids must be 1..k on both sides", lineno, 1)
            counts[cur["kind"]] = counts.get(cur["kind"], 0) + 1
            patterns.append(
                MovePattern(
                    cur["kind"],
                    counts[cur["kind"]],
                    tuple(cur["vars"]),
                    tuple(tuple(cur["left"][i]) for i in ids),
                    tuple(tuple(cur["right"][i]) for i in ids),
                )
            )
            cur = None
        elif cur is None:
            raise ParseError(f"unexpected line {line!r}", lineno, 1)
        elif line.startswith("var "):
            body = line[len("var "):]
            letter, _, expr = body.partition(":")
            letter, expr = letter.strip(), expr.strip()
            if len(letter) != 1 or not letter.isalpha() or \
                    expr not in ("+", "-", "e", "-e"):
                raise ParseError(f"bad var line {line!r}", lineno, 1)
            cur["vars"].append((letter, expr))
        elif line.startswith("frag ") or line.startswith("to "):
            side = "left" if line.startswith("frag ") else "right"
            body = line.split(" ", 1)[1]
            idx_s, _, rest = body.partition(":")
            if not idx_s.strip().isdigit():
                raise ParseError(f"bad fragment index in {line!r}", lineno, 1)
            toks = [_parse_token(t, lineno) for t in rest.split()]
            cur[side][int(idx_s)] = toks
        else:
            raise ParseError(f"unexpected line {line!r}", lineno, 1)
    if cur is not None:
        raise ParseError("unterminated pattern block", 0, 1)
    return patterns


_BUILTIN: list[MovePattern] | None = None


def builtin_patterns() -> list[MovePattern]:
    """The shipped pattern table, loaded from ``data/patterns.cfg``."""
    global _BUILTIN
    if _BUILTIN is None:
        text = (
            resources.files("xctangle").joinpath("data/patterns.cfg").read_text()
        )
        _BUILTIN = parse_patterns(text)
    return _BUILTIN


# -- matching ----------------------------------------------------------


def _instantiate(frag, assign, eps):
    out = []
    for kind, val in frag:
        if kind == DIAMOND:
            out.append((kind, val))
        else:
            out.append((kind, assign[val]))
    return out


def _match_run(events, s, start, frag, assign, sign, pattern, eps):
    """Try to match a fragment at events[s][start:]; extends ``assign`` in
    place on success, returns the matched length or None."""
    ev = events[s]
    if start + len(frag) > len(ev):
        return None
    added = []
    for off, (kind, val) in enumerate(frag):
        got = ev[start + off]
        if kind == DIAMOND:
            if got != (DIAMOND, val):
                for a in added:
                    del assign[a]
                return None
            continue
        if got[0] != kind:
            for a in added:
                del assign[a]
            return None
        cid = got[1]
        if val in assign:
            if assign[val] != cid:
                for a in added:
                    del assign[a]
                return None
        else:
            if cid in assign.values() or sign[cid] != pattern.sign_of(val, eps):
                for a in added:
                    del assign[a]
                return None
            assign[val] = cid
            added.append(val)
    return len(frag)


def _runs_conflict(runs, new):
    """Whether a fragment run (strand, start, length) collides with any
    already-placed run: nonempty runs may not share positions and a
    zero-length slot may not fall strictly inside a nonempty run."""
    s, a, la = new
    for t, b, lb in runs:
        if s != t:
            continue
        if la and lb:
            if a < b + lb and b < a + la:
                return True
        elif la == 0 and lb:
            if b < a < b + lb:
                return True
        elif lb == 0 and la:
            if a < b < a + la:
                return True
    return False


def _find_matches(d, pattern, side):
    """All non-overlapping assignments of one side's fragments to runs."""
    frags = pattern.left if side == "L" else pattern.right
    if all(len(f) == 0 for f in frags):
        return []
    sign = d.chord_sign
    eps_choices = (1, -1) if pattern.uses_eps() else (1,)
    out = []
    for eps in eps_choices:
        def rec(i, locs, runs, assign):
            if i == len(frags):
                out.append(MoveSite(pattern, side, tuple(locs),
                                    tuple(sorted(assign.items())), eps))
                return
            frag = frags[i]
            for s in range(d.n):
                for start in range(len(d.events[s]) - len(frag) + 1):
                    if _runs_conflict(runs, (s, start, len(frag))):
                        continue
                    before = dict(assign)
                    if _match_run(d.events, s, start, frag, assign, sign,
                                  pattern, eps) is not None:
                        rec(i + 1, locs + [(s, start)],
                            runs + [(s, start, len(frag))], assign)
                        assign.clear()
                        assign.update(before)
            return
        rec(0, [], [], {})
    return out


def _find_insertions(d, pattern, side):
    """Sites for the direction whose source side is entirely empty: one
    insertion slot per fragment, every slot combination, every sign
    choice."""
    frags = pattern.left if side == "L" else pattern.right
    if not all(len(f) == 0 for f in frags):
        return []
    slots = [(s, p) for s in range(d.n) for p in range(len(d.events[s]) + 1)]
    eps_choices = (1, -1) if pattern.uses_eps() else (1,)
    out = []
    for eps in eps_choices:
        for locs in product(slots, repeat=len(frags)):
            out.append(MoveSite(pattern, side, locs, (), eps))
    return out


def find_sites(d: XCGaussDiagram, kind: str) -> list[MoveSite]:
    """Every applicable site of the given move kind, either direction, in
    deterministic order."""
    validate(d)
    if kind not in KINDS:
        raise ValidationError(f"unknown move kind {kind!r}")
    out: list[MoveSite] = []
    for pattern in builtin_patterns():
        if pattern.kind != kind:
            continue
        for side in ("L", "R"):
            out.extend(_find_matches(d, pattern, side))
            out.extend(_find_insertions(d, pattern, side))
    return out


def apply(d: XCGaussDiagram, site: MoveSite) -> XCGaussDiagram:
    """Rewrite the matched side of ``site`` to the other side of its
    pattern.  Raises StaleSiteError when the site no longer matches ``d``."""
    validate(d)
    pattern = site.pattern
    src = pattern.left if site.side == "L" else pattern.right
    dst = pattern.right if site.side == "L" else pattern.left
    assign = dict(site.assign)
    sign = d.chord_sign
    inserting = all(len(f) == 0 for f in src)
    if inserting:
        for s, p in site.locs:
            if s >= d.n or p > len(d.events[s]):
                raise StaleSiteError("insertion slot out of range")
    else:
        runs = []
        rebind = {}
        for (s, p), frag in zip(site.locs, src):
            if _runs_conflict(runs, (s, p, len(frag))):
                raise StaleSiteError("site fragments overlap")
            runs.append((s, p, len(frag)))
            if _match_run(d.events, s, p, frag, rebind, sign,
                          pattern, site.eps) is None:
                raise StaleSiteError("site no longer matches the diagram")
        if any(rebind.get(k, v) != v for k, v in assign.items()):
            raise StaleSiteError("site variables no longer match the diagram")
        assign.update(rebind)
    # variables absent from the matched side get fresh chord ids
    nxt = 1 + max((c for c, _ in d.chords), default=0)
    for letter, _ in pattern.vars:
        if letter not in assign:
            assign[letter] = nxt
            nxt += 1
    # rewrite: per strand, apply replacements right-to-left
    ev = [list(e) for e in d.events]
    # higher positions first; at equal positions replace the nonempty run
    # before inserting at its left boundary slot
    jobs = sorted(
        zip(site.locs, src, dst),
        key=lambda j: (j[0][0], -j[0][1], 0 if len(j[1]) else 1),
    )
    for (s, p), frag, rep in jobs:
        ev[s][p:p + len(frag)] = _instantiate(rep, assign, site.eps)
    # chord list: drop vanished ids, add appearing ones
    present = {v for e in ev for k, v in e if k != DIAMOND}
    chords = [(c, sg) for c, sg in d.chords if c in present]
    have = {c for c, _ in chords}
    for letter, cid in assign.items():
        if cid in present and cid not in have:
            chords.append((cid, pattern.sign_of(letter, site.eps)))
    out = XCGaussDiagram(d.n, d.top, chords, [tuple(e) for e in ev])
    validate(out)
    return out


def random_site(d: XCGaussDiagram, kind: str, rng) -> MoveSite:
    sites = find_sites(d, kind)
    if not sites:
        raise NoSiteError(f"no {kind} site in the diagram")
    return sites[rng.randrange(len(sites))]


# -- orbit search ------------------------------------------------------


@dataclass(frozen=True)
class OrbitResult:
    keys: frozenset
    truncated: bool


def orbit(d: XCGaussDiagram, max_depth: int, max_size: int) -> OrbitResult:
    """Bounded breadth-first closure of ``d`` under all moves: explores to
    ``max_depth`` rewrites, skipping diagrams with more than ``max_size``
    decorations; flags truncation instead of erroring."""
    if max_depth <= 0 or max_size <= 0:
        raise ValidationError("orbit budgets must be positive")
    validate(d)
    seen = {canonical_key(d): d}
    frontier = [d]
    truncated = False
    for _ in range(max_depth):
        nxt = []
        for cur in frontier:
            for kind in KINDS:
                for site in find_sites(cur, kind):
                    h = apply(cur, site)
                    if h.decoration_count() > max_size:
                        truncated = True
                        continue
                    key = canonical_key(h)
                    if key not in seen:
                        seen[key] = h
                        nxt.append(h)
        frontier = nxt
        if not frontier:
            break
    else:
        if frontier:
            truncated = True
    return OrbitResult(frozenset(seen), truncated)


# -- the validator (binding oracle for pattern transcription) ----------


def _closure_arrangements(k: int):
    """Ways to place k fragment markers onto 1..3 strands: ordered set
    partitions, encoded as tuples of strand content lists."""
    out = []
    for perm in permutations(range(k)):
        for cuts in product(range(2), repeat=max(k - 1, 0)):
            strands = [[]]
            for i, f in enumerate(perm):
                if i and cuts[i - 1]:
                    strands.append([])
                strands[-1].append(f)
            if len(strands) <= 3:
                out.append(tuple(tuple(s) for s in strands))
    return sorted(set(out))


def _closure_diagram(frag_tokens, arrangement, context, assign, eps, pattern,
                     extra_chords):
    """Build a complete diagram placing instantiated fragments per the
    arrangement, with context decorations interleaved.  ``context`` maps
    (strand, slot) to a list of events; slots count fragment boundaries."""
    n = len(arrangement)
    events = []
    for s, frag_ids in enumerate(arrangement):
        ev = []
        ev.extend(context.get((s, 0), ()))
        for j, fid in enumerate(frag_ids):
            ev.extend(_instantiate(frag_tokens[fid], assign, eps))
            ev.extend(context.get((s, j + 1), ()))
        events.append(tuple(ev))
    sign_map = {}
    for letter, cid in assign.items():
        sign_map[cid] = pattern.sign_of(letter, eps)
    for cid, sg in extra_chords:
        sign_map[cid] = sg
    present = {v for e in events for k, v in e if k != DIAMOND}
    chords = [(c, sign_map[c]) for c in sorted(present)]
    return XCGaussDiagram(n, tuple(range(1, n + 1)), chords, events)


def validate_pattern(pattern: MovePattern, algebra) -> tuple[bool, object]:
    """Check that both sides of a pattern evaluate identically in an
    exhaustive family of small closures; returns (ok, counterexample)."""
    from .invariant import iota_realize, zeval

    k = len(pattern.left)
    assign = {letter: i + 1 for i, (letter, _) in enumerate(pattern.vars)}
    eps_choices = (1, -1) if pattern.uses_eps() else (1,)
    ctx_chord = 100
    for eps in eps_choices:
        for arrangement in _closure_arrangements(k):
            nslots = [(s, j) for s, frag_ids in enumerate(arrangement)
                      for j in range(len(frag_ids) + 1)]
            contexts: list[tuple[dict, tuple]] = [({}, ())]
            for slot in nslots:
                for sgn in (1, -1):
                    contexts.append(({slot: [(DIAMOND, sgn)]}, ()))
            for s1 in nslots:
                for s2 in nslots:
                    for sgn in (1, -1):
                        for first in (OVER, UNDER):
                            second = UNDER if first == OVER else OVER
                            ctx = {}
                            ctx.setdefault(s1, []).append((first, ctx_chord))
                            ctx.setdefault(s2, []).append((second, ctx_chord))
                            contexts.append((ctx, ((ctx_chord, sgn),)))
            for context, extra in contexts:
                lhs = _closure_diagram(pattern.left, arrangement, context,
                                       assign, eps, pattern, extra)
                rhs = _closure_diagram(pattern.right, arrangement, context,
                                       assign, eps, pattern, extra)
                try:
                    validate(lhs)
                    validate(rhs)
                except ValidationError:
                    continue
                zl = iota_realize(zeval(lhs, algebra))
                zr = iota_realize(zeval(rhs, algebra))
                if zl != zr:
                    return False, (lhs, rhs)
    return True, None

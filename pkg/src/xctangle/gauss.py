"""XC-Gauss diagrams and their categorical operations.

A diagram has ``n`` ordered strands, read bottom to top.  Strands are indexed
by their bottom-boundary position (1-based); ``top[i-1]`` is the top-boundary
position of the strand starting at bottom position ``i``.  Each strand carries
an ordered list of events: ``("O", chordId)`` / ``("U", chordId)`` for the
over/under endpoint of a signed chord (oriented over -> under), or
``("D", sign)`` for a signed rotation marking (diamond).

Canonical text format (one diagram per stanza)::

    strands: <n>
    top: <t1> ... <tn>
    chords: <id>:<+|-> ...
    strand <i>: O<id> U<id> D+ D- ...

Lines may appear in any order; a ``strand i`` line is required for every
strand (possibly empty); unknown tokens are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ParseError, ValidationError

Event = tuple[str, int]

OVER = "O"
UNDER = "U"
DIAMOND = "D"


def over(cid: int) -> Event:
    return (OVER, cid)


def under(cid: int) -> Event:
    return (UNDER, cid)


def diamond(sign: int) -> Event:
    return (DIAMOND, sign)


@dataclass(frozen=True)
class XCGaussDiagram:
    """Immutable XC-Gauss diagram."""

    n: int
    top: tuple[int, ...]
    chords: tuple[tuple[int, int], ...]
    events: tuple[tuple[Event, ...], ...]

    def __init__(
        self,
        n: int,
        top: Sequence[int],
        chords: Iterable[tuple[int, int]],
        events: Sequence[Sequence[Event]],
    ):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "top", tuple(int(t) for t in top))
        object.__setattr__(
            self, "chords", tuple(sorted((int(c), int(s)) for c, s in chords))
        )
        object.__setattr__(
            self, "events", tuple(tuple((k, int(v)) for k, v in ev) for ev in events)
        )

    # -- helpers ------------------------------------------------------

    @property
    def chord_sign(self) -> dict[int, int]:
        return dict(self.chords)

    def decoration_count(self) -> int:
        """Number of decorations: chords plus diamonds."""
        dia = sum(1 for ev in self.events for e in ev if e[0] == DIAMOND)
        return len(self.chords) + dia

    def with_events(self, events: Sequence[Sequence[Event]], chords=None) -> "XCGaussDiagram":
        return XCGaussDiagram(self.n, self.top, self.chords if chords is None else chords, events)


def identity(n: int) -> XCGaussDiagram:
    return XCGaussDiagram(n, tuple(range(1, n + 1)), (), tuple(() for _ in range(n)))


def validate(d: XCGaussDiagram) -> None:
    """Check all structural invariants; raise ValidationError on the first
    violation."""
    if d.n < 0:
        raise ValidationError("negative strand count")
    if len(d.top) != d.n:
        raise ValidationError(f"top has length {len(d.top)}, expected {d.n}")
    if sorted(d.top) != list(range(1, d.n + 1)):
        raise ValidationError(f"top {d.top} is not a bijection on 1..{d.n}")
    if len(d.events) != d.n:
        raise ValidationError(f"{len(d.events)} strand event lists, expected {d.n}")
    signs = {}
    for cid, s in d.chords:
        if cid in signs:
            raise ValidationError(f"chord {cid} listed twice")
        if s not in (1, -1):
            raise ValidationError(f"chord {cid} has sign {s}, expected +1 or -1")
        signs[cid] = s
    seen_over: set[int] = set()
    seen_under: set[int] = set()
    for i, ev in enumerate(d.events, start=1):
        for kind, val in ev:
            if kind == DIAMOND:
                if val not in (1, -1):
                    raise ValidationError(f"diamond on strand {i} has sign {val}")
            elif kind == OVER:
                if val not in signs:
                    raise ValidationError(f"dangling chord end: unknown chord {val}")
                if val in seen_over:
                    raise ValidationError(f"duplicate over endpoint for chord {val}")
                seen_over.add(val)
            elif kind == UNDER:
                if val not in signs:
                    raise ValidationError(f"dangling chord end: unknown chord {val}")
                if val in seen_under:
                    raise ValidationError(f"duplicate under endpoint for chord {val}")
                seen_under.add(val)
            else:
                raise ValidationError(f"unknown event kind {kind!r}")
    for cid in signs:
        if cid not in seen_over:
            raise ValidationError(f"chord {cid} has no over endpoint")
        if cid not in seen_under:
            raise ValidationError(f"chord {cid} has no under endpoint")


def compose(d2: XCGaussDiagram, d1: XCGaussDiagram) -> XCGaussDiagram:
    """Stack d2 on top of d1 (first d1, then d2)."""
    if d1.n != d2.n:
        raise ValidationError(f"strand-count mismatch: {d1.n} vs {d2.n}")
    shift = 1 + max((c for c, _ in d1.chords), default=0)
    ev2 = [
        tuple((k, v + shift if k in (OVER, UNDER) else v) for k, v in ev)
        for ev in d2.events
    ]
    events = []
    top = []
    for i in range(d1.n):
        j = d1.top[i]  # 1-based position where strand i enters d2
        events.append(tuple(d1.events[i]) + tuple(ev2[j - 1]))
        top.append(d2.top[j - 1])
    chords = list(d1.chords) + [(c + shift, s) for c, s in d2.chords]
    return XCGaussDiagram(d1.n, top, chords, events)


def tensor(d1: XCGaussDiagram, d2: XCGaussDiagram) -> XCGaussDiagram:
    """Place d2 to the right of d1 (strand positions shifted by d1.n)."""
    shift = 1 + max((c for c, _ in d1.chords), default=0)
    ev2 = [
        tuple((k, v + shift if k in (OVER, UNDER) else v) for k, v in ev)
        for ev in d2.events
    ]
    top = list(d1.top) + [t + d1.n for t in d2.top]
    chords = list(d1.chords) + [(c + shift, s) for c, s in d2.chords]
    return XCGaussDiagram(d1.n + d2.n, top, chords, list(d1.events) + ev2)


def braiding(n: int, m: int) -> XCGaussDiagram:
    """The symmetric braiding: no events, position i goes to i+m mod n+m."""
    if n < 0 or m < 0:
        raise ValidationError("braiding arguments must be non-negative")
    total = n + m
    top = [((i - 1 + m) % total) + 1 for i in range(1, total + 1)]
    return XCGaussDiagram(total, top, (), tuple(() for _ in range(total)))


def is_pure(d: XCGaussDiagram) -> bool:
    return all(d.top[i] == i + 1 for i in range(d.n))


def renumber_canonically(d: XCGaussDiagram) -> XCGaussDiagram:
    """Renumber chord ids by first occurrence in strand-major reading order."""
    mapping: dict[int, int] = {}
    for ev in d.events:
        for kind, val in ev:
            if kind in (OVER, UNDER) and val not in mapping:
                mapping[val] = len(mapping) + 1
    sign = d.chord_sign
    events = [
        tuple((k, mapping[v] if k in (OVER, UNDER) else v) for k, v in ev)
        for ev in d.events
    ]
    chords = [(mapping[c], sign[c]) for c in mapping]
    return XCGaussDiagram(d.n, d.top, chords, events)


def canonical_key(d: XCGaussDiagram) -> str:
    """A total serialization invariant under chord renumbering."""
    return print_diagram(renumber_canonically(d))


# -- text format ------------------------------------------------------


def print_diagram(d: XCGaussDiagram) -> str:
    lines = [f"strands: {d.n}"]
    lines.append("top: " + " ".join(str(t) for t in d.top))
    chord_toks = " ".join(f"{c}:{'+' if s > 0 else '-'}" for c, s in d.chords)
    lines.append(("chords: " + chord_toks).rstrip())
    for i, ev in enumerate(d.events, start=1):
        toks = []
        for kind, val in ev:
            if kind == DIAMOND:
                toks.append("D+" if val > 0 else "D-")
            else:
                toks.append(f"{kind}{val}")
        lines.append((f"strand {i}: " + " ".join(toks)).rstrip())
    return "\n".join(lines) + "\n"


def _parse_event_token(tok: str, lineno: int, col: int, allow_unsigned: bool = False):
    if tok in ("D+", "D-"):
        return (DIAMOND, 1 if tok == "D+" else -1)
    if allow_unsigned and tok == "D?":
        return (DIAMOND, 0)
    if tok and tok[0] in (OVER, UNDER):
        body = tok[1:]
        if allow_unsigned and body.endswith("?"):
            body = body[:-1]
        if body.isdigit():
            return (tok[0], int(body))
    raise ParseError(f"unknown event token {tok!r}", lineno, col)


def parse_diagram(text: str, allow_unsigned: bool = False, start_line: int = 1):
    """Parse the canonical text format.

    With ``allow_unsigned`` set, returns ``(diagram, unsigned_chords)``
    (formula templates: ``<id>:?`` in the chords line and ``D?`` events);
    unsigned diamonds are recorded as sign 0 in the event list and the
    diagram is not validated.  Otherwise returns the validated diagram.
    """
    n = None
    top = None
    chords: list[tuple[int, int]] = []
    unsigned_chords: set[int] = set()
    strands: dict[int, list] = {}
    for off, raw in enumerate(text.splitlines()):
        lineno = start_line + off
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError("expected '<keyword>: ...'", lineno, 1)
        head, _, rest = line.partition(":")
        head = head.strip()
        rest = rest.strip()
        if head == "strands":
            if not rest.isdigit():
                raise ParseError(f"bad strand count {rest!r}", lineno, len(head) + 2)
            n = int(rest)
        elif head == "top":
            try:
                top = tuple(int(t) for t in rest.split())
            except ValueError:
                raise ParseError(f"bad top permutation {rest!r}", lineno, len(head) + 2)
        elif head == "chords":
            for tok in rest.split():
                cid, _, sgn = tok.partition(":")
                if not cid.isdigit() or sgn not in ("+", "-", "?"):
                    raise ParseError(f"bad chord token {tok!r}", lineno, 1)
                if sgn == "?":
                    if not allow_unsigned:
                        raise ParseError(f"unsigned chord {tok!r} not allowed here", lineno, 1)
                    unsigned_chords.add(int(cid))
                    chords.append((int(cid), 1))
                else:
                    chords.append((int(cid), 1 if sgn == "+" else -1))
        elif head.startswith("strand "):
            idx_s = head[len("strand "):].strip()
            if not idx_s.isdigit():
                raise ParseError(f"bad strand index {idx_s!r}", lineno, 1)
            idx = int(idx_s)
            if idx in strands:
                raise ParseError(f"duplicate strand {idx} line", lineno, 1)
            evs = []
            col = len(head) + 2
            for tok in rest.split():
                evs.append(_parse_event_token(tok, lineno, col, allow_unsigned))
                col += len(tok) + 1
            strands[idx] = evs
        else:
            raise ParseError(f"unknown keyword {head!r}", lineno, 1)
    if n is None:
        raise ParseError("missing 'strands:' line", start_line, 1)
    if top is None:
        top = tuple(range(1, n + 1))
    missing = [i for i in range(1, n + 1) if i not in strands]
    if missing:
        raise ParseError(f"missing 'strand {missing[0]}:' line", start_line, 1)
    extra = [i for i in strands if i < 1 or i > n]
    if extra:
        raise ParseError(f"strand index {extra[0]} out of range", start_line, 1)
    d = XCGaussDiagram(n, top, chords, [strands[i] for i in range(1, n + 1)])
    if allow_unsigned:
        return d, unsigned_chords
    validate(d)
    return d

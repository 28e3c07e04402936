"""Finite-type layer: subdiagram calculus, diagram formulas and pairing.

* :func:`subdiagrams` enumerates the induced diagram of every subset of a
  diagram's decorations (chords and diamonds).
* :func:`map_I` sends a diagram to the formal sum of all its subdiagrams;
  :func:`map_I_inverse` is the inclusion-exclusion inverse, so the two are
  mutually inverse linear maps on the free module of diagrams.
* :func:`pairing` evaluates a diagram formula — a list of one-strand
  template terms whose decorations may be left unsigned — against a
  one-strand diagram: each way a decoration subset of the diagram matches
  a template exactly (signed slots by equality, unsigned slots by shape)
  contributes the term coefficient times the product of the signs matched
  to unsigned slots.
* :func:`framing_formula` is the degree-one formula 2*(unsigned
  under-first chord) - (unsigned diamond); it returns the writhe on every
  planar lift and is unchanged by all certified moves.
* :func:`check_formula_invariance` falsifies candidate formulas against
  randomized move-related diagram pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .errors import ParseError, ValidationError
from .gauss import (
    DIAMOND,
    OVER,
    UNDER,
    XCGaussDiagram,
    canonical_key,
    parse_diagram,
    print_diagram,
    validate,
)

Decoration = tuple  # ("c", chord_id) or ("d", strand, event_index)


def decorations(d: XCGaussDiagram) -> list[Decoration]:
    """The diagram's decorations in deterministic order: chords by id,
    then diamond occurrences by position."""
    out: list[Decoration] = [("c", cid) for cid, _ in d.chords]
    for s, ev in enumerate(d.events):
        for i, (kind, _) in enumerate(ev):
            if kind == DIAMOND:
                out.append(("d", s, i))
    return out


def subdiagram(d: XCGaussDiagram, subset) -> XCGaussDiagram:
    """The induced diagram keeping exactly the given decorations."""
    keep_chords = {dec[1] for dec in subset if dec[0] == "c"}
    keep_dias = {(dec[1], dec[2]) for dec in subset if dec[0] == "d"}
    events = []
    for s, ev in enumerate(d.events):
        kept = []
        for i, (kind, val) in enumerate(ev):
            if kind == DIAMOND:
                if (s, i) in keep_dias:
                    kept.append((kind, val))
            elif val in keep_chords:
                kept.append((kind, val))
        events.append(tuple(kept))
    chords = [(c, sg) for c, sg in d.chords if c in keep_chords]
    return XCGaussDiagram(d.n, d.top, chords, events)


def subdiagrams(d: XCGaussDiagram):
    """All 2^k induced subdiagrams, in deterministic order (subsets as
    ascending bitmasks over the decoration list)."""
    validate(d)
    decs = decorations(d)
    for mask in range(1 << len(decs)):
        yield subdiagram(d, [dec for i, dec in enumerate(decs)
                             if mask >> i & 1])


@dataclass
class FormalDiagramSum:
    """Finitely supported integer combination of diagrams, keyed by
    canonical form; zero coefficients are never stored."""

    terms: dict[str, int] = field(default_factory=dict)
    reps: dict[str, XCGaussDiagram] = field(default_factory=dict)

    @staticmethod
    def of(d: XCGaussDiagram, coeff: int = 1) -> "FormalDiagramSum":
        s = FormalDiagramSum()
        s.add(d, coeff)
        return s

    def add(self, d: XCGaussDiagram, coeff: int = 1) -> None:
        if coeff == 0:
            return
        key = canonical_key(d)
        new = self.terms.get(key, 0) + coeff
        if new:
            self.terms[key] = new
            self.reps.setdefault(key, d)
        else:
            self.terms.pop(key, None)
            self.reps.pop(key, None)

    def add_sum(self, other: "FormalDiagramSum", coeff: int = 1) -> None:
        for key, c in other.terms.items():
            self.add(other.reps[key], c * coeff)

    def items(self):
        for key in sorted(self.terms):
            yield self.reps[key], self.terms[key]

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalDiagramSum) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)


def map_I(d: XCGaussDiagram) -> FormalDiagramSum:
    """The sum of all subdiagrams of ``d``."""
    out = FormalDiagramSum()
    for sub in subdiagrams(d):
        out.add(sub)
    return out


def _alternating(d: XCGaussDiagram) -> FormalDiagramSum:
    decs = decorations(d)
    k = len(decs)
    out = FormalDiagramSum()
    for mask in range(1 << k):
        size = bin(mask).count("1")
        sub = subdiagram(d, [dec for i, dec in enumerate(decs)
                             if mask >> i & 1])
        out.add(sub, (-1) ** (k - size))
    return out


def map_I_inverse(s: FormalDiagramSum) -> FormalDiagramSum:
    """Inclusion-exclusion inverse of :func:`map_I`, extended linearly."""
    out = FormalDiagramSum()
    for d, coeff in s.items():
        out.add_sum(_alternating(d), coeff)
    return out


def truncate_degree(s: FormalDiagramSum, n: int) -> FormalDiagramSum:
    """Drop every term whose diagram has at least ``n`` decorations."""
    if n < 0:
        raise ValidationError("truncation degree must be non-negative")
    out = FormalDiagramSum()
    for d, coeff in s.items():
        if d.decoration_count() < n:
            out.add(d, coeff)
    return out


# -- diagram formulas --------------------------------------------------


@dataclass(frozen=True)
class FormulaTerm:
    """One term of a diagram formula: an integer coefficient and a
    one-strand template whose chords/diamonds may be unsigned (unsigned
    diamonds carry sign 0 in the event list; unsigned chord ids are
    listed in ``unsigned_chords``)."""

    coefficient: int
    template: XCGaussDiagram
    unsigned_chords: frozenset = frozenset()

    def __post_init__(self):
        if self.template.n != 1:
            raise ValidationError("formula templates must have one strand")


def _term_profile(t: FormulaTerm):
    """The template's shape: renumbered event kinds/ids plus per-position
    sign requirements (None = unsigned slot)."""
    d = t.template
    ren: dict[int, int] = {}
    shape = []
    req = []
    sign = d.chord_sign
    for kind, val in d.events[0]:
        if kind == DIAMOND:
            shape.append((DIAMOND, 0))
            req.append(None if val == 0 else val)
        else:
            if val not in ren:
                ren[val] = len(ren) + 1
            shape.append((kind, ren[val]))
            if val in t.unsigned_chords:
                req.append(None)
            elif kind == OVER:  # chord sign is checked once, on the O end
                req.append(sign[val])
            else:
                req.append(0)  # 0 = already constrained at the other end
    return tuple(shape), tuple(req)


def pairing(formula, d: XCGaussDiagram) -> int:
    """Signed count of embeddings of each template as a subdiagram of a
    one-strand diagram, weighted by the term coefficients and, for
    unsigned template slots, by the matched decorations' signs."""
    validate(d)
    if d.n != 1:
        raise ValidationError("pairing requires a one-strand diagram")
    decs = decorations(d)
    sign = d.chord_sign
    total = 0
    for term in formula:
        shape, req = _term_profile(term)
        size = len(decorations(term.template))
        for subset in combinations(decs, size):
            sub = subdiagram(d, subset)
            ev = sub.events[0]
            if len(ev) != len(shape):
                continue
            ren: dict[int, int] = {}
            ok = True
            weight = 1
            for pos, (kind, val) in enumerate(ev):
                want_kind, want_id = shape[pos]
                if kind != want_kind:
                    ok = False
                    break
                if kind == DIAMOND:
                    if req[pos] is None:
                        weight *= val
                    elif val != req[pos]:
                        ok = False
                        break
                else:
                    if val not in ren:
                        ren[val] = len(ren) + 1
                    if ren[val] != want_id:
                        ok = False
                        break
                    if kind == OVER:
                        if req[pos] is None:
                            weight *= sign[val]
                        elif req[pos] != sign[val]:
                            ok = False
                            break
            if ok:
                total += term.coefficient * weight
    return total


def framing_terms() -> list[FormulaTerm]:
    """The degree-one framing formula: twice an unsigned chord whose
    under-pass comes first, minus an unsigned diamond."""
    chord = XCGaussDiagram(1, (1,), [(1, 1)], [((UNDER, 1), (OVER, 1))])
    dia = XCGaussDiagram(1, (1,), [], [((DIAMOND, 0),)])
    return [
        FormulaTerm(2, chord, frozenset({1})),
        FormulaTerm(-1, dia),
    ]


def framing_formula(d: XCGaussDiagram) -> int:
    """Evaluate the framing formula; equals the writhe on planar lifts."""
    return pairing(framing_terms(), d)


# -- falsification harness ---------------------------------------------


def check_formula_invariance(formula, samples: int, seed: int = 0) -> dict:
    """Evaluate a formula on randomized move-related diagram pairs and
    report every pair where the values differ."""
    from . import moves as M
    from .randomgen import random_diagram

    rng = random.Random(seed)
    failures = []
    checked = 0
    while checked < samples:
        d = random_diagram(rng, n=1, max_chords=3, max_diamonds=3)
        kind = rng.choice(M.KINDS)
        sites = M.find_sites(d, kind)
        if not sites:
            continue
        site = sites[rng.randrange(len(sites))]
        d2 = M.apply(d, site)
        if d2.decoration_count() > 8:
            continue
        checked += 1
        v1, v2 = pairing(formula, d), pairing(formula, d2)
        if v1 != v2:
            failures.append({"kind": kind, "before": print_diagram(d),
                             "after": print_diagram(d2),
                             "values": (v1, v2)})
    return {"samples": checked, "failures": failures,
            "invariant": not failures}


# -- formula text format ----------------------------------------------


def print_formula(formula) -> str:
    chunks = []
    for term in formula:
        d = term.template
        text = print_diagram(d)
        # re-mark unsigned slots in the serialized diagram
        lines = text.splitlines()
        for i, line in enumerate(lines):
            if line.startswith("chords:"):
                toks = line.split()
                for j, tok in enumerate(toks[1:], start=1):
                    cid = int(tok.split(":")[0])
                    if cid in term.unsigned_chords:
                        toks[j] = f"{cid}:?"
                lines[i] = " ".join(toks)
            if line.startswith("strand 1:"):
                toks = line.split()
                evs = d.events[0]
                for j, (kind, val) in enumerate(evs, start=2):
                    if kind == DIAMOND and val == 0:
                        toks[j] = "D?"
                lines[i] = " ".join(toks)
        chunks.append(f"term {term.coefficient}\n" + "\n".join(lines))
    return "\n\n".join(chunks) + "\n"


def parse_formula(text: str) -> list[FormulaTerm]:
    out = []
    block: list[str] = []
    coeff = None
    start = 1

    def flush(lineno):
        nonlocal block, coeff
        if coeff is None:
            if any(l.split("#", 1)[0].strip() for l in block):
                raise ParseError("diagram lines before any 'term'", lineno, 1)
            block = []
            return
        d, unsigned_chords = parse_diagram(
            "\n".join(block), allow_unsigned=True, start_line=start
        )
        out.append(FormulaTerm(coeff, d, frozenset(unsigned_chords)))
        block, coeff = [], None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line.startswith("term "):
            flush(lineno)
            body = line[len("term "):].strip()
            try:
                coeff = int(body)
            except ValueError:
                raise ParseError(f"bad coefficient {body!r}", lineno, 1)
            start = lineno + 1
        else:
            block.append(raw)
    flush(len(text.splitlines()) + 1)
    return out

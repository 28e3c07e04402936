"""Matrix XC-algebras over an exact coefficient ring.

A :class:`MatrixXCAlgebra` holds a dimension ``d``, matrices ``R``/``Rinv``
on V (x) V (basis ``e_i (x) e_j``, first factor major) and ``kappa`` /
``kappainv`` on V.  The axiom checker verifies, as exact matrix identities:

* (XC0)  R^{+-1} = (kappa (x) kappa) . R^{+-1} . (kappa^-1 (x) kappa^-1)
* (XC1f) mu3(R_31 . kappa_2) = mu3(R_13 . kappa_2^-1)
* (XC2c) 1 (x) kappa^-1 = (mu (x) mu3)(R_15 . R_23^-1 . kappa_4^-1)
* (XC2d) kappa (x) 1 = (mu3 (x) mu)(R_15^-1 . R_34 . kappa_2)
* (XC3)  R_12 R_13 R_23 = R_23 R_13 R_12
* invertibility of R and kappa.

``R_ij`` places the two tensor legs of R^{+-1} on factors i and j; for i > j
this equals conjugating by the flip, i.e. placing the opposite leg first.

Algebra file format::

    dim: <d>
    ring: laurent|rational
    R:
    <d^2 lines of d^2 comma-separated entries in Laurent syntax>
    Rinv:
    ...
    kappa:
    <d lines of d comma-separated entries>
    kappainv:
    ...
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import DimensionError, DomainError, ParseError
from .ring import LAURENT, RATIONAL, Coefficient, parse_laurent


class RingMatrix:
    """Immutable dense matrix of :class:`Coefficient` entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[Coefficient]]):
        rows = tuple(tuple(row) for row in entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged matrix")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", len(rows[0]) if rows else 0)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("RingMatrix is immutable")

    @staticmethod
    def identity(n: int, variant: str = LAURENT) -> "RingMatrix":
        one, zero = Coefficient.one(variant), Coefficient.zero(variant)
        return RingMatrix(
            [[one if i == j else zero for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zeros(rows: int, cols: int, variant: str = LAURENT) -> "RingMatrix":
        zero = Coefficient.zero(variant)
        return RingMatrix([[zero] * cols for _ in range(rows)])

    def __getitem__(self, rc: tuple[int, int]) -> Coefficient:
        return self.entries[rc[0]][rc[1]]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"RingMatrix({self.rows}x{self.cols})"

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def scale(self, c: Coefficient) -> "RingMatrix":
        return RingMatrix([[c * e for e in row] for row in self.entries])

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionError("matrix addition shape mismatch")
        return RingMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "RingMatrix") -> "RingMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionError("matrix subtraction shape mismatch")
        return RingMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )


def mat_mul(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    """Exact matrix product."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bt = list(zip(*b.entries)) if b.entries else []
    out = []
    for row in a.entries:
        orow = []
        for col in bt:
            acc = None
            for x, y in zip(row, col):
                if x.is_zero() or y.is_zero():
                    continue
                t = x * y
                acc = t if acc is None else acc + t
            if acc is None:
                acc = Coefficient.zero(row[0].variant if row else LAURENT)
            orow.append(acc)
        out.append(orow)
    return RingMatrix(out)


def mat_tensor(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    """Kronecker product, first factor major."""
    out = []
    for ra in a.entries:
        for rb in b.entries:
            out.append([x * y for x in ra for y in rb])
    return RingMatrix(out)


@dataclass(frozen=True)
class MatrixXCAlgebra:
    d: int
    R: RingMatrix
    Rinv: RingMatrix
    kappa: RingMatrix
    kappainv: RingMatrix
    variant: str = LAURENT

    def __post_init__(self):
        d = self.d
        if self.R.rows != d * d or self.R.cols != d * d:
            raise DimensionError("R must be d^2 x d^2")
        if self.Rinv.rows != d * d or self.Rinv.cols != d * d:
            raise DimensionError("Rinv must be d^2 x d^2")
        if self.kappa.rows != d or self.kappa.cols != d:
            raise DimensionError("kappa must be d x d")
        if self.kappainv.rows != d or self.kappainv.cols != d:
            raise DimensionError("kappainv must be d x d")


def _place_two_legs(m: RingMatrix, d: int, i: int, j: int, n: int, variant: str) -> RingMatrix:
    """Place the two legs of a d^2 x d^2 operator on tensor factors i and j
    (1-based, i != j, any order) of V^{(x)n}."""
    size = d**n
    zero = Coefficient.zero(variant)
    out = [[zero] * size for _ in range(size)]
    i -= 1
    j -= 1
    rest = [k for k in range(n) if k not in (i, j)]
    for ridx in product(range(d), repeat=2):
        for cidx in product(range(d), repeat=2):
            entry = m[(ridx[0] * d + ridx[1], cidx[0] * d + cidx[1])]
            if entry.is_zero():
                continue
            for other in product(range(d), repeat=len(rest)):
                row = [0] * n
                col = [0] * n
                row[i], row[j] = ridx
                col[i], col[j] = cidx
                for k, v in zip(rest, other):
                    row[k] = col[k] = v
                r = c = 0
                for k in range(n):
                    r = r * d + row[k]
                    c = c * d + col[k]
                out[r][c] = entry
    return RingMatrix(out)


def _place_one_leg(m: RingMatrix, d: int, i: int, n: int, variant: str) -> RingMatrix:
    left = RingMatrix.identity(d ** (i - 1), variant)
    right = RingMatrix.identity(d ** (n - i), variant)
    return mat_tensor(mat_tensor(left, m), right)


def embed_R(a: MatrixXCAlgebra, i: int, j: int, n: int, inverse: bool = False) -> RingMatrix:
    """R^{+-1} with first leg on factor i, second on factor j, of V^{(x)n}."""
    if i == j:
        raise DimensionError("embed_R requires i != j")
    if not (1 <= i <= n and 1 <= j <= n):
        raise DimensionError(f"leg indices ({i},{j}) out of range 1..{n}")
    m = a.Rinv if inverse else a.R
    return _place_two_legs(m, a.d, i, j, n, a.variant)


def embed_kappa(a: MatrixXCAlgebra, i: int, n: int, inverse: bool = False) -> RingMatrix:
    """kappa^{+-1} on factor i of V^{(x)n}, identity elsewhere."""
    if not 1 <= i <= n:
        raise DimensionError(f"leg index {i} out of range 1..{n}")
    return _place_one_leg(a.kappainv if inverse else a.kappa, a.d, i, n, a.variant)


def flip_matrix(d: int, variant: str = LAURENT) -> RingMatrix:
    """The flip P on V (x) V."""
    one, zero = Coefficient.one(variant), Coefficient.zero(variant)
    size = d * d
    out = [[zero] * size for _ in range(size)]
    for i in range(d):
        for j in range(d):
            out[i * d + j][j * d + i] = one
    return RingMatrix(out)


def mu_groups(t: RingMatrix, d: int, groups: Sequence[int], variant: str = LAURENT) -> RingMatrix:
    """Apply the multiplication map leg-group-wise.

    ``t`` acts on V^{(x)n} with n = sum(groups); each group of k consecutive
    legs is contracted by multiplying its End(V) factors left to right,
    producing an operator on V^{(x)len(groups)}.  A group of size 0 contributes
    an identity factor.
    """
    n = sum(groups)
    if t.rows != d**n or t.cols != d**n:
        raise DimensionError("mu_groups: matrix size does not match leg count")
    g = len(groups)
    size = d**g
    zero = Coefficient.zero(variant)
    out = [[zero] * size for _ in range(size)]
    # Positions of each group's legs within the n legs.
    starts = []
    pos = 0
    for k in groups:
        starts.append(pos)
        pos += k
    for orow in product(range(d), repeat=g):
        for ocol in product(range(d), repeat=g):
            # Sum over internal contraction indices: group of size k needs k-1.
            acc = None
            internal_sizes = [max(k - 1, 0) for k in groups]
            for internal in product(range(d), repeat=sum(internal_sizes)):
                row = [0] * n
                col = [0] * n
                ipos = 0
                ok = True
                for gi, k in enumerate(groups):
                    if k == 0:
                        # empty group: identity factor, indices must agree
                        if orow[gi] != ocol[gi]:
                            ok = False
                            break
                        continue
                    chain = [orow[gi]] + list(
                        internal[ipos : ipos + k - 1]
                    ) + [ocol[gi]]
                    ipos += k - 1
                    for leg in range(k):
                        row[starts[gi] + leg] = chain[leg]
                        col[starts[gi] + leg] = chain[leg + 1]
                if not ok:
                    continue
                r = c = 0
                for kk in range(n):
                    r = r * d + row[kk]
                    c = c * d + col[kk]
                e = t[(r, c)]
                if e.is_zero():
                    continue
                acc = e if acc is None else acc + e
            if acc is None:
                acc = zero
            rr = cc = 0
            for gi in range(g):
                rr = rr * d + orow[gi]
                cc = cc * d + ocol[gi]
            out[rr][cc] = acc
    return RingMatrix(out)


def check_axioms(a: MatrixXCAlgebra) -> dict:
    """Verify the XC axioms exactly; returns a per-axiom report."""
    d, variant = a.d, a.variant
    report: dict[str, dict] = {}

    def record(name: str, lhs: RingMatrix, rhs: RingMatrix) -> None:
        diff = lhs - rhs
        if diff.is_zero():
            report[name] = {"ok": True}
        else:
            where = next(
                (i, j)
                for i in range(diff.rows)
                for j in range(diff.cols)
                if not diff[(i, j)].is_zero()
            )
            report[name] = {
                "ok": False,
                "entry": where,
                "lhs": str(lhs[where]),
                "rhs": str(rhs[where]),
            }

    idd = RingMatrix.identity(d, variant)
    id2 = RingMatrix.identity(d * d, variant)
    record("invertibility-R", mat_mul(a.R, a.Rinv), id2)
    record("invertibility-R'", mat_mul(a.Rinv, a.R), id2)
    record("invertibility-kappa", mat_mul(a.kappa, a.kappainv), idd)

    kk = mat_tensor(a.kappa, a.kappa)
    kkinv = mat_tensor(a.kappainv, a.kappainv)
    record("XC0", a.R, mat_mul(mat_mul(kk, a.R), kkinv))
    record("XC0'", a.Rinv, mat_mul(mat_mul(kk, a.Rinv), kkinv))

    r31 = embed_R(a, 3, 1, 3)
    r13 = embed_R(a, 1, 3, 3)
    k2 = embed_kappa(a, 2, 3)
    k2inv = embed_kappa(a, 2, 3, inverse=True)
    record(
        "XC1f",
        mu_groups(mat_mul(r31, k2), d, [3], variant),
        mu_groups(mat_mul(r13, k2inv), d, [3], variant),
    )

    lhs = mu_groups(
        mat_mul(
            mat_mul(embed_R(a, 1, 5, 5), embed_R(a, 2, 3, 5, inverse=True)),
            embed_kappa(a, 4, 5, inverse=True),
        ),
        d,
        [2, 3],
        variant,
    )
    record("XC2c", mat_tensor(idd, a.kappainv), lhs)

    lhs = mu_groups(
        mat_mul(
            mat_mul(embed_R(a, 1, 5, 5, inverse=True), embed_R(a, 3, 4, 5)),
            embed_kappa(a, 2, 5),
        ),
        d,
        [3, 2],
        variant,
    )
    record("XC2d", mat_tensor(a.kappa, idd), lhs)

    r12 = embed_R(a, 1, 2, 3)
    r13 = embed_R(a, 1, 3, 3)
    r23 = embed_R(a, 2, 3, 3)
    record(
        "XC3",
        mat_mul(mat_mul(r12, r13), r23),
        mat_mul(mat_mul(r23, r13), r12),
    )
    report["ok"] = all(v["ok"] for k, v in report.items() if k != "ok")
    return report


def builtin_uqsl2() -> MatrixXCAlgebra:
    """The built-in d=2 quantum-sl2 instance over Z[q, q^-1].

    R is the standard two-dimensional quantum-sl2 R-matrix with its global
    q^(-1/2) scalar dropped (a permitted monomial normalization); the
    balancing element acts as diag(q, q^-1).
    """
    q = Coefficient.q_power(1)
    qi = Coefficient.q_power(-1)
    one = Coefficient.one(LAURENT)
    zero = Coefficient.zero(LAURENT)
    h = q - qi  # q - q^-1
    R = RingMatrix(
        [
            [q, zero, zero, zero],
            [zero, one, h, zero],
            [zero, zero, one, zero],
            [zero, zero, zero, q],
        ]
    )
    Rinv = RingMatrix(
        [
            [qi, zero, zero, zero],
            [zero, one, -h, zero],
            [zero, zero, one, zero],
            [zero, zero, zero, qi],
        ]
    )
    kappa = RingMatrix([[q, zero], [zero, qi]])
    kappainv = RingMatrix([[qi, zero], [zero, q]])
    return MatrixXCAlgebra(2, R, Rinv, kappa, kappainv, LAURENT)


# -- algebra file format ----------------------------------------------


def _parse_entry(text: str, variant: str, lineno: int) -> Coefficient:
    text = text.strip()
    if variant == LAURENT:
        return parse_laurent(text, lineno)
    try:
        return Coefficient.rational(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational entry {text!r}", lineno, 1)


def parse_algebra(text: str) -> MatrixXCAlgebra:
    lines = text.splitlines()
    d = None
    variant = LAURENT
    blocks: dict[str, list[list[Coefficient]]] = {}
    current: str | None = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.endswith(":") and line[:-1] in ("R", "Rinv", "kappa", "kappainv"):
            current = line[:-1]
            blocks[current] = []
            continue
        if line.startswith("dim:"):
            rest = line[4:].strip()
            if not rest.isdigit() or int(rest) < 1:
                raise ParseError(f"bad dimension {rest!r}", lineno, 5)
            d = int(rest)
            current = None
            continue
        if line.startswith("ring:"):
            rest = line[5:].strip()
            if rest not in (LAURENT, RATIONAL):
                raise ParseError(f"bad ring {rest!r}", lineno, 6)
            variant = rest
            current = None
            continue
        if current is None:
            raise ParseError(f"unexpected line {line!r}", lineno, 1)
        blocks[current].append(
            [_parse_entry(e, variant, lineno) for e in line.split(",")]
        )
    if d is None:
        raise ParseError("missing 'dim:' line", 1, 1)
    for name in ("R", "Rinv", "kappa", "kappainv"):
        if name not in blocks:
            raise ParseError(f"missing '{name}:' block", 1, 1)
    try:
        return MatrixXCAlgebra(
            d,
            RingMatrix(blocks["R"]),
            RingMatrix(blocks["Rinv"]),
            RingMatrix(blocks["kappa"]),
            RingMatrix(blocks["kappainv"]),
            variant,
        )
    except DimensionError as exc:
        raise ParseError(str(exc), 1, 1)


def print_algebra(a: MatrixXCAlgebra) -> str:
    lines = [f"dim: {a.d}", f"ring: {a.variant}"]
    for name in ("R", "Rinv", "kappa", "kappainv"):
        lines.append(f"{name}:")
        m: RingMatrix = getattr(a, name)
        for row in m.entries:
            lines.append(", ".join(str(e) for e in row))
    return "\n".join(lines) + "\n"

"""The universal invariant: evaluate an XC-Gauss diagram into a matrix
XC-algebra together with a strand permutation.

Evaluation follows the bead calculus: traversing each strand bottom to top,
every event deposits a bead on that strand's tensor leg.  A chord of sign s
deposits the first leg of R^s on its over endpoint and the second leg on its
under endpoint; a positive diamond deposits kappa^-1, a negative diamond
deposits kappa.  Beads encountered later along a strand multiply on the
LEFT.  The value is realized as a single d^n x d^n matrix on V^{(x)n}.

Values compose by the twisted law of the virtual category of elements:
``(u, sigma) o (v, tau) = (tau^-1-permuted u . v, sigma o tau)``, and the
realization map sends ``(u, sigma)`` to ``perm_matrix(sigma) . u``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import gauss
from .algebra import MatrixXCAlgebra, RingMatrix, mat_mul, mat_tensor
from .errors import DimensionError, GuardrailError, NonScalarError, ValidationError
from .gauss import DIAMOND, OVER, UNDER, XCGaussDiagram
from .ring import Coefficient

DEFAULT_GUARDRAIL = 4096


# -- permutations (1-based tuples) ------------------------------------


def perm_compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """(a o b)(i) = a(b(i))."""
    if len(a) != len(b):
        raise DimensionError("permutation size mismatch")
    return tuple(a[b[i] - 1] for i in range(len(a)))


def perm_inverse(a: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(a)
    for i, v in enumerate(a):
        inv[v - 1] = i + 1
    return tuple(inv)


def perm_block(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    n = len(a)
    return a + tuple(v + n for v in b)


def perm_matrix(sigma: tuple[int, ...], d: int, variant: str) -> RingMatrix:
    """The operator sending e_{k_1} (x) ... (x) e_{k_n} to the tensor with
    factor i replaced by factor sigma^-1(i) (i.e. factor i moves to position
    sigma(i))."""
    n = len(sigma)
    inv = perm_inverse(sigma)
    size = d**n
    one, zero = Coefficient.one(variant), Coefficient.zero(variant)
    out = [[zero] * size for _ in range(size)]
    for col in product(range(d), repeat=n):
        row = tuple(col[inv[i] - 1] for i in range(n))
        r = c = 0
        for i in range(n):
            r = r * d + row[i]
            c = c * d + col[i]
        out[r][c] = one
    return RingMatrix(out)


@dataclass(frozen=True)
class InvariantValue:
    """An element of the virtual category of elements, realized on V^{(x)n}."""

    n: int
    value: RingMatrix
    sigma: tuple[int, ...]
    d: int
    variant: str

    def __post_init__(self):
        size = self.d**self.n
        if self.value.rows != size or self.value.cols != size:
            raise DimensionError("value matrix has wrong size")
        if sorted(self.sigma) != list(range(1, self.n + 1)):
            raise ValidationError("sigma is not a permutation")


def identity_value(n: int, a: MatrixXCAlgebra) -> InvariantValue:
    return InvariantValue(
        n, RingMatrix.identity(a.d**n, a.variant), tuple(range(1, n + 1)), a.d, a.variant
    )


# -- R decomposition --------------------------------------------------

_DECOMP_CACHE: dict[int, list] = {}


def _decompose_two_leg(m: RingMatrix, d: int, variant: str):
    """Write a d^2 x d^2 operator as sum of E_ac (x) Q_ac, dropping zero Q."""
    key = id(m)
    hit = _DECOMP_CACHE.get(key)
    if hit is not None:
        return hit
    terms = []
    zero = Coefficient.zero(variant)
    for a in range(d):
        for c in range(d):
            q = [[m[(a * d + b, c * d + e)] for e in range(d)] for b in range(d)]
            if all(x.is_zero() for row in q for x in row):
                continue
            terms.append((a, c, RingMatrix(q)))
    _DECOMP_CACHE[key] = terms
    return terms


def _unit_left_mul(a: int, c: int, acc: list[list[Coefficient]], d: int, zero) -> list:
    """E_ac . acc for d x d acc kept as lists."""
    out = [[zero] * d for _ in range(d)]
    out[a] = list(acc[c])
    return out


def zeval(
    d_: XCGaussDiagram, a: MatrixXCAlgebra, guardrail: int = DEFAULT_GUARDRAIL
) -> InvariantValue:
    """Evaluate the universal invariant of a diagram in algebra ``a``."""
    gauss.validate(d_)
    n = d_.n
    dim = a.d
    if dim**n > guardrail:
        raise GuardrailError(
            f"evaluation on {n} legs of dimension {dim} exceeds guardrail {guardrail}"
        )
    variant = a.variant
    zero = Coefficient.zero(variant)
    one = Coefficient.one(variant)
    sign = d_.chord_sign
    chord_ids = sorted(sign)
    chord_pos = {c: k for k, c in enumerate(chord_ids)}
    terms_for = {
        c: _decompose_two_leg(a.R if sign[c] > 0 else a.Rinv, dim, variant)
        for c in chord_ids
    }
    kappa = a.kappa.entries
    kappainv = a.kappainv.entries

    incident: list[list[int]] = [[] for _ in range(n)]
    for i, ev in enumerate(d_.events):
        for kind, val in ev:
            if kind in (OVER, UNDER) and chord_pos[val] not in incident[i]:
                incident[i].append(chord_pos[val])
    for lst in incident:
        lst.sort()

    def word(strand: int, assignment: tuple[int, ...]) -> RingMatrix | None:
        """Bead product along a strand; assignment indexes terms of ALL
        chords (by chord_pos).  Returns None when the product vanishes."""
        acc = [[one if i == j else zero for j in range(dim)] for i in range(dim)]
        for kind, val in d_.events[strand]:
            if kind == DIAMOND:
                k = kappainv if val > 0 else kappa
                acc = [
                    [
                        _dotrow(k[r], [acc[x][cc] for x in range(dim)], zero)
                        for cc in range(dim)
                    ]
                    for r in range(dim)
                ]
            else:
                aa, cc, q = terms_for[val][assignment[chord_pos[val]]]
                if kind == OVER:
                    acc = _unit_left_mul(aa, cc, acc, dim, zero)
                else:
                    acc = [
                        [
                            _dotrow(q.entries[r], [acc[x][c2] for x in range(dim)], zero)
                            for c2 in range(dim)
                        ]
                        for r in range(dim)
                    ]
            if all(x.is_zero() for row in acc for x in row):
                return None
        return RingMatrix(acc)

    word_cache: list[dict] = [{} for _ in range(n)]
    size = dim**n
    total = [[zero] * size for _ in range(size)]
    ranges = [range(len(terms_for[c])) for c in chord_ids]
    for assignment in product(*ranges):
        fs = []
        dead = False
        for s in range(n):
            key = tuple(assignment[k] for k in incident[s])
            w = word_cache[s].get(key, False)
            if w is False:
                w = word(s, assignment)
                word_cache[s][key] = w
            if w is None:
                dead = True
                break
            fs.append(w)
        if dead:
            continue
        if not fs:
            m = RingMatrix([[one]])
        else:
            m = fs[0]
            for f in fs[1:]:
                m = mat_tensor(m, f)
        for r in range(size):
            mrow = m.entries[r]
            trow = total[r]
            for c in range(size):
                e = mrow[c]
                if not e.is_zero():
                    trow[c] = trow[c] + e
    return InvariantValue(n, RingMatrix(total), d_.top, dim, variant)


def _dotrow(row, col, zero):
    acc = zero
    for x, y in zip(row, col):
        if not (x.is_zero() or y.is_zero()):
            acc = acc + x * y
    return acc


def ve_compose(u: InvariantValue, v: InvariantValue) -> InvariantValue:
    """Compose values: u after v."""
    if u.n != v.n or u.d != v.d:
        raise DimensionError("value size mismatch")
    tau = v.sigma
    taum = perm_matrix(tau, u.d, u.variant)
    tauim = perm_matrix(perm_inverse(tau), u.d, u.variant)
    value = mat_mul(mat_mul(mat_mul(tauim, u.value), taum), v.value)
    return InvariantValue(u.n, value, perm_compose(u.sigma, v.sigma), u.d, u.variant)


def ve_tensor(u: InvariantValue, v: InvariantValue) -> InvariantValue:
    if u.d != v.d or u.variant != v.variant:
        raise DimensionError("value algebra mismatch")
    return InvariantValue(
        u.n + v.n,
        mat_tensor(u.value, v.value),
        perm_block(u.sigma, v.sigma),
        u.d,
        u.variant,
    )


def iota_realize(u: InvariantValue) -> RingMatrix:
    """Realize (value, sigma) as the single matrix perm(sigma) . value."""
    return mat_mul(perm_matrix(u.sigma, u.d, u.variant), u.value)


def long_knot_scalar(u: InvariantValue) -> Coefficient:
    """The scalar lambda with value = lambda . Id, for one-strand values."""
    if u.n != 1:
        raise NonScalarError(f"expected a one-strand value, got {u.n} strands")
    lam = u.value[(0, 0)]
    for i in range(u.d):
        for j in range(u.d):
            e = u.value[(i, j)]
            if i == j:
                if e != lam:
                    raise NonScalarError(
                        f"diagonal entry ({i},{j}) = {e} differs from {lam}",
                        (i, j),
                    )
            elif not e.is_zero():
                raise NonScalarError(
                    f"off-diagonal entry ({i},{j}) = {e} is nonzero", (i, j)
                )
    return lam

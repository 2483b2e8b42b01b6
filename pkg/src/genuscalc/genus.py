"""The genus group of a map and the matrix pairs behind it.

Notation used throughout: ``C`` is the ``rank_Y x rank_X`` integer matrix of
the map in one degree, and a pair ``(A1, A2)`` of square integer matrices is
admissible for ``C`` and a modulus ``t`` when ``A2 @ C == C @ A1`` exactly and
both determinants are prime to ``t``. Admissible pairs form a monoid; its
image under the two determinants, modulo ``t``, is what the genus group is
built from.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .abgroup import FinAbGroup, NonUnitError, cyclic_sum_map, quotient_by, units_group, units_mod_pm1
from .intalg import (
    DimensionError,
    IntMatrix,
    MatrixLike,
    as_matrix,
    block,
    determinant,
    from_blocks,
    inverse_mod,
    is_identity_mod,
    mat_mod,
    sl_lift,
    smith_normal_form,
    unimodular_inverse,
)
from .model import DegreeKind, MapModel, degree_kind, k_of, t_hat as compute_t_hat
from .ntheory import unit_combination

__all__ = [
    "ClaimError",
    "ClaimObstruction",
    "DetSubgroup",
    "GenusReport",
    "MatrixPair",
    "claim_factor",
    "claim_postconditions",
    "coordinate_layout",
    "genus_group",
    "in_t_prime",
    "random_admissible_pair",
    "realizable_det_subgroup",
    "reduce_to_diagonal",
]


class ClaimError(ValueError):
    """Inputs to :func:`claim_factor` violate its preconditions."""


class ClaimObstruction(ArithmeticError):
    """No unimodular factor pair exists for these admissible inputs.

    Raised when ``C`` has a nonzero part and a kernel on both sides while the
    determinant of the shared block is not ``+-1`` modulo ``t``: every
    admissible ``H1`` is block triangular with that block unimodular, so it
    cannot invert ``G1`` modulo ``t``.
    """

    def __init__(self, message: str, block_det: int, t_hat: int):
        super().__init__(message)
        self.block_det = block_det
        self.t_hat = t_hat


@dataclass(frozen=True)
class MatrixPair:
    A1: IntMatrix
    A2: IntMatrix
    degree: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "A1", as_matrix(self.A1))
        object.__setattr__(self, "A2", as_matrix(self.A2))
        for name in ("A1", "A2"):
            if not getattr(self, name).is_square:
                raise DimensionError(f"{name} must be square, got {getattr(self, name).shape}")

    @property
    def dets(self) -> tuple[int, int]:
        return determinant(self.A1), determinant(self.A2)


def _check_shapes(A1: IntMatrix, A2: IntMatrix, C: IntMatrix) -> None:
    if C.shape != (A2.rows, A1.rows):
        raise DimensionError(
            f"C is {C.rows}x{C.cols} but the pair has sizes {A1.rows} (X) and {A2.rows} (Y)"
        )


def in_t_prime(p: MatrixPair, C: MatrixLike, t_hat: int) -> bool:
    """True iff ``A2 C == C A1`` over the integers and both dets are prime to ``t_hat``."""
    C = as_matrix(C)
    _check_shapes(p.A1, p.A2, C)
    if p.A2 @ C != C @ p.A1:
        return False
    d1, d2 = p.dets
    return gcd(d1, t_hat) == 1 and gcd(d2, t_hat) == 1


def reduce_to_diagonal(C: MatrixLike) -> tuple[IntMatrix, tuple[IntMatrix, IntMatrix]]:
    """Smith form ``C' = U C V`` of ``C`` with its unimodular pair ``(U, V)``.

    ``(A1, A2) -> (V^-1 A1 V, U A2 U^-1)`` carries admissible pairs for ``C``
    onto those for ``C'`` and keeps both determinants. A matrix already in
    Smith form comes back unchanged with identity conjugators.
    """
    snf = smith_normal_form(as_matrix(C))
    return snf.D, (snf.U, snf.V)


# -- admissible pairs for a matrix in Smith form --------------------------------
#
# For C' = [[D, 0], [0, 0]] with D = diag(c_1 | ... | c_l) every admissible pair
# has the block shape
#
#     A1 = [[a11, 0], [a21, a22]],   A2 = [[b11, b12], [0, b22]],   b11 = D a11 D^-1,
#
# so a11 ranges over the order {a : D a D^-1 integral}, i.e. entry (i, j) with
# i < j divisible by c_j / c_i.


def _step(c: Sequence[int], i: int, j: int) -> int:
    """Divisor forced on entry (i, j) of the shared block."""
    return c[j] // c[i] if i < j else 1


def _conjugate_by_D(a: IntMatrix, c: Sequence[int]) -> IntMatrix:
    rows = a.tolist()
    out = []
    for i, r in enumerate(rows):
        line = []
        for j, x in enumerate(r):
            q, rem = divmod(x * c[i], c[j])
            if rem:
                raise ArithmeticError(f"entry ({i}, {j}) = {x} is not divisible by {c[j] // c[i]}")
            line.append(q)
        out.append(line)
    return IntMatrix.from_rows(out, a.cols)


def _order_inverse_lift(g: IntMatrix, c: Sequence[int], t: int) -> IntMatrix:
    """Det-one ``h`` in the order of ``c`` with ``h g == I`` modulo ``t`` times the order.

    ``g`` lies in the order and ``det g == 1 (mod t)``. Elimination uses only
    transvections that stay inside the order: downward row moves are free,
    upward ones carry the factor ``c_k / c_j``. The leftover diagonal is
    absorbed by explicit 2x2 blocks.
    """
    n = g.rows
    if t == 1 or n == 0:
        return IntMatrix.identity(n)
    mod = [[t * _step(c, i, j) for j in range(n)] for i in range(n)]
    a = [[x % mod[i][j] for j, x in enumerate(r)] for i, r in enumerate(g.tolist())]
    E = IntMatrix.identity(n).tolist()  # left factor
    F = IntMatrix.identity(n).tolist()  # right factor

    def row_op(dst, src, k):  # row_dst += k * row_src
        if not k:
            return
        a[dst] = [(x + k * y) % mod[dst][j] for j, (x, y) in enumerate(zip(a[dst], a[src]))]
        E[dst] = [x + k * y for x, y in zip(E[dst], E[src])]

    def col_op(dst, src, k):  # col_dst += k * col_src
        if not k:
            return
        for i in range(n):
            a[i][dst] = (a[i][dst] + k * a[i][src]) % mod[i][dst]
            F[i][dst] += k * F[i][src]

    pivots = []
    for j in range(n):
        below = list(range(j + 1, n))
        xs = unit_combination(a[j][j], [_step(c, j, k) * a[k][j] for k in below], t)
        for k, x in zip(below, xs):
            row_op(j, k, x * _step(c, j, k))
        u = a[j][j] % t
        uinv = pow(u, -1, t)
        for i in below:
            row_op(i, j, -(a[i][j] * uinv % t))
        for k in below:
            e = _step(c, j, k)
            col_op(k, j, -((a[j][k] // e) * uinv % t) * e)
        pivots.append(u)

    # E g F == diag(pivots); build delta == diag(pivots)^-1 inside the order
    inv = [pow(u, -1, t) for u in pivots]
    delta = IntMatrix.identity(n)
    w = 1
    for i in range(n - 1):
        w = w * inv[i] % t
        delta = delta @ _diag_pair_block(n, i, w, t * _step(c, i, i + 1), t)
    return IntMatrix.from_rows(F, n) @ delta @ IntMatrix.from_rows(E, n)


def _diag_pair_block(n: int, i: int, w: int, upper_mod: int, t: int) -> IntMatrix:
    """Det-one matrix congruent to ``diag(.., w, w^-1, ..)`` at ``(i, i+1)``.

    The upper off-diagonal entry is a multiple of ``upper_mod`` and the lower
    one a multiple of ``t``.
    """
    big = upper_mod * t
    a = w
    while gcd(a, big) != 1:
        a += t
    d = pow(a, -1, big)
    q = (a * d - 1) // big
    rows = IntMatrix.identity(n).tolist()
    rows[i][i], rows[i][i + 1] = a, upper_mod * q
    rows[i + 1][i], rows[i + 1][i + 1] = t, d
    return IntMatrix.from_rows(rows, n)


def _signed_lift(target: IntMatrix, sign: int, t: int) -> IntMatrix:
    """Integer matrix of determinant ``sign`` congruent to ``target`` mod ``t``."""
    n = target.rows
    if n == 0:
        return target
    J = IntMatrix.diag([sign] + [1] * (n - 1))
    return sl_lift(mat_mod(target @ J, t), t) @ J


def _claim_in_smith_form(G1: IntMatrix, G2: IntMatrix, c: list[int], t: int) -> tuple[IntMatrix, IntMatrix]:
    l, r1, r2 = len(c), G1.rows, G2.rows
    P, Q1, Q2 = range(l), range(l, r1), range(l, r2)
    g11, g21, g22 = block(G1, P, P), block(G1, Q1, P), block(G1, Q1, Q1)
    k12, k22 = block(G2, P, Q2), block(G2, Q2, Q2)

    u = determinant(g11) % t
    sign = 1
    if l and r1 > l and r2 > l:
        if u == 1 % t:
            sign = 1
        elif u == (-1) % t:
            sign = -1
        else:
            raise ClaimObstruction(
                f"shared block has det {u} (mod {t}), not +-1; "
                "no unimodular admissible pair inverts (G1, G2)",
                u,
                t,
            )
    J = IntMatrix.diag([sign] + [1] * (l - 1)) if l else IntMatrix.identity(0)
    h11 = _order_inverse_lift(J @ g11, c, t) @ J
    m11 = _conjugate_by_D(h11, c)
    h22 = _signed_lift(inverse_mod(g22, t), sign, t)
    m22 = _signed_lift(inverse_mod(k22, t), sign, t)
    h21 = mat_mod(-(h22 @ g21 @ h11), t)
    m12 = mat_mod(-(m11 @ k12 @ m22), t)

    H1 = from_blocks([[h11, IntMatrix.zeros(l, r1 - l)], [h21, h22]])
    H2 = from_blocks([[m11, m12], [IntMatrix.zeros(r2 - l, l), m22]])
    return H1, H2


def claim_postconditions(G1, G2, H1, H2, C, t_hat: int) -> dict[str, bool]:
    """The four properties a factor pair must have, evaluated one by one."""
    G1, G2, H1, H2, C = map(as_matrix, (G1, G2, H1, H2, C))
    return {
        "unimodular": abs(determinant(H1)) == 1 and abs(determinant(H2)) == 1,
        "admissible": in_t_prime(MatrixPair(H1, H2), C, t_hat),
        "left_inverse": is_identity_mod(G1 @ H1, t_hat),
        "right_inverse": is_identity_mod(H2 @ G2, t_hat),
    }


def claim_factor(G1: MatrixLike, G2: MatrixLike, C: MatrixLike, t_hat: int) -> tuple[IntMatrix, IntMatrix]:
    """Unimodular admissible ``(H1, H2)`` with ``G1 H1 == I`` and ``H2 G2 == I`` mod ``t_hat``.

    ``(G1, G2)`` must be admissible for ``C`` with both determinants congruent
    to 1. ``C`` is brought to Smith form, the factor pair is built there
    blockwise and conjugated back; all four postconditions are checked before
    returning.

    Raises
    ------
    ClaimError
        Preconditions fail.
    ClaimObstruction
        The inputs admit no such pair (see the exception's docstring).
    """
    G1, G2, C = as_matrix(G1), as_matrix(G2), as_matrix(C)
    if t_hat < 1:
        raise ClaimError(f"modulus must be >= 1, got {t_hat}")
    if not (G1.is_square and G2.is_square):
        raise DimensionError("G1 and G2 must be square")
    _check_shapes(G1, G2, C)
    if not in_t_prime(MatrixPair(G1, G2), C, t_hat):
        raise ClaimError("(G1, G2) is not an admissible pair for C")
    d1, d2 = determinant(G1), determinant(G2)
    if (d1 - 1) % t_hat or (d2 - 1) % t_hat:
        raise ClaimError(f"dets ({d1}, {d2}) are not both 1 mod {t_hat}")

    if abs(d1) == 1 and abs(d2) == 1:
        # exact inverses are admissible whenever they exist
        H1, H2 = unimodular_inverse(G1), unimodular_inverse(G2)
    else:
        Cd, (U, V) = reduce_to_diagonal(C)
        Uinv, Vinv = unimodular_inverse(U), unimodular_inverse(V)
        c = [x for x in Cd.diagonal() if x]
        H1d, H2d = _claim_in_smith_form(Vinv @ G1 @ V, U @ G2 @ Uinv, c, t_hat)
        H1, H2 = V @ H1d @ Vinv, Uinv @ H2d @ U

    failed = [k for k, ok in claim_postconditions(G1, G2, H1, H2, C, t_hat).items() if not ok]
    if failed:
        raise ArithmeticError(f"constructed factor pair fails: {', '.join(failed)}")
    return H1, H2


def random_admissible_pair(C: MatrixLike, t_hat: int, rng: random.Random, bound: int = 5) -> tuple[IntMatrix, IntMatrix]:
    """Random ``(G1, G2)`` admissible for ``C`` with both dets 1 mod ``t_hat``.

    Sampled block by block in the Smith basis of ``C`` (entries in
    ``[-bound, bound]``, rescaled where the order requires) and conjugated
    back.
    """
    C = as_matrix(C)
    Cd, (U, V) = reduce_to_diagonal(C)
    c = [x for x in Cd.diagonal() if x]
    l, r1, r2 = len(c), C.cols, C.rows
    t = t_hat

    def rand_block(rows, cols, step=lambda i, j: 1):
        return IntMatrix.from_rows(
            [[rng.randint(-bound, bound) * step(i, j) for j in range(cols)] for i in range(rows)], cols
        )

    def unit_det(sample):
        while True:
            m = sample()
            if gcd(determinant(m), t) == 1:
                return m

    def with_det(m, target):
        # rescale the first column so det m == target (mod t)
        if m.rows == 0:
            return m
        w = target * pow(determinant(m), -1, t) % t if t > 1 else 1
        return m @ IntMatrix.diag([w] + [1] * (m.rows - 1))

    a11 = unit_det(lambda: rand_block(l, l, lambda i, j: _step(c, i, j)))
    q1, q2 = r1 - l, r2 - l
    if q1 == 0 or q2 == 0:
        a11 = with_det(a11, 1)
    u = determinant(a11) % t if t > 1 else 0
    uinv = pow(u, -1, t) if t > 1 else 0
    a22 = with_det(unit_det(lambda: rand_block(q1, q1)), uinv)
    b22 = with_det(unit_det(lambda: rand_block(q2, q2)), uinv)
    a21, b12 = rand_block(q1, l), rand_block(l, q2)
    b11 = _conjugate_by_D(a11, c)

    G1d = from_blocks([[a11, IntMatrix.zeros(l, q1)], [a21, a22]])
    G2d = from_blocks([[b11, b12], [IntMatrix.zeros(q2, l), b22]])
    G1 = V @ G1d @ unimodular_inverse(V)
    G2 = unimodular_inverse(U) @ G2d @ U
    return G1, G2


# -- realizable determinants ---------------------------------------------------


@dataclass(frozen=True)
class DetSubgroup:
    """Determinants of admissible pairs in one degree, as a subgroup of units mod ``t``.

    ``kind`` records which of the four shapes applies. ``generators`` are
    tuples of length ``arity`` (one coordinate per determinant the genus
    group sees); :meth:`as_det_tuple` expands a coordinate tuple into the
    tuple of actual determinants, of length ``sides``.
    """

    kind: DegreeKind
    modulus: int
    generators: tuple[tuple[int, ...], ...]
    as_group: FinAbGroup

    @property
    def arity(self) -> int:
        return self.kind.arity

    @property
    def sides(self) -> int:
        return {DegreeKind.NONE: 0, DegreeKind.X_ONLY: 1, DegreeKind.Y_ONLY: 1}.get(self.kind, 2)

    def as_det_tuple(self, coords: Sequence[int]) -> tuple[int, ...]:
        if self.kind is DegreeKind.ISO:
            return (coords[0], coords[0])
        return tuple(coords)

    def det_generators(self) -> list[tuple[int, ...]]:
        return [self.as_det_tuple(g) for g in self.generators]

    def contains(self, dets: Sequence[int]) -> bool:
        """Membership of a determinant tuple (reduced mod ``modulus``)."""
        t = self.modulus
        dets = tuple(d % t for d in dets)
        if len(dets) != self.sides or any(gcd(d, t) != 1 for d in dets):
            return False
        if self.kind is DegreeKind.ISO:
            return dets[0] == dets[1]
        return True

    def elements(self) -> set[tuple[int, ...]]:
        t = self.modulus
        units = [u for u in range(t) if gcd(u, t) == 1] if t > 1 else [0]
        if self.kind is DegreeKind.NONE:
            return {()}
        if self.kind is DegreeKind.ISO:
            return {(u, u) for u in units}
        if self.sides == 1:
            return {(u,) for u in units}
        return {(u, v) for u in units for v in units}


def realizable_det_subgroup(C: MatrixLike | None, rank_X: int, rank_Y: int, t_hat: int) -> DetSubgroup:
    """Subgroup of ``(Z*_t)^arity`` hit by determinants of admissible pairs."""
    if rank_X and rank_Y:
        if C is None:
            raise DimensionError("C is required when both ranks are nonzero")
        C = as_matrix(C)
        if C.shape != (rank_Y, rank_X):
            raise DimensionError(f"C is {C.rows}x{C.cols}, expected {rank_Y}x{rank_X}")
        iso = C.is_square and determinant(C) != 0
        kind = DegreeKind.ISO if iso else DegreeKind.FULL
    elif rank_X:
        kind = DegreeKind.X_ONLY
    elif rank_Y:
        kind = DegreeKind.Y_ONLY
    else:
        kind = DegreeKind.NONE

    P = units_group(t_hat)
    gens: list[tuple[int, ...]] = []
    one = 1 % t_hat
    if kind.arity == 1:
        gens = [(g,) for g in P.generators]
    elif kind.arity == 2:
        gens = [(g, one) for g in P.generators] + [(one, g) for g in P.generators]
    group = P.group.power(kind.arity) if kind.arity else FinAbGroup()
    return DetSubgroup(kind, t_hat, tuple(gens), group)


# -- the genus group -------------------------------------------------------------


def coordinate_layout(M: MapModel) -> list[tuple[int, str]]:
    """Determinant coordinates in order: ascending degree, X before Y.

    Each entry is ``(degree, side)`` with side ``"X"``, ``"Y"`` or ``"XY"``
    (the single shared coordinate of a rationally invertible degree).
    """
    out = []
    for n in M.degrees():
        kind = degree_kind(M, n)
        if kind is DegreeKind.X_ONLY:
            out.append((n, "X"))
        elif kind is DegreeKind.Y_ONLY:
            out.append((n, "Y"))
        elif kind is DegreeKind.ISO:
            out.append((n, "XY"))
        elif kind is DegreeKind.FULL:
            out += [(n, "X"), (n, "Y")]
    return out


@dataclass(frozen=True)
class GenusReport:
    t_hat: int
    k: int
    upper_bound: FinAbGroup
    image_gens: tuple[tuple[int, ...], ...]
    genus_group: FinAbGroup
    layout: tuple[tuple[int, str], ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "t_hat": self.t_hat,
            "k": self.k,
            "upper_bound": list(self.upper_bound.invariant_factors),
            "genus_group": list(self.genus_group.invariant_factors),
        }


def genus_group(M: MapModel, selfmap_images: Sequence[Sequence[int]] = ()) -> GenusReport:
    """Assemble ``(Z*_t/+-1)^k`` and divide out the given self-map determinants.

    Each entry of ``selfmap_images`` holds one unit mod ``t_hat`` per
    coordinate of :func:`coordinate_layout`. With no images the result is the
    upper bound itself.
    """
    t = compute_t_hat(M)
    k = k_of(M)
    layout = coordinate_layout(M)
    Q, to_class = units_mod_pm1(t)

    # images arrive as k blocks of Q-coordinates; normalize the direct sum
    to_upper = cyclic_sum_map(list(Q.invariant_factors) * k)
    upper = to_upper.target

    images = []
    for idx, tup in enumerate(selfmap_images):
        if len(tup) != k:
            raise ValueError(f"self-map image {idx} has {len(tup)} entries, expected k = {k}")
        coords: list[int] = []
        for u in tup:
            if gcd(u, t) != 1:
                raise NonUnitError(f"self-map image {idx}: {u} is not a unit modulo {t}")
            coords += to_class(u)
        images.append(to_upper(coords))

    G = quotient_by(upper, images)
    return GenusReport(t, k, upper, tuple(images), G, tuple(layout))

"""Brute-force ground truth.

Nothing in here relies on the structure results used elsewhere in the
package: unit groups are enumerated residue by residue and admissible pairs
are found by listing integer matrices in a box.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, lcm

import numpy as np

from .abgroup import FinAbGroup
from .genus import MatrixPair
from .intalg import IntMatrix, as_matrix

__all__ = [
    "OracleGuardError",
    "OracleReport",
    "brute_exponent",
    "brute_units_exponent",
    "brute_units_mod_pm1",
    "enum_det_pairs",
    "enum_units",
    "group_from_element_orders",
]

MAX_MODULUS = 10**6
MAX_GROUP_ORDER = 10**6
MAX_MATRICES_PER_SIDE = 4_000_000
MAX_PAIR_MODULUS = 62  # determinant residues are packed into int64 bitmasks


class OracleGuardError(ValueError):
    """The requested enumeration is larger than the oracle will attempt."""


def enum_units(t: int) -> set[int]:
    """Residues in ``[0, t)`` prime to ``t``; for ``t == 1`` the single class ``{0}``."""
    if t < 1 or t > MAX_MODULUS:
        raise OracleGuardError(f"modulus {t} outside [1, {MAX_MODULUS}]")
    return {u for u in range(t) if gcd(u, t) == 1}


def brute_units_exponent(t: int) -> int:
    """Smallest ``e >= 1`` with ``u**e == 1`` for every unit ``u`` mod ``t``.

    Every unit is raised to every candidate ``e``; by Lagrange only the
    divisors of the number of units need to be tried, in increasing order.
    """
    units = np.array(sorted(enum_units(t)), dtype=np.int64)
    if t <= 2:
        return 1
    n = len(units)
    for e in (d for d in range(1, n + 1) if n % d == 0):
        if (_vec_pow(units, e, t) == 1).all():
            return e
    raise AssertionError("unreachable: u**n == 1 for every unit")


def _vec_pow(base: np.ndarray, e: int, t: int) -> np.ndarray:
    out = np.ones_like(base)
    b = base % t
    while e:
        if e & 1:
            out = out * b % t
        b = b * b % t
        e >>= 1
    return out


def brute_exponent(G: FinAbGroup) -> int:
    """lcm of element orders, each found by adding the element to itself."""
    if G.free_rank:
        raise OracleGuardError("brute force needs a finite group")
    if G.order > MAX_GROUP_ORDER:
        raise OracleGuardError(f"group order {G.order} exceeds {MAX_GROUP_ORDER}")
    mods = G.invariant_factors
    out = 1
    for x in itertools.product(*(range(d) for d in mods)):
        k, y = 1, x
        while any(y):
            y = tuple((a + b) % d for a, b, d in zip(y, x, mods))
            k += 1
        out = lcm(out, k)
    return out


def group_from_element_orders(orders: list[int]) -> FinAbGroup:
    """Recover a finite abelian group from the multiset of its element orders.

    For each prime ``p`` the counts ``#{x : p^j x = 0}`` pin down the sizes
    of the cyclic ``p``-parts, which are then recombined into invariant
    factors.
    """
    n = len(orders)
    if n == 0:
        raise ValueError("a group has at least one element")
    if sum(1 for o in orders if o == 1) != 1:
        raise ValueError("exactly one element must have order 1")
    primes = sorted({p for o in orders for p in _primes(o)})
    parts: dict[int, list[int]] = {}
    for p in primes:
        # logs[j] = log_p #{x : p^j x = 0}
        logs = [0]
        while True:
            j = len(logs)
            logs.append(_ilog(sum(1 for o in orders if p**j % o == 0), p))
            if logs[-1] == logs[-2]:
                break
        # ge[j] = number of cyclic p-parts of order >= p^(j+1)
        ge = [b - a for a, b in zip(logs, logs[1:])] + [0]
        parts[p] = sorted(
            (p ** (j + 1) for j in range(len(ge) - 1) for _ in range(ge[j] - ge[j + 1])),
            reverse=True,
        )
    width = max((len(v) for v in parts.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for v in parts.values():
            if i < len(v):
                d *= v[i]
        factors.append(d)
    return FinAbGroup(0, tuple(reversed(factors)))


def _primes(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _ilog(n: int, p: int) -> int:
    k = 0
    while n > 1:
        if n % p:
            raise ArithmeticError(f"{n} is not a power of {p}")
        n //= p
        k += 1
    return k


def brute_units_mod_pm1(t: int) -> FinAbGroup:
    """``Z*_t / +-1`` by listing the classes ``{u, -u}`` and their orders."""
    units = sorted(enum_units(t))
    seen, orders = set(), []
    for u in units:
        if u in seen:
            continue
        seen |= {u, (-u) % t}
        k, x = 1, u % t
        while x not in (1 % t, (-1) % t):
            x = x * u % t
            k += 1
        orders.append(k)
    return group_from_element_orders(orders)


# -- admissible pairs in a box ---------------------------------------------------


@dataclass(frozen=True)
class OracleReport:
    modulus: int
    degree: int | None
    found_pairs: frozenset[tuple[int, ...]]
    box_bound: int
    witnesses: dict[tuple[int, ...], MatrixPair] = field(default_factory=dict, compare=False)


def _all_matrices(r: int, box: int) -> np.ndarray:
    if r == 0:
        return np.zeros((1, 0, 0), dtype=np.int64)
    vals = np.arange(-box, box + 1, dtype=np.int64)
    grids = np.meshgrid(*([vals] * (r * r)), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1).reshape(-1, r, r)


def _dets(A: np.ndarray) -> np.ndarray:
    r = A.shape[1]
    if r == 0:
        return np.ones(len(A), dtype=np.int64)
    if r == 1:
        return A[:, 0, 0]
    if r == 2:
        return A[:, 0, 0] * A[:, 1, 1] - A[:, 0, 1] * A[:, 1, 0]
    a = A
    return (
        a[:, 0, 0] * (a[:, 1, 1] * a[:, 2, 2] - a[:, 1, 2] * a[:, 2, 1])
        - a[:, 0, 1] * (a[:, 1, 0] * a[:, 2, 2] - a[:, 1, 2] * a[:, 2, 0])
        + a[:, 0, 2] * (a[:, 1, 0] * a[:, 2, 1] - a[:, 1, 1] * a[:, 2, 0])
    )


def enum_det_pairs(C, rank_X: int, rank_Y: int, t_hat: int, box: int | None = None, degree: int | None = None) -> OracleReport:
    """Determinant tuples mod ``t_hat`` of every admissible pair in ``[-box, box]``.

    Both ``A1`` and ``A2`` range over all integer matrices with entries in the
    box; a pair counts when ``A2 C == C A1`` holds exactly and both
    determinants are prime to ``t_hat``. The two sides are joined on the
    common value of ``C A1`` and ``A2 C``. Tuples list one determinant per
    side of nonzero rank (X first). ``box`` defaults to ``t_hat + 2``.
    """
    t = t_hat
    box = t + 2 if box is None else box
    if rank_X > 3 or rank_Y > 3:
        raise OracleGuardError(f"ranks ({rank_X}, {rank_Y}) exceed 3")
    if t < 1 or t > MAX_PAIR_MODULUS:
        raise OracleGuardError(f"modulus {t} outside [1, {MAX_PAIR_MODULUS}]")
    if box < 0:
        raise OracleGuardError("box must be nonnegative")
    for r in (rank_X, rank_Y):
        if (2 * box + 1) ** (r * r) > MAX_MATRICES_PER_SIDE:
            raise OracleGuardError(
                f"box {box} at rank {r} gives {(2 * box + 1) ** (r * r)} matrices "
                f"(limit {MAX_MATRICES_PER_SIDE})"
            )
    C = as_matrix(C) if C is not None else IntMatrix.zeros(rank_Y, rank_X)
    if C.shape != (rank_Y, rank_X):
        raise ValueError(f"C is {C.rows}x{C.cols}, expected {rank_Y}x{rank_X}")
    Cn = np.array(C.tolist(), dtype=np.int64).reshape(rank_Y, rank_X)

    is_unit = np.array([gcd(u, t) == 1 for u in range(t)])
    A1 = _all_matrices(rank_X, box)
    A2 = _all_matrices(rank_Y, box)
    d1 = _dets(A1) % t
    d2 = _dets(A2) % t
    keep1, keep2 = is_unit[d1], is_unit[d2]
    A1, d1 = A1[keep1], d1[keep1]
    A2, d2 = A2[keep2], d2[keep2]

    width = rank_Y * rank_X
    key1 = np.einsum("yx,nxz->nyz", Cn, A1).reshape(len(A1), width)
    key2 = np.einsum("nyw,wx->nyx", A2, Cn).reshape(len(A2), width)
    both = np.concatenate([key1, key2])
    # pack each key row into one integer (mixed radix) before grouping
    spans = [int(col.max() - col.min()) + 1 for col in both.T] if len(both) else []
    if np.prod([float(s) for s in spans]) < 2.0**62:
        code = np.zeros(len(both), dtype=np.int64)
        for col, span in zip(both.T, spans):
            code = code * span + (col - col.min())
        _, ids = np.unique(code, return_inverse=True)
    else:
        _, ids = np.unique(both, axis=0, return_inverse=True)
    ids = ids.ravel()
    id1, id2 = ids[: len(A1)], ids[len(A1):]

    def masks(key_ids, dets):
        order = np.argsort(key_ids, kind="stable")
        k, bits = key_ids[order], np.left_shift(np.int64(1), dets[order])
        if len(k) == 0:
            return k, bits
        starts = np.flatnonzero(np.r_[True, k[1:] != k[:-1]])
        return k[starts], np.bitwise_or.reduceat(bits, starts)

    k1, m1 = masks(id1, d1)
    k2, m2 = masks(id2, d2)
    common, i1, i2 = np.intersect1d(k1, k2, assume_unique=True, return_indices=True)
    combos = {(int(a), int(b)) for a, b in zip(m1[i1], m2[i2])}

    found: set[tuple[int, int]] = set()
    for a, b in combos:
        found |= {(u, v) for u in _bits(a) for v in _bits(b)}

    witnesses: dict[tuple[int, ...], MatrixPair] = {}
    for u, v in sorted(found):
        hit = np.flatnonzero(((m1[i1] >> u) & 1) & ((m2[i2] >> v) & 1))[0]
        key = common[hit]
        j1 = np.flatnonzero((id1 == key) & (d1 == u))[0]
        j2 = np.flatnonzero((id2 == key) & (d2 == v))[0]
        pair = MatrixPair(
            IntMatrix.from_rows(A1[j1].tolist(), rank_X),
            IntMatrix.from_rows(A2[j2].tolist(), rank_Y),
            degree,
        )
        witnesses[_project(u, v, rank_X, rank_Y)] = pair

    pairs = frozenset(_project(u, v, rank_X, rank_Y) for u, v in found)
    return OracleReport(t, degree, pairs, box, witnesses)


def _bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if (mask >> i) & 1]


def _project(u: int, v: int, rank_X: int, rank_Y: int) -> tuple[int, ...]:
    out = []
    if rank_X:
        out.append(u)
    if rank_Y:
        out.append(v)
    return tuple(out)

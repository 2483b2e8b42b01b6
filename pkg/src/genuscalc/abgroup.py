"""Finitely generated abelian groups in invariant-factor form.

A group is ``Z^free_rank + Z/d_1 + ... + Z/d_r`` with ``d_1 | d_2 | ... | d_r``.
Elements are written as integer coordinate vectors, torsion coordinates
first (in factor order) and free coordinates last.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, prod
from typing import Sequence

from .intalg import IntMatrix, smith_normal_form
from .ntheory import crt, factorize

__all__ = [
    "FinAbGroup",
    "InfiniteExponentError",
    "NonUnitError",
    "Projection",
    "UnitProjection",
    "UnitsPresentation",
    "cyclic_sum_map",
    "dlog",
    "exponent",
    "normalize",
    "quotient_by",
    "quotient_with_map",
    "units_group",
    "units_mod_pm1",
]


class InfiniteExponentError(ValueError):
    pass


class NonUnitError(ValueError):
    pass


@dataclass(frozen=True)
class FinAbGroup:
    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(d < 2 for d in factors):
            raise ValueError(f"invariant factors must be >= 2, got {factors}")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise ValueError(f"invariant factors {factors} are not a divisibility chain")

    @classmethod
    def trivial(cls) -> FinAbGroup:
        return cls()

    @classmethod
    def cyclic(cls, n: int) -> FinAbGroup:
        """``Z/n``; ``n == 0`` gives ``Z`` and ``n == 1`` the trivial group."""
        if n == 0:
            return cls(free_rank=1)
        return cls.from_cyclic_orders([n])

    @classmethod
    def from_cyclic_orders(cls, orders: Sequence[int]) -> FinAbGroup:
        """Normalize a direct sum of cyclic groups ``Z/n_i`` (``0`` meaning ``Z``)."""
        return cyclic_sum_map(orders).target

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def order(self) -> int:
        if self.free_rank:
            raise InfiniteExponentError("infinite group has no finite order")
        return prod(self.invariant_factors)

    @property
    def ngens(self) -> int:
        return len(self.invariant_factors) + self.free_rank

    @property
    def moduli(self) -> tuple[int, ...]:
        """Per-coordinate moduli, ``0`` standing for a free coordinate."""
        return self.invariant_factors + (0,) * self.free_rank

    def power(self, k: int) -> FinAbGroup:
        """Direct sum of ``k`` copies."""
        return FinAbGroup.from_cyclic_orders(list(self.moduli) * k)

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        if len(coords) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates, got {len(coords)}")
        return tuple(c % d if d else c for c, d in zip(coords, self.moduli))

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors]
        parts += ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def exponent(G: FinAbGroup) -> int:
    """Smallest ``n >= 1`` with ``n g = 0`` for all ``g``."""
    if G.free_rank:
        raise InfiniteExponentError(f"{G} has infinite exponent")
    return G.invariant_factors[-1] if G.invariant_factors else 1


@dataclass(frozen=True)
class Projection:
    """Linear map from source coordinates onto a normalized group's coordinates."""

    target: FinAbGroup
    matrix: IntMatrix  # source_ngens x target.ngens

    def __call__(self, coords: Sequence[int]) -> tuple[int, ...]:
        if len(coords) != self.matrix.rows:
            raise ValueError(f"expected {self.matrix.rows} coordinates, got {len(coords)}")
        cols = self.matrix.transpose().tolist()
        return self.target.reduce([sum(a * b for a, b in zip(coords, c)) for c in cols])


def _cokernel(relations: IntMatrix | Sequence[Sequence[int]], n_generators: int) -> Projection:
    if isinstance(relations, IntMatrix):
        R = relations
    else:
        R = IntMatrix.from_rows(relations, n_generators) if relations else IntMatrix.zeros(0, n_generators)
    if R.cols != n_generators:
        raise ValueError(f"relation matrix has {R.cols} columns, expected {n_generators}")
    snf = smith_normal_form(R)
    diag = snf.diagonal + [0] * (n_generators - min(R.shape))
    keep = [j for j, d in enumerate(diag) if d != 1]
    factors = tuple(diag[j] for j in keep if diag[j] != 0)
    free = sum(1 for j in keep if diag[j] == 0)
    V = snf.V.tolist()
    mat = IntMatrix.from_rows([[row[j] for j in keep] for row in V], len(keep))
    return Projection(FinAbGroup(free, factors), mat)


def normalize(relations: IntMatrix | Sequence[Sequence[int]], n_generators: int) -> FinAbGroup:
    """Group on ``n_generators`` generators subject to the rows of ``relations``."""
    return _cokernel(relations, n_generators).target


def cyclic_sum_map(orders: Sequence[int]) -> Projection:
    """Normalize ``Z/n_1 + ... + Z/n_k`` (``0`` meaning ``Z``), keeping the coordinate map."""
    n = len(orders)
    return _cokernel(IntMatrix.diag(list(orders), n, n), n)


def quotient_with_map(G: FinAbGroup, gens: Sequence[Sequence[int]]) -> Projection:
    n = G.ngens
    for g in gens:
        if len(g) != n:
            raise ValueError(f"generator {list(g)} has {len(g)} coordinates, {G} needs {n}")
    rels = [[d if i == j else 0 for j in range(n)] for i, d in enumerate(G.invariant_factors)]
    rels += [list(g) for g in gens]
    return _cokernel(rels, n)


def quotient_by(G: FinAbGroup, gens: Sequence[Sequence[int]]) -> FinAbGroup:
    """``G`` modulo the subgroup generated by ``gens`` (coordinate vectors)."""
    return quotient_with_map(G, gens).target


# -- units modulo t ---------------------------------------------------------


def _has_order(g: int, n: int, m: int) -> bool:
    """True when ``g`` has multiplicative order exactly ``n`` modulo ``m``."""
    if pow(g, n, m) != 1 % m:
        return False
    return all(pow(g, n // ell, m) != 1 % m for ell in factorize(n))


@dataclass(frozen=True)
class _Component:
    """Cyclic subgroup of Z*_q (q a prime power) with its generator."""

    q: int
    generator: int
    order: int
    kind: str = "cyclic"  # "sign" marks the -1 factor of Z*_{2^a}, a >= 3


def _primary_components(q: int, p: int, a: int) -> list[_Component]:
    if p != 2:
        phi = q // p * (p - 1)
        # smallest primitive root
        g = next(g for g in range(2, q) if g % p and _has_order(g, phi, q))
        return [_Component(q, g, phi)]
    if a == 1:
        return []
    if a == 2:
        return [_Component(q, 3, 2)]
    big = 2 ** (a - 2)
    g = next(
        g for g in range(3, q, 2)
        if _has_order(g, big, q) and pow(g, big // 2, q) != q - 1
    )
    return [_Component(q, q - 1, 2, "sign"), _Component(q, g, big)]


@dataclass(frozen=True)
class UnitsPresentation:
    """``Z*_modulus`` with one generator per invariant factor."""

    modulus: int
    group: FinAbGroup
    generators: tuple[int, ...]
    _components: tuple[_Component, ...] = field(default=(), repr=False, compare=False)
    # per invariant factor: tuple of (component index, prime, prime power)
    _layout: tuple[tuple[tuple[int, int, int], ...], ...] = field(default=(), repr=False, compare=False)

    def element(self, coords: Sequence[int]) -> int:
        """Product of generators raised to ``coords``."""
        out = 1 % self.modulus
        for g, d, e in zip(self.generators, self.group.invariant_factors, coords):
            out = out * pow(g, e % d, self.modulus) % self.modulus
        return out


@lru_cache(maxsize=256)
def units_group(t: int) -> UnitsPresentation:
    """Invariant-factor presentation of the unit group modulo ``t``."""
    if t < 1:
        raise ValueError(f"modulus must be >= 1, got {t}")
    comps: list[_Component] = []
    for p, a in sorted(factorize(t).items()):
        comps += _primary_components(p**a, p, a)

    # split every component into its prime-power-order pieces
    by_prime: dict[int, list[tuple[int, int, int]]] = {}
    lifted: list[int] = []
    for ci, c in enumerate(comps):
        lifted.append(crt([c.generator, 1], [c.q, t // c.q]) if t > c.q else c.generator)
        for ell, b in factorize(c.order).items():
            by_prime.setdefault(ell, []).append((ci, ell, b))
    for pieces in by_prime.values():
        pieces.sort(key=lambda x: -x[2])
    width = max((len(v) for v in by_prime.values()), default=0)

    factors, gens, layout = [], [], []
    for i in range(width):
        slot = tuple(v[i] for _, v in sorted(by_prime.items()) if i < len(v))
        d, g = 1, 1 % t
        for ci, ell, b in slot:
            o = comps[ci].order
            d *= ell**b
            g = g * pow(lifted[ci], o // ell**b, t) % t
        factors.append(d)
        gens.append(g)
        layout.append(slot)
    factors.reverse(), gens.reverse(), layout.reverse()
    return UnitsPresentation(
        modulus=t,
        group=FinAbGroup(0, tuple(factors)),
        generators=tuple(gens),
        _components=tuple(comps),
        _layout=tuple(layout),
    )


def dlog(u: int, P: UnitsPresentation) -> tuple[int, ...]:
    """Exponent vector ``e`` with ``prod(g_i ** e_i) == u (mod P.modulus)``.

    Solved by exhaustive search inside each cyclic prime-power component,
    then reassembled on the invariant factors by CRT.
    """
    t = P.modulus
    if gcd(u, t) != 1:
        raise NonUnitError(f"{u} is not a unit modulo {t}")
    comps = P._components
    comp_exp: list[int] = [0] * len(comps)
    ci = 0
    while ci < len(comps):
        c = comps[ci]
        target = u % c.q
        if c.kind == "sign":
            # Z*_{2^a} = <-1> x <g>: try both signs against the partner
            partner = comps[ci + 1]
            for s in (0, 1):
                e = _cyclic_log(target * pow(c.generator, s, c.q) % c.q,
                                partner.generator, partner.order, c.q)
                if e is not None:
                    comp_exp[ci], comp_exp[ci + 1] = s, e
                    break
            else:
                raise ArithmeticError(f"dlog failed for {u} mod {t}")
            ci += 2
            continue
        e = _cyclic_log(target, c.generator, c.order, c.q)
        if e is None:
            raise ArithmeticError(f"dlog failed for {u} mod {t}")
        comp_exp[ci] = e
        ci += 1

    coords = []
    for slot in P._layout:
        residues, moduli = [], []
        for ci, ell, b in slot:
            pb = ell**b
            residues.append(comp_exp[ci] * pow(comps[ci].order // pb, -1, pb) % pb)
            moduli.append(pb)
        coords.append(crt(residues, moduli))
    return tuple(coords)


def _cyclic_log(target: int, g: int, order: int, q: int) -> int | None:
    x = 1 % q
    for e in range(order):
        if x == target:
            return e
        x = x * g % q
    return None


def units_mod_pm1(t: int) -> tuple[FinAbGroup, UnitProjection]:
    """``Z*_t / {+1, -1}`` and the map sending a unit residue to its class."""
    P = units_group(t)
    minus_one = dlog(t - 1 if t > 1 else 0, P)
    proj = quotient_with_map(P.group, [minus_one])
    return proj.target, UnitProjection(P, proj)


@dataclass(frozen=True)
class UnitProjection:
    units: UnitsPresentation
    projection: Projection

    def __call__(self, u: int) -> tuple[int, ...]:
        return self.projection(dlog(u, self.units))

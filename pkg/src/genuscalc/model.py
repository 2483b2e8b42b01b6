"""Graded algebraic models of spaces and maps, and the numerical invariants
derived from them (``t_n``, ``t``, ``s_n``, ``N``, ``l``, ``t_hat`` and ``k``).

A space is described degree by degree. Each :class:`DegreeData` carries the
rank of the rational part in that degree together with three exponents:
``ker_exp`` and ``coker_exp`` of the Hurewicz comparison map in that degree,
and ``torsion_exp`` of the torsion group feeding ``s_n``. Degrees that are
not listed have rank 0 and all exponents 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import prod
from typing import Mapping

from .intalg import IntMatrix, as_matrix, determinant

__all__ = [
    "DegreeData",
    "DegreeKind",
    "MapModel",
    "ModelError",
    "SpaceModel",
    "degree_kind",
    "k_of",
    "l_count",
    "s_n",
    "t_hat",
    "t_n",
    "t_total",
    "top_degree",
]

FLAVORS = ("H", "coH")

class ModelError(ValueError):
    """Invalid model data. ``where`` names the offending field when known."""

    def __init__(self, message: str, where: str | None = None, degree: int | None = None):
        self.where = where
        self.degree = degree
        prefix = []
        if where:
            prefix.append(where)
        if degree is not None:
            prefix.append(f"degree {degree}")
        super().__init__(f"{', '.join(prefix)}: {message}" if prefix else message)

@dataclass(frozen=True)
class DegreeData:
    degree: int
    rank: int = 0
    ker_exp: int = 1
    coker_exp: int = 1
    torsion_exp: int = 1

    def __post_init__(self):
        if self.degree < 1:
            raise ModelError(f"degree must be positive, got {self.degree}", "n")
        if self.rank < 0:
            raise ModelError(f"rank must be >= 0, got {self.rank}", "rank", self.degree)
        for name in ("ker_exp", "coker_exp", "torsion_exp"):
            if getattr(self, name) < 1:
                raise ModelError(f"{name} must be >= 1, got {getattr(self, name)}", name, self.degree)

@dataclass(frozen=True)
class SpaceModel:
    flavor: str = "H"
    degrees: Mapping[int, DegreeData] = field(default_factory=dict)

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ModelError(f"flavor must be one of {FLAVORS}, got {self.flavor!r}", "flavor")
        degs = dict(self.degrees)
        for n, d in degs.items():
            if n != d.degree:
                raise ModelError(f"keyed under {n} but records degree {d.degree}", "degrees", n)
        object.__setattr__(self, "degrees", dict(sorted(degs.items())))

    @classmethod
    def from_records(cls, flavor: str, records) -> SpaceModel:
        degs: dict[int, DegreeData] = {}
        for r in records:
            d = r if isinstance(r, DegreeData) else DegreeData(**r)
            if d.degree in degs:
                raise ModelError("duplicate degree", "degrees", d.degree)
            degs[d.degree] = d
        return cls(flavor, degs)

    def at(self, n: int) -> DegreeData:
        return self.degrees.get(n) or DegreeData(n)

    def rank(self, n: int) -> int:
        return self.at(n).rank

def top_degree(S: SpaceModel) -> int:
    """``N``: the largest degree present, 0 for an empty model."""
    return max(S.degrees, default=0)

def t_n(S: SpaceModel, n: int) -> int:
    """``coker_exp`` in degree ``n + 1`` times ``ker_exp`` in degree ``n``."""
    if n < 1:
        raise ModelError(f"degree must be positive, got {n}")
    return S.at(n + 1).coker_exp * S.at(n).ker_exp

def t_total(S: SpaceModel) -> int:
    return prod(t_n(S, n) for n in range(1, top_degree(S) + 1))

def s_n(S: SpaceModel, n: int) -> int:
    d = S.at(n)
    return d.torsion_exp if d.rank > 0 else 1

def l_count(S: SpaceModel) -> int:
    """Number of degrees carrying a nonzero rational part."""
    return sum(1 for d in S.degrees.values() if d.rank > 0)

class DegreeKind(str, Enum):
    """How a single degree enters the determinant coordinates."""

    NONE = "none"  # both ranks zero
    X_ONLY = "x_only"
    Y_ONLY = "y_only"
    ISO = "iso"  # square C with nonzero determinant
    FULL = "full"

    @property
    def arity(self) -> int:
        return {"none": 0, "x_only": 1, "y_only": 1, "iso": 1, "full": 2}[self.value]

@dataclass(frozen=True)
class MapModel:
    X: SpaceModel
    Y: SpaceModel
    C: Mapping[int, IntMatrix] = field(default_factory=dict)

    def __post_init__(self):
        if self.X.flavor != self.Y.flavor:
            raise ModelError(
                f"X is {self.X.flavor} but Y is {self.Y.flavor}", "flavor"
            )
        mats = {n: as_matrix(c) for n, c in self.C.items()}
        for n, c in mats.items():
            rx, ry = self.X.rank(n), self.Y.rank(n)
            if rx * ry == 0:
                raise ModelError(
                    f"matrix given but ranks are (X={rx}, Y={ry})", "C", n
                )
            if c.shape != (ry, rx):
                raise ModelError(
                    f"matrix is {c.rows}x{c.cols}, expected {ry}x{rx} (rank_Y x rank_X)",
                    "C",
                    n,
                )
        for n in self.degrees():
            if self.X.rank(n) * self.Y.rank(n) > 0 and n not in mats:
                raise ModelError("both ranks nonzero but no matrix given", "C", n)
        object.__setattr__(self, "C", dict(sorted(mats.items())))

    @property
    def flavor(self) -> str:
        return self.X.flavor

    def degrees(self) -> list[int]:
        return sorted(set(self.X.degrees) | set(self.Y.degrees))

    def matrix(self, n: int) -> IntMatrix:
        """``C_n``, with the empty ``rank_Y x rank_X`` shape when one rank is 0."""
        if n in self.C:
            return self.C[n]
        return IntMatrix.zeros(self.Y.rank(n), self.X.rank(n))

def degree_kind(M: MapModel, n: int) -> DegreeKind:
    rx, ry = M.X.rank(n), M.Y.rank(n)
    if rx == 0 and ry == 0:
        return DegreeKind.NONE
    if ry == 0:
        return DegreeKind.X_ONLY
    if rx == 0:
        return DegreeKind.Y_ONLY
    C = M.C[n]
    if C.is_square and determinant(C) != 0:
        return DegreeKind.ISO
    return DegreeKind.FULL

def k_of(M: MapModel) -> int:
    """Number of determinant coordinates, summed degree by degree."""
    return sum(degree_kind(M, n).arity for n in M.degrees())

def t_hat(M: MapModel) -> int:
    top = max(top_degree(M.X), top_degree(M.Y))
    s_terms = prod(s_n(M.X, n) * s_n(M.Y, n) for n in range(1, top + 1))
    return t_total(M.X) * t_total(M.Y) ** 2 * s_terms

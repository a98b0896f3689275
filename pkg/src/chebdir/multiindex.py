"""Multi-index arithmetic and the graded monomial order used everywhere else.

The order is graded by total degree; ties within a degree go to the index
with the larger exponent at the highest-index variable, so pure powers of
the first variable open each degree block.  For d = 2 the sequence starts

    (0,0) | (1,0) (0,1) | (2,0) (1,1) (0,2) | (3,0) (2,1) (1,2) (0,3) | ...
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

# enumerate_upto refuses bases larger than this (memory guard, not a math limit)
MAX_BASIS_SIZE = 20_000_000

_BOUNDARY_EPS = 1e-12


@dataclass(frozen=True)
class MultiIndex:
    """Exponent vector of a monomial z^alpha."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if not exps:
            raise ValueError("empty exponent vector")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        object.__setattr__(self, "exponents", exps)

    @property
    def dim(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def tail(self) -> "MultiIndex":
        """Sub-index over variables 2..d."""
        if self.dim < 2:
            raise ValueError("tail requires dim >= 2")
        return MultiIndex(self.exponents[1:])

    def sort_key(self) -> tuple:
        # graded first; within a degree, reversed-lex makes the index with the
        # larger exponent at the highest-index variable the larger one
        return (self.degree, self.exponents[::-1])

    def _check_dim(self, other: "MultiIndex") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __lt__(self, other: "MultiIndex") -> bool:
        self._check_dim(other)
        return self.sort_key() < other.sort_key()

    def __le__(self, other: "MultiIndex") -> bool:
        self._check_dim(other)
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other: "MultiIndex") -> bool:
        return not self.__le__(other)

    def __ge__(self, other: "MultiIndex") -> bool:
        return not self.__lt__(other)

    def __repr__(self) -> str:
        return f"MultiIndex{self.exponents}"


def as_multiindex(alpha) -> MultiIndex:
    """Coerce a MultiIndex, tuple or list of ints into a MultiIndex."""
    if isinstance(alpha, MultiIndex):
        return alpha
    if isinstance(alpha, int):
        return MultiIndex((alpha,))
    return MultiIndex(tuple(alpha))


def compare(alpha, beta) -> int:
    """Three-way comparison under the monomial order.

    Returns -1, 0 or 1 for alpha before / equal to / after beta.
    """
    a, b = as_multiindex(alpha), as_multiindex(beta)
    a._check_dim(b)
    ka, kb = a.sort_key(), b.sort_key()
    return -1 if ka < kb else (0 if ka == kb else 1)


@dataclass(frozen=True)
class Direction:
    """Point of the standard simplex: nonnegative coordinates summing to 1."""

    coordinates: tuple[float, ...]

    def __post_init__(self):
        coords = tuple(float(c) for c in self.coordinates)
        if not coords:
            raise ValueError("empty direction")
        if any(c < -_BOUNDARY_EPS or c > 1 + _BOUNDARY_EPS for c in coords):
            raise ValueError(f"coordinates must lie in [0, 1]: {coords}")
        if abs(sum(coords) - 1.0) > 1e-9:
            raise ValueError(f"coordinates must sum to 1: sum={sum(coords)!r}")
        object.__setattr__(self, "coordinates", coords)

    @property
    def dim(self) -> int:
        return len(self.coordinates)

    @property
    def is_boundary(self) -> bool:
        """True when some coordinate is 0 or 1 (up to numerical fuzz)."""
        return any(c <= _BOUNDARY_EPS or c >= 1 - _BOUNDARY_EPS for c in self.coordinates)

    @property
    def tail_norm(self) -> float:
        """Sum of coordinates 2..d."""
        return float(sum(self.coordinates[1:]))


def as_direction(theta) -> Direction:
    if isinstance(theta, Direction):
        return theta
    return Direction(tuple(theta))


def enumerate_upto(n: int, d: int) -> tuple[list[MultiIndex], int, int]:
    """All multi-indices of degree <= n in d variables, sorted by the order.

    Returns (basis, d_n, l_n) where d_n = C(n+d, d) is the basis size and
    l_n is the sum of the degrees of the basis elements.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if d < 1:
        raise ValueError("dimension must be at least 1")
    d_n = math.comb(n + d, d)
    if d_n > MAX_BASIS_SIZE:
        raise OverflowError(f"basis size {d_n} exceeds the configured cap {MAX_BASIS_SIZE}")
    idxs = [MultiIndex(e) for e in product(range(n + 1), repeat=d) if sum(e) <= n]
    idxs.sort(key=MultiIndex.sort_key)
    assert len(idxs) == d_n
    l_n = sum(ix.degree for ix in idxs)
    return idxs, d_n, l_n


def basis_below(alpha, homogeneous_only: bool = False) -> list[MultiIndex]:
    """All multi-indices strictly before alpha in the order.

    With homogeneous_only, only indices of the same total degree are kept.
    """
    a = as_multiindex(alpha)
    key = a.sort_key()
    out = []
    for beta in enumerate_upto(a.degree, a.dim)[0]:
        if beta.sort_key() >= key:
            break
        if homogeneous_only and beta.degree != a.degree:
            continue
        out.append(beta)
    return out


def largest_remainder(theta, j: int) -> MultiIndex:
    """Round j * theta to a multi-index with entry sum exactly j.

    Entries start at floor(j * theta_i); the deficit is assigned one unit at
    a time by descending remainder, ties to the lowest coordinate index.
    """
    th = as_direction(theta)
    if j < 1:
        raise ValueError("j must be at least 1")
    ideal = [j * c for c in th.coordinates]
    base = [math.floor(x) for x in ideal]
    deficit = j - sum(base)
    order = sorted(range(th.dim), key=lambda i: (-(ideal[i] - base[i]), i))
    for i in order[:deficit]:
        base[i] += 1
    return MultiIndex(tuple(base))


def direction_sequence(theta, j_max: int) -> list[MultiIndex]:
    """Multi-index sequence alpha(j), |alpha(j)| = j, with alpha(j)/j -> theta."""
    th = as_direction(theta)
    if j_max < 1:
        raise ValueError("j_max must be at least 1")
    return [largest_remainder(th, j) for j in range(1, j_max + 1)]

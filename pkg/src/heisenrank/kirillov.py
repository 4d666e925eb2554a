"""Coadjoint orbits of the nilradical.

For a functional ``lam`` on the algebra, the orbit through ``lam`` has
dimension ``rank B_lam`` where ``B_lam[i][j] = lam([e_i, e_j])``.  Ranks are
computed exactly; floating point only appears in :func:`float_orbit_dimension`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import exact
from .chevalley import LayerDecomposition, NilpotentLieAlgebra
from .tower import HeisenbergTower, layer_dims


class KirillovError(ValueError):
    pass


@dataclass(frozen=True)
class LinearFunctional:
    coeffs: tuple[Fraction, ...]

    @classmethod
    def of(cls, values: Sequence) -> "LinearFunctional":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def zero(cls, dim: int) -> "LinearFunctional":
        return cls((Fraction(0),) * dim)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "LinearFunctional") -> "LinearFunctional":
        return LinearFunctional(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scaled(self, t) -> "LinearFunctional":
        return LinearFunctional(tuple(t * a for a in self.coeffs))

    def __call__(self, x: Sequence) -> Fraction:
        return sum((a * b for a, b in zip(self.coeffs, x) if a and b), Fraction(0))


def _check(L: NilpotentLieAlgebra, lam: LinearFunctional) -> None:
    if len(lam) != L.dim:
        raise KirillovError(f"functional has length {len(lam)}, algebra has dimension {L.dim}")


def skew_form(L: NilpotentLieAlgebra, lam: LinearFunctional) -> list[list[Fraction]]:
    _check(L, lam)
    n = L.dim
    m = [[Fraction(0)] * n for _ in range(n)]
    coeffs = lam.coeffs
    for (i, j), (k, c) in L.constants.items():
        if coeffs[k]:
            m[i][j] = coeffs[k] * c
    return m


def orbit_dimension(L: NilpotentLieAlgebra, lam: LinearFunctional) -> int:
    return exact.rank(skew_form(L, lam))


def stabilizer_dimension(L: NilpotentLieAlgebra, lam: LinearFunctional) -> int:
    return L.dim - orbit_dimension(L, lam)


def float_orbit_dimension(L: NilpotentLieAlgebra, lam: LinearFunctional, rel_tol: float = 1e-8) -> int:
    return exact.float_rank(skew_form(L, lam), rel_tol)


def rankable_functional(
    L: NilpotentLieAlgebra, D: LayerDecomposition, d: int, scalars: Sequence
) -> LinearFunctional:
    """Functional with the given nonzero values on the first ``d`` layer centers."""
    if not 1 <= d <= D.r:
        raise KirillovError(f"rank d={d} outside 1..{D.r}")
    if len(scalars) != d:
        raise KirillovError(f"expected {d} scalars, got {len(scalars)}")
    coeffs = [Fraction(0)] * L.dim
    for i, s in enumerate(scalars, start=1):
        s = Fraction(s)
        if s == 0:
            raise KirillovError("central character must be nontrivial (zero scalar)")
        coeffs[D.center(i)] = s
    return LinearFunctional(tuple(coeffs))


def rank_threshold(tower: HeisenbergTower, d: int) -> int:
    """Largest orbit dimension in the closed stratum of rank ``d``."""
    if not 0 <= d <= tower.r:
        raise KirillovError(f"d={d} outside 0..{tower.r}")
    return sum(layer_dims(tower)[:d]) - d


def classify_rank(L: NilpotentLieAlgebra, tower: HeisenbergTower, lam: LinearFunctional) -> int:
    """Smallest ``d`` whose threshold bounds the orbit dimension of ``lam``."""
    dim = orbit_dimension(L, lam)
    for d in range(tower.r + 1):
        if dim <= rank_threshold(tower, d):
            return d
    raise KirillovError(
        f"orbit dimension {dim} exceeds the top threshold {rank_threshold(tower, tower.r)}"
    )


def _common_denominator(values: Sequence[Fraction]) -> int:
    den = 1
    for v in values:
        den = den * v.denominator // gcd(den, v.denominator)
    return den


def coadjoint_action(L: NilpotentLieAlgebra, x: Sequence, lam: LinearFunctional) -> LinearFunctional:
    """``lam o exp(-ad x)``; the series stops once the nilpotent terms vanish.

    Runs in integers: with ``x = X / p`` and ``lam = l / q`` the m-th term is
    ``l (-ad X)^m / (q m! p^m)``.
    """
    _check(L, lam)
    if len(x) != L.dim:
        raise KirillovError(f"element has length {len(x)}, algebra has dimension {L.dim}")
    xs = [Fraction(v) for v in x]
    p = _common_denominator(xs)
    q = _common_denominator(lam.coeffs)
    ad = L.ad_matrix([int(v * p) for v in xs])
    n = L.dim
    cols = [[(k, -row[j]) for k, row in enumerate(ad) if row[j]] for j in range(n)]
    term = [int(c * q) for c in lam.coeffs]
    total = [Fraction(t) for t in term]
    scale = 1
    m = 0
    while any(term):
        m += 1
        if m > n:
            raise AssertionError("ad x is not nilpotent")
        term = [sum(term[k] * v for k, v in cols[j] if term[k]) for j in range(n)]
        scale *= m * p
        total = [a + Fraction(b, scale) if b else a for a, b in zip(total, term)]
    return LinearFunctional(tuple(a / q for a in total))

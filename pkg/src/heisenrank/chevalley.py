"""Chevalley structure constants and the nilradical of the rank parabolic.

Signs come from extraspecial pairs relative to the height-then-lex order on
positive roots: the constant on each extraspecial pair is ``+(p + 1)`` and
every other constant follows from Chevalley's relations

    N(a, b) = -N(b, a)
    N(-a, -b) = -N(a, b)
    N(a, b) / (c, c) = N(b, c) / (a, a) = N(c, a) / (b, b)      if a + b + c = 0
    sum over the three pairings of a four-term zero sum          (see _positive_n)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .rootsys import (
    DynkinType,
    Root,
    RootSystem,
    add,
    is_positive,
    neg,
    order_key,
    sub,
)
from .exact import rank
from .tower import HeisenbergTower, build_tower


class ChevalleyBasis:
    """Structure constants ``N(a, b)`` for all pairs of roots of ``phi``."""

    def __init__(self, phi: RootSystem) -> None:
        self.phi = phi
        self._roots = phi.roots
        self._memo: dict[tuple[Root, Root], int] = {}
        self._extraspecial: dict[Root, tuple[Root, Root]] = {}
        pos = phi.positives
        posset = set(pos)
        for xi in pos:
            for a in pos:
                if order_key(a) >= order_key(xi):
                    break
                if sub(xi, a) in posset:
                    self._extraspecial[xi] = (a, sub(xi, a))
                    break

    def string_p(self, a: Root, b: Root) -> int:
        """Largest ``k`` with ``b - k a`` a root."""
        k, cur = 0, sub(b, a)
        while cur in self._roots:
            k += 1
            cur = sub(cur, a)
        return k

    def extraspecial(self, xi: Root) -> tuple[Root, Root] | None:
        return self._extraspecial.get(xi)

    def n(self, a: Root, b: Root) -> int:
        """``N(a, b)`` with ``[e_a, e_b] = N(a, b) e_{a+b}``; zero if ``a + b`` is not a root."""
        s = add(a, b)
        if s not in self._roots:
            return 0
        key = (a, b)
        val = self._memo.get(key)
        if val is None:
            val = self._compute(a, b, s)
            self._memo[key] = val
        return val

    def _compute(self, a: Root, b: Root, s: Root) -> int:
        pa, pb = is_positive(a), is_positive(b)
        if pa and pb:
            return self._positive_n(a, b, s)
        if not pa and not pb:
            return -self.n(neg(a), neg(b))
        # a + b + c = 0 with mixed signs: one of (b, c), (c, a) is same-signed
        c = neg(s)
        q = self.phi.norm2
        if is_positive(c) == pb:
            v = q(c) / q(a) * self.n(b, c)
        else:
            v = q(c) / q(b) * self.n(c, a)
        assert v.denominator == 1
        return int(v)

    def _positive_n(self, a: Root, b: Root, s: Root) -> int:
        if order_key(a) > order_key(b):
            return -self.n(b, a)
        g, d = self._extraspecial[s]
        if a == g:
            return self.string_p(g, d) + 1
        # four-term relation for a + b + (-g) + (-d) = 0
        q = self.phi.norm2
        mg, md = neg(g), neg(d)
        total = Fraction(0)
        bg = sub(b, g)
        if bg in self._roots:
            total += Fraction(self.n(b, mg) * self.n(a, md)) / q(bg)
        ag = sub(a, g)
        if ag in self._roots:
            total += Fraction(self.n(mg, a) * self.n(b, md)) / q(ag)
        n_gd = -(self.string_p(g, d) + 1)  # N(-g, -d)
        v = -total * q(s) / n_gd
        assert v.denominator == 1, (a, b, v)
        return int(v)


@dataclass
class NilpotentLieAlgebra:
    """Lie algebra on basis ``e_0 .. e_{dim-1}`` indexed by roots.

    ``constants[(i, j)] = (k, N)`` encodes ``[e_i, e_j] = N e_k``; absent
    pairs bracket to zero.  Both ``(i, j)`` and ``(j, i)`` are stored.
    """

    basis_roots: list[Root]
    constants: dict[tuple[int, int], tuple[int, int]]
    index: dict[Root, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.index = {r: i for i, r in enumerate(self.basis_roots)}

    @property
    def dim(self) -> int:
        return len(self.basis_roots)

    def with_constant(self, i: int, j: int, value: int) -> "NilpotentLieAlgebra":
        """Copy with ``[e_i, e_j]`` rescaled to ``value`` (only ``(i, j)``, not ``(j, i)``)."""
        consts = dict(self.constants)
        k, _ = consts[(i, j)]
        consts[(i, j)] = (k, value)
        return NilpotentLieAlgebra(list(self.basis_roots), consts)

    def ad_matrix(self, x: Sequence) -> list[list]:
        """Matrix ``M`` of ``ad x``: ``M[k][j]`` is the ``e_k`` coefficient of ``[x, e_j]``."""
        n = self.dim
        m = [[0] * n for _ in range(n)]
        for (i, j), (k, c) in self.constants.items():
            if x[i]:
                m[k][j] += x[i] * c
        return m


def bracket(L: NilpotentLieAlgebra, x: Sequence, y: Sequence) -> list:
    if len(x) != L.dim or len(y) != L.dim:
        raise ValueError(f"vectors must have length {L.dim}")
    out = [Fraction(0)] * L.dim
    for (i, j), (k, c) in L.constants.items():
        xi = x[i]
        if xi:
            yj = y[j]
            if yj:
                out[k] += xi * yj * c
    return out


@dataclass(frozen=True)
class LayerDecomposition:
    """Basis indices of each Heisenberg layer and of its center (1-based layers in the API)."""

    layers: tuple[tuple[int, ...], ...]
    centers: tuple[int, ...]

    def layer(self, d: int) -> tuple[int, ...]:
        return self.layers[d - 1]

    def center(self, d: int) -> int:
        return self.centers[d - 1]

    @property
    def r(self) -> int:
        return len(self.layers)


def nilradical_roots(tower: HeisenbergTower) -> list[Root]:
    """Positive roots with a positive coefficient on some simple root in Gamma."""
    gamma_idx = [i - 1 for i in tower.gamma_indices]
    return [r for r in tower.root_system.positives if any(r[i] > 0 for i in gamma_idx)]


def algebra_from_roots(roots: Sequence[Root], chev: ChevalleyBasis) -> NilpotentLieAlgebra:
    roots = list(roots)
    index = {r: i for i, r in enumerate(roots)}
    consts: dict[tuple[int, int], tuple[int, int]] = {}
    for i, j in combinations(range(len(roots)), 2):
        s = add(roots[i], roots[j])
        k = index.get(s)
        if k is None:
            if s in chev.phi.roots:
                raise ValueError(f"root set not closed: {roots[i]} + {roots[j]}")
            continue
        c = chev.n(roots[i], roots[j])
        consts[(i, j)] = (k, c)
        consts[(j, i)] = (k, -c)
    return NilpotentLieAlgebra(roots, consts)


def build_nilradical(
    t: DynkinType | HeisenbergTower,
) -> tuple[NilpotentLieAlgebra, LayerDecomposition]:
    tower = t if isinstance(t, HeisenbergTower) else build_tower(t)
    chev = ChevalleyBasis(tower.root_system)
    L = algebra_from_roots(nilradical_roots(tower), chev)
    layers = []
    for step in tower.steps:
        layers.append(tuple(sorted(L.index[a] for a in step.layer)))
    seen = [i for lay in layers for i in lay]
    if len(seen) != len(set(seen)) or len(seen) != L.dim:
        raise AssertionError("Heisenberg layers do not partition the nilradical")
    centers = tuple(L.index[s.highest] for s in tower.steps)
    return L, LayerDecomposition(tuple(layers), centers)


def abelian_algebra(dim: int) -> NilpotentLieAlgebra:
    """Abelian algebra with placeholder basis labels, for negative controls."""
    return NilpotentLieAlgebra([(i + 1,) for i in range(dim)], {})


@dataclass
class Report:
    """Outcome of a structural check; ``violations`` holds readable diagnostics."""

    check: str
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.passed


def verify_heisenberg(L: NilpotentLieAlgebra, D: LayerDecomposition, d: int) -> Report:
    """Layer ``d`` is two-step nilpotent with 1-dim center and symplectic quotient."""
    rep = Report(f"heisenberg[{d}]")
    layer = D.layer(d)
    z = D.center(d)
    for i in layer:
        for j in layer:
            hit = L.constants.get((i, j))
            if hit and hit[0] != z:
                rep.violations.append(f"[e{i}, e{j}] lands on e{hit[0]}, outside the center e{z}")
    # center of the layer subalgebra: common kernel of ad e_j, j in the layer
    eqs: dict[tuple[int, int], list[int]] = {}
    for col, i in enumerate(layer):
        for j in layer:
            hit = L.constants.get((i, j))
            if hit and hit[1]:
                eqs.setdefault((j, hit[0]), [0] * len(layer))[col] = hit[1]
    center_dim = len(layer) - rank(list(eqs.values()))
    if center_dim != 1:
        rep.violations.append(f"center of layer {d} has dimension {center_dim}, expected 1")
    if any(L.constants.get((z, j)) for j in layer):
        rep.violations.append(f"declared center e{z} does not commute with its layer")
    sym = [i for i in layer if i != z]
    omega = [[L.constants[(i, j)][1] if (i, j) in L.constants else 0 for j in sym] for i in sym]
    w_rank = rank(omega) if sym else 0
    if w_rank != len(sym) or not sym:
        rep.violations.append(
            f"induced form on layer {d} / center has rank {w_rank} on a {len(sym)}-dim space"
        )
    return rep


def verify_tower_action(L: NilpotentLieAlgebra, D: LayerDecomposition, n: int) -> Report:
    """Higher layers bracket layer ``n`` into itself and kill its center."""
    rep = Report(f"tower_action[{n}]")
    members = set(D.layer(n))
    z = D.center(n)
    for m in range(n + 1, D.r + 1):
        for x in D.layer(m):
            for y in D.layer(n):
                hit = L.constants.get((x, y))
                if hit and hit[0] not in members:
                    rep.violations.append(f"[e{x}, e{y}] = e{hit[0]} leaves layer {n}")
            if L.constants.get((x, z)):
                rep.violations.append(f"e{x} from layer {m} moves the center e{z} of layer {n}")
    return rep


def verify_jacobi(L: NilpotentLieAlgebra) -> bool:
    """Brute-force Jacobi identity over all triples of basis vectors.

    Reads ``constants`` as given (no antisymmetry assumed), so corrupted
    tables are caught.
    """
    consts = L.constants
    n = L.dim
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            for k in range(n):
                if k == i or k == j:
                    continue
                acc: dict[int, int] = {}
                for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = consts.get((x, y))
                    if inner and inner[1]:
                        outer = consts.get((inner[0], z))
                        if outer and outer[1]:
                            acc[outer[0]] = acc.get(outer[0], 0) + inner[1] * outer[1]
                if any(acc.values()):
                    return False
    return True

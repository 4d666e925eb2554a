"""Finite crystallographic root systems in simple-root coordinates.

Roots are integer tuples giving coefficients over the ambient base
``alpha_1 .. alpha_n`` (Bourbaki numbering, see ``docs/CONVENTIONS.md``).
Subsystems keep ambient coordinates and carry their own base, so a chain of
subsystems lives in one lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

Root = tuple[int, ...]

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


class RootSystemError(ValueError):
    """Invalid Dynkin data or a root set that is not a subsystem."""


@dataclass(frozen=True, order=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in "ABCDEFG" or len(self.family) != 1:
            raise RootSystemError(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise RootSystemError(f"rank must be a positive integer, got {self.rank!r}")
        if self.family in _MIN_RANK:
            if self.rank < _MIN_RANK[self.family]:
                raise RootSystemError(
                    f"{self.family}{self.rank}: rank must be >= {_MIN_RANK[self.family]}"
                )
        elif self.rank not in _FIXED_RANKS[self.family]:
            raise RootSystemError(
                f"{self.family}{self.rank}: rank must be one of {_FIXED_RANKS[self.family]}"
            )

    @classmethod
    def parse(cls, token: str) -> "DynkinType":
        """Parse a token such as ``"E8"`` or ``"c5"``."""
        token = token.strip()
        if len(token) < 2 or not token[1:].isdigit():
            raise RootSystemError(f"cannot parse Dynkin type {token!r}")
        return cls(token[0].upper(), int(token[1:]))

    def canonical(self) -> "DynkinType":
        """Representative of the isomorphism class (B2 -> C2, D3 -> A3)."""
        if self.family == "B" and self.rank == 2:
            return DynkinType("C", 2)
        if self.family == "D" and self.rank == 3:
            return DynkinType("A", 3)
        return self

    def isomorphic(self, other: "DynkinType") -> bool:
        return self.canonical() == other.canonical()

    @property
    def is_a1(self) -> bool:
        return self.family == "A" and self.rank == 1

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def all_types(max_rank: int, min_rank: int = 1) -> list[DynkinType]:
    """Every valid Dynkin type with ``min_rank <= rank <= max_rank``."""
    out = []
    for fam in "ABCDEFG":
        ranks = range(1, max_rank + 1) if fam in _MIN_RANK else _FIXED_RANKS[fam]
        for n in ranks:
            if min_rank <= n <= max_rank and (fam not in _MIN_RANK or n >= _MIN_RANK[fam]):
                out.append(DynkinType(fam, n))
    return out


def _dynkin_data(t: DynkinType) -> tuple[list[tuple[int, int]], list[Fraction]]:
    """Edges (0-based) and squared lengths of the simple roots, long roots = 2."""
    n = t.rank
    two, one = Fraction(2), Fraction(1)
    if t.family in "ABCD":
        edges = [(i, i + 1) for i in range(n - 1)]
        lengths = [two] * n
        if t.family == "B":
            lengths[-1] = one
        elif t.family == "C":
            lengths = [one] * (n - 1) + [two]
        elif t.family == "D":
            edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        return edges, lengths
    if t.family == "E":
        edges = [(0, 2), (2, 3), (1, 3)] + [(i, i + 1) for i in range(3, n - 1)]
        return edges, [two] * n
    if t.family == "F":
        return [(0, 1), (1, 2), (2, 3)], [two, two, one, one]
    return [(0, 1)], [Fraction(2, 3), two]


def _gram_matrix(t: DynkinType) -> list[list[Fraction]]:
    edges, lengths = _dynkin_data(t)
    n = t.rank
    gram = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = lengths[i]
    for i, j in edges:
        # adjacent simple roots meet at angle with (a, b) = -max(|a|^2, |b|^2) / 2
        val = -max(lengths[i], lengths[j]) / 2
        gram[i][j] = gram[j][i] = val
    return gram


def height(root: Root) -> int:
    return sum(root)


def order_key(root: Root) -> tuple:
    """Total order on roots: height first, then lexicographic coordinates."""
    return (height(root), root)


def is_positive(root: Root) -> bool:
    return all(c >= 0 for c in root) and any(root)


def neg(root: Root) -> Root:
    return tuple(-c for c in root)


def add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True, eq=False)
class RootSystem:
    """A (sub)system of roots inside a fixed ambient lattice.

    ``gram`` is the ambient Gram matrix of the simple roots; ``base`` lists
    the simple roots of this system in ambient coordinates.
    """

    gram: tuple[tuple[Fraction, ...], ...]
    roots: frozenset[Root]
    base: tuple[Root, ...]
    dynkin: DynkinType | None = None

    @property
    def ambient_rank(self) -> int:
        return len(self.gram)

    @property
    def rank(self) -> int:
        return len(self.base)

    @cached_property
    def positives(self) -> tuple[Root, ...]:
        """Positive roots sorted by :func:`order_key`."""
        return tuple(sorted((r for r in self.roots if is_positive(r)), key=order_key))

    def pairing(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        return pairing(self, a, b)

    def norm2(self, a: Sequence[int]) -> Fraction:
        return pairing(self, a, a)

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        """``cartan[i][j] = 2 (b_i, b_j) / (b_i, b_i)`` over ``self.base``."""
        rows = []
        for bi in self.base:
            nii = self.norm2(bi)
            row = []
            for bj in self.base:
                v = 2 * self.pairing(bi, bj) / nii
                assert v.denominator == 1
                row.append(int(v))
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def _int_gram(self) -> tuple[tuple[tuple[int, ...], ...], int]:
        scale = 1
        for row in self.gram:
            for x in row:
                scale = scale * x.denominator // gcd(scale, x.denominator)
        return tuple(tuple(int(x * scale) for x in row) for row in self.gram), scale

    def contains(self, root: Root) -> bool:
        return root in self.roots

    def __len__(self) -> int:
        return len(self.roots)

    def __repr__(self) -> str:
        label = str(self.dynkin) if self.dynkin else f"rank {self.rank}"
        return f"RootSystem({label}, {len(self.roots)} roots)"


def pairing(phi: RootSystem, a: Sequence[int], b: Sequence[int]) -> Fraction:
    """Symmetric bilinear form on the ambient root lattice."""
    n = phi.ambient_rank
    if len(a) != n or len(b) != n:
        raise RootSystemError(f"dimension mismatch: expected length {n}")
    g, scale = phi._int_gram
    total = 0
    for i, ai in enumerate(a):
        if ai:
            row = g[i]
            total += ai * sum(row[j] * bj for j, bj in enumerate(b) if bj)
    return Fraction(total, scale)


def _simple_reflection(root: Root, i: int, cartan: Sequence[Sequence[int]]) -> Root:
    # s_i(x) = x - <x, a_i^vee> a_i, with <x, a_i^vee> = sum_j x_j cartan[i][j]
    c = sum(x * cartan[i][j] for j, x in enumerate(root))
    if c == 0:
        return root
    out = list(root)
    out[i] -= c
    return tuple(out)


def build_root_system(t: DynkinType) -> RootSystem:
    """Full root system of type ``t`` by closing the simple roots under reflections."""
    n = t.rank
    gram = _gram_matrix(t)
    cartan = [[int(2 * gram[i][j] / gram[i][i]) for j in range(n)] for i in range(n)]
    simple = [tuple(int(i == k) for k in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                s = _simple_reflection(r, i, cartan)
                if s not in found:
                    found.add(s)
                    nxt.append(s)
        frontier = nxt
    return RootSystem(
        gram=tuple(tuple(row) for row in gram),
        roots=frozenset(found),
        base=tuple(simple),
        dynkin=t,
    )


def highest_root(phi: RootSystem) -> Root:
    """Unique positive root of maximal height; requires ``phi`` irreducible."""
    if not phi.roots:
        raise RootSystemError("empty root system has no highest root")
    if len(_base_components(phi, phi.base)) != 1:
        raise RootSystemError("highest root requested for a reducible system")
    return max(phi.positives, key=order_key)


def indecomposable_positives(roots: Iterable[Root]) -> tuple[Root, ...]:
    """Positive roots of the set that are not a sum of two positive roots of it."""
    pos = sorted((r for r in roots if is_positive(r)), key=order_key)
    posset = set(pos)
    base = []
    for r in pos:
        if not any(sub(r, a) in posset for a in pos if height(a) < height(r)):
            base.append(r)
    return tuple(base)


def _base_components(phi: RootSystem, base: Sequence[Root]) -> list[list[Root]]:
    """Connected components of the non-orthogonality graph on ``base``."""
    parent = list(range(len(base)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(base)):
        for j in range(i + 1, len(base)):
            if phi.pairing(base[i], base[j]) != 0:
                parent[find(i)] = find(j)
    groups: dict[int, list[Root]] = {}
    for i, b in enumerate(base):
        groups.setdefault(find(i), []).append(b)
    return sorted(groups.values(), key=lambda g: [order_key(b) for b in g])


def subsystem(phi: RootSystem, roots: Iterable[Root], dynkin: DynkinType | None = None) -> RootSystem:
    """Wrap a closed set of roots of ``phi`` as a root system with computed base."""
    rs = frozenset(roots)
    if any(neg(r) not in rs for r in rs):
        raise RootSystemError("root set is not closed under negation")
    return RootSystem(gram=phi.gram, roots=rs, base=indecomposable_positives(rs), dynkin=dynkin)


def irreducible_components(roots: Iterable[Root], phi: RootSystem) -> list[RootSystem]:
    """Split a closed subsystem of ``phi`` into irreducible pieces.

    Each root joins the component of any base element it is not orthogonal
    to; components come back sorted by their smallest base root.
    """
    rs = frozenset(roots)
    if not rs:
        return []
    if any(neg(r) not in rs for r in rs):
        raise RootSystemError("root set is not closed under negation")
    base = indecomposable_positives(rs)
    groups = _base_components(phi, base)
    buckets: list[set[Root]] = [set() for _ in groups]
    for r in rs:
        hits = [k for k, g in enumerate(groups) if any(phi.pairing(r, b) for b in g)]
        if len(hits) != 1:
            raise RootSystemError(f"root {r} does not lie in a single component")
        buckets[hits[0]].add(r)
    out = []
    for g, bucket in zip(groups, buckets):
        comp = RootSystem(gram=phi.gram, roots=frozenset(bucket), base=tuple(g))
        out.append(replace(comp, dynkin=classify_type(comp)))
    return out


def classify_type(phi: RootSystem) -> DynkinType:
    """Identify an irreducible system from the Cartan matrix of its base.

    Returns the canonical label of the isomorphism class, so rank-2 doubly
    laced systems read ``C2`` and ``D3`` reads ``A3``.
    """
    cartan = phi.cartan
    n = len(cartan)
    if n == 0:
        raise RootSystemError("empty root system")
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            m = cartan[i][j] * cartan[j][i]
            if m:
                if m > 3 or cartan[i][j] == 0 or cartan[j][i] == 0:
                    raise RootSystemError("Cartan matrix is not of finite type")
                edges[(i, j)] = m
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    if len(edges) != n - 1 or len(_base_components(phi, phi.base)) != 1:
        raise RootSystemError("Dynkin diagram is not a tree / not connected")
    mults = sorted(edges.values())
    degrees = sorted(len(v) for v in adj.values())
    if n == 1:
        return DynkinType("A", 1)
    if 3 in mults:
        if n != 2:
            raise RootSystemError("triple bond outside rank 2")
        return DynkinType("G", 2)
    if mults.count(2) > 1 or max(degrees) > 3:
        raise RootSystemError("Cartan matrix matches no finite type")
    if 2 in mults:
        if max(degrees) > 2:
            raise RootSystemError("branched diagram with a double bond")
        if n == 2:
            return DynkinType("C", 2)
        (i, j), = [e for e, m in edges.items() if m == 2]
        ends = [v for v in adj if len(adj[v]) == 1]
        if i in ends or j in ends:
            end = i if i in ends else j
            other = j if end == i else i
            short_end = phi.norm2(phi.base[end]) < phi.norm2(phi.base[other])
            return DynkinType("B" if short_end else "C", n)
        if n == 4:
            return DynkinType("F", 4)
        raise RootSystemError("double bond in the interior of a long chain")
    if max(degrees) <= 2:
        return DynkinType("A", n)
    if degrees.count(3) != 1:
        raise RootSystemError("more than one branch node")
    hub = next(v for v in adj if len(adj[v]) == 3)
    arms = []
    for start in adj[hub]:
        length, prev, cur = 1, hub, start
        while len(adj[cur]) == 2:
            prev, cur = cur, next(x for x in adj[cur] if x != prev)
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return DynkinType("D", n).canonical()
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return DynkinType("E", n)
    raise RootSystemError(f"branched diagram with arms {arms} is not of finite type")

"""The chain of Heisenberg layers attached to a split simple root system.

Starting from the ambient system, each step takes the highest root, records
the simple roots that pair nontrivially with it, and descends to the unique
non-A1 irreducible piece of its orthogonal complement.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rootsys import (
    DynkinType,
    Root,
    RootSystem,
    RootSystemError,
    build_root_system,
    classify_type,
    highest_root,
    irreducible_components,
)


class TowerError(ValueError):
    pass


def _require_heisenberg_input(phi: RootSystem) -> DynkinType:
    t = phi.dynkin or classify_type(phi)
    if t.is_a1:
        raise TowerError("A1 has no Heisenberg parabolic (excluded case Phi = A1)")
    return t


def sigma_set(phi: RootSystem) -> frozenset[Root]:
    """Simple roots of ``phi`` not orthogonal to its highest root."""
    _require_heisenberg_input(phi)
    beta = highest_root(phi)
    return frozenset(a for a in phi.base if phi.pairing(a, beta) != 0)


def orthogonal_subsystem(phi: RootSystem) -> frozenset[Root]:
    beta = highest_root(phi)
    return frozenset(a for a in phi.roots if phi.pairing(a, beta) == 0)


def next_step(phi: RootSystem) -> RootSystem | None:
    """The non-A1 irreducible component of the orthogonal subsystem, if any."""
    _require_heisenberg_input(phi)
    comps = irreducible_components(orthogonal_subsystem(phi), phi)
    keep = [c for c in comps if not c.dynkin.is_a1]
    if len(keep) > 1:
        kinds = ", ".join(str(c.dynkin) for c in comps)
        raise AssertionError(f"several non-A1 components in orthogonal subsystem: {kinds}")
    if not keep:
        return None
    nxt = keep[0]
    if not set(nxt.base) <= set(phi.base):
        raise AssertionError(f"base of {nxt.dynkin} is not contained in the previous base")
    return nxt


def heisenberg_layer(phi: RootSystem, beta: Root | None = None) -> tuple[Root, ...]:
    """Positive roots of ``phi`` pairing positively with its highest root."""
    if beta is None:
        beta = highest_root(phi)
    return tuple(a for a in phi.positives if phi.pairing(a, beta) > 0)


@dataclass(frozen=True)
class TowerStep:
    subsystem: RootSystem
    base: tuple[Root, ...]
    highest: Root
    sigma: frozenset[Root]
    layer: tuple[Root, ...]

    @property
    def layer_dim(self) -> int:
        return len(self.layer)

    @property
    def kind(self) -> DynkinType:
        return self.subsystem.dynkin


@dataclass(frozen=True)
class HeisenbergTower:
    ambient: DynkinType
    root_system: RootSystem
    steps: tuple[TowerStep, ...]

    @property
    def r(self) -> int:
        return len(self.steps)

    @property
    def gamma(self) -> frozenset[Root]:
        return frozenset().union(*(s.sigma for s in self.steps))

    def simple_index(self, root: Root) -> int:
        """1-based Bourbaki index of an ambient simple root."""
        return self.root_system.base.index(root) + 1

    @property
    def gamma_indices(self) -> list[int]:
        return sorted(self.simple_index(a) for a in self.gamma)

    @property
    def complement_indices(self) -> list[int]:
        """Indices of the simple roots in Delta - Gamma."""
        g = set(self.gamma_indices)
        return [i for i in range(1, self.ambient.rank + 1) if i not in g]


def build_tower(t: DynkinType) -> HeisenbergTower:
    if t.is_a1:
        raise TowerError("A1 is excluded: the construction requires Phi != A1")
    phi = build_root_system(t)
    steps = []
    current: RootSystem | None = phi
    while current is not None:
        if current.dynkin is None:
            raise RootSystemError("tower step lost its Dynkin label")
        beta = highest_root(current)
        steps.append(
            TowerStep(
                subsystem=current,
                base=current.base,
                highest=beta,
                sigma=sigma_set(current),
                layer=heisenberg_layer(current, beta),
            )
        )
        current = next_step(current)
    return HeisenbergTower(ambient=t, root_system=phi, steps=tuple(steps))


def r_value(t: DynkinType) -> int:
    return build_tower(t).r


def layer_dims(tower: HeisenbergTower) -> list[int]:
    return [s.layer_dim for s in tower.steps]


def expected_r(t: DynkinType) -> int:
    """Closed-form length of the tower for the split forms."""
    n = t.rank
    if t.family in "ABE":
        return n // 2
    if t.family == "C":
        return n - 1
    if t.family == "D":
        return (n - 1) // 2
    if t.family == "F":
        return 3
    return 1

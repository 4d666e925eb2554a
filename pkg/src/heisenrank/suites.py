"""Invariant suites driven by ``heisenrank verify``.

Every suite runs over valid types up to a rank bound and records one case per
type; randomized suites seed a private ``random.Random`` per (suite, type) so
results do not depend on execution order.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Callable

from . import exact
from .chevalley import (
    LayerDecomposition,
    NilpotentLieAlgebra,
    build_nilradical,
    verify_heisenberg,
    verify_jacobi,
    verify_tower_action,
)
from .kirillov import (
    KirillovError,
    LinearFunctional,
    classify_rank,
    coadjoint_action,
    float_orbit_dimension,
    orbit_dimension,
    rank_threshold,
    rankable_functional,
    skew_form,
)
from .rootsys import DynkinType, all_types, classify_type
from .tower import HeisenbergTower, build_tower, expected_r

# rank ceilings matching the scope each property is asserted at
CEILINGS = {
    "table": 12,
    "heisenberg": 8,
    "jacobi": 8,
    "dimformula": 6,
    "rankcheck": 6,
    "semicont": 4,
}
SUITES = tuple(CEILINGS)


@dataclass
class Failure:
    case: str
    diagnostic: str


@dataclass
class VerificationSummary:
    suite: str
    cases_run: int = 0
    failures: list[Failure] = field(default_factory=list)
    wall_time: float = 0.0
    seed: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self, timing: bool = False) -> dict:
        d = asdict(self)
        if timing:
            d["wall_time"] = round(self.wall_time, 3)
        else:
            del d["wall_time"]
        d["passed"] = self.ok
        return d


@lru_cache(maxsize=None)
def tower_and_algebra(t: DynkinType) -> tuple[HeisenbergTower, NilpotentLieAlgebra, LayerDecomposition]:
    tw = build_tower(t)
    L, D = build_nilradical(tw)
    return tw, L, D


def case_rng(seed: int, suite: str, t: DynkinType) -> random.Random:
    return random.Random(f"{seed}:{suite}:{t}")


def random_functional(rng: random.Random, dim: int) -> LinearFunctional:
    """Random functional with a randomly chosen support density."""
    density = rng.choice((1.0, 0.5, 0.25))
    return LinearFunctional.of(exact.random_vector(rng, dim, density))


# -- individual suites: each returns a list of failure diagnostics for one type


def check_table(t: DynkinType, **_) -> list[str]:
    out = []
    tw = build_tower(t)
    if tw.r != expected_r(t):
        out.append(f"r = {tw.r}, closed form gives {expected_r(t)}")
    for k, step in enumerate(tw.steps, 1):
        kind = classify_type(step.subsystem)
        want = 2 if kind.family == "A" and kind.rank > 1 else 1
        if len(step.sigma) != want:
            out.append(f"step {k} ({kind}): |Sigma| = {len(step.sigma)}, expected {want}")
    if t.family == "A":
        n = t.rank
        want_rest = [] if n % 2 == 0 else [(n + 1) // 2]
        if tw.complement_indices != want_rest:
            out.append(f"Delta - Gamma = {tw.complement_indices}, expected {want_rest}")
    return out


def check_heisenberg(t: DynkinType, **_) -> list[str]:
    tw, L, D = tower_and_algebra(t)
    reports = [verify_heisenberg(L, D, d) for d in range(1, D.r + 1)]
    reports += [verify_tower_action(L, D, n) for n in range(1, D.r)]
    out = [f"{r.check}: {v}" for r in reports for v in r.violations]
    if L.dim != sum(s.layer_dim for s in tw.steps):
        out.append("layer dimensions do not add up to the algebra dimension")
    return out


def sign_mutation(L: NilpotentLieAlgebra) -> NilpotentLieAlgebra | None:
    """Flip one antisymmetric pair of constants that enters a nontrivial Jacobi triple."""
    c = L.constants
    for (i, j), (s, nij) in c.items():
        for k in range(L.dim):
            if k in (i, j):
                continue
            # [[e_i, e_j], e_k] nonzero forces the other two cyclic terms to compensate
            if (s, k) in c:
                mutated = dict(c)
                mutated[(i, j)] = (s, -nij)
                mutated[(j, i)] = (s, nij)
                return NilpotentLieAlgebra(list(L.basis_roots), mutated)
    return None


def check_jacobi(t: DynkinType, **_) -> list[str]:
    _, L, _ = tower_and_algebra(t)
    out = []
    if not verify_jacobi(L):
        out.append("Jacobi identity fails")
    mutated = sign_mutation(L)
    if mutated is not None and verify_jacobi(mutated):
        out.append("negative control: sign-flipped constants still satisfy Jacobi")
    return out


def check_dimformula(t: DynkinType, *, seed: int, trials: int) -> list[str]:
    tw, L, D = tower_and_algebra(t)
    rng = case_rng(seed, "dimformula", t)
    out = []
    for d in range(1, tw.r + 1):
        want = rank_threshold(tw, d)
        for _ in range(trials):
            scalars = [exact.random_rational(rng) for _ in range(d)]
            lam = rankable_functional(L, D, d, scalars)
            got = orbit_dimension(L, lam)
            cls = classify_rank(L, tw, lam)
            if got != want or cls != d:
                shown = [exact.format_rational(s) for s in scalars]
                out.append(f"d={d} scalars={shown}: orbit dim {got} (want {want}), class {cls}")
    return out


def check_rankcheck(t: DynkinType, *, seed: int, trials: int) -> list[str]:
    _, L, _ = tower_and_algebra(t)
    rng = case_rng(seed, "rankcheck", t)
    out = []
    for k in range(5 * trials):
        lam = random_functional(rng, L.dim)
        ex, fl = orbit_dimension(L, lam), float_orbit_dimension(L, lam)
        if ex != fl or ex % 2:
            out.append(f"functional {k}: exact rank {ex}, float rank {fl}")
    for k in range(trials):
        lam = random_functional(rng, L.dim)
        base = orbit_dimension(L, lam)
        for m in range(10):
            x = exact.random_vector(rng, L.dim, rng.choice((1.0, 0.5)))
            moved = orbit_dimension(L, coadjoint_action(L, x, lam))
            if moved != base:
                out.append(f"functional {k}, element {m}: orbit dim {base} -> {moved}")
    return out


def semicontinuity_trials(
    L: NilpotentLieAlgebra, rng: random.Random, count: int
) -> tuple[int, list[str]]:
    """Count triples with ``rank B(lam + t mu) >= rank B(lam)``.

    Exceptions are recomputed by plain Gaussian elimination; a disagreement
    between the two exact routes is reported as a diagnostic.
    """
    holds = 0
    problems = []
    for k in range(count):
        lam = random_functional(rng, L.dim)
        mu = random_functional(rng, L.dim)
        t = exact.random_rational(rng)
        moved = lam + mu.scaled(t)
        r0, r1 = orbit_dimension(L, lam), orbit_dimension(L, moved)
        if r1 >= r0:
            holds += 1
            continue
        g0, g1 = exact.rank_gauss(skew_form(L, lam)), exact.rank_gauss(skew_form(L, moved))
        if (g0, g1) != (r0, r1):
            problems.append(f"triple {k}: exact routes disagree ({r0},{r1}) vs ({g0},{g1})")
    return holds, problems


def check_semicont(t: DynkinType, *, seed: int, trials: int) -> list[str]:
    _, L, _ = tower_and_algebra(t)
    rng = case_rng(seed, "semicont", t)
    count = math.ceil(2.5 * trials)
    holds, problems = semicontinuity_trials(L, rng, count)
    need = math.ceil(0.9 * count)
    if holds < need:
        problems.append(f"rank did not increase in {count - holds} of {count} triples")
    return problems


CHECKS: dict[str, Callable[..., list[str]]] = {
    "table": check_table,
    "heisenberg": check_heisenberg,
    "jacobi": check_jacobi,
    "dimformula": check_dimformula,
    "rankcheck": check_rankcheck,
    "semicont": check_semicont,
}


def suite_types(suite: str, max_rank: int, full: bool = False) -> list[DynkinType]:
    bound = max_rank if full else min(max_rank, CEILINGS[suite])
    return [t for t in all_types(bound, min_rank=2) if not t.is_a1]


def run_suite(
    suite: str, max_rank: int, seed: int = 0, trials: int = 20, full: bool = False
) -> VerificationSummary:
    summary = VerificationSummary(suite=suite, seed=seed)
    start = time.perf_counter()
    check = CHECKS[suite]
    for t in suite_types(suite, max_rank, full):
        summary.cases_run += 1
        try:
            problems = check(t, seed=seed, trials=trials)
        except (AssertionError, KirillovError, ValueError) as exc:
            problems = [f"raised {type(exc).__name__}: {exc}"]
        summary.failures.extend(Failure(str(t), p) for p in problems)
    summary.wall_time = time.perf_counter() - start
    return summary

"""Command-line front end.

    heisenrank tower E8
    heisenrank rtable --max-rank 8
    heisenrank orbitdim C3 --lambda rankable:2:1,-3/2
    heisenrank verify --suite all --max-rank 8 --seed 42 --trials 20

Results go to stdout as key-sorted JSON; diagnostics go to stderr.  Exit
status is 0 on success, 1 when a verification fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from typing import Sequence

from . import exact
from .kirillov import (
    KirillovError,
    LinearFunctional,
    classify_rank,
    orbit_dimension,
    rankable_functional,
    stabilizer_dimension,
)
from .rootsys import DynkinType, RootSystemError, all_types
from .suites import SUITES, run_suite, tower_and_algebra
from .tower import HeisenbergTower, TowerError, build_tower, expected_r

SEED_ENV = "HEISENRANK_SEED"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class StepReport:
    index: int
    type: str
    sigma_size: int
    layer_dim: int
    highest_root: tuple[int, ...]
    sigma: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class TowerReport:
    ambient: str
    r: int
    steps: tuple[StepReport, ...]
    gamma: tuple[int, ...]
    delta_minus_gamma: tuple[int, ...]

    @classmethod
    def from_tower(cls, tw: HeisenbergTower) -> "TowerReport":
        steps = tuple(
            StepReport(
                index=k,
                type=str(s.kind),
                sigma_size=len(s.sigma),
                layer_dim=s.layer_dim,
                highest_root=s.highest,
                sigma=tuple(sorted(s.sigma, reverse=True)),
            )
            for k, s in enumerate(tw.steps, 1)
        )
        return cls(
            ambient=str(tw.ambient),
            r=tw.r,
            steps=steps,
            gamma=tuple(tw.gamma_indices),
            delta_minus_gamma=tuple(tw.complement_indices),
        )

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient,
            "r": self.r,
            "gamma": list(self.gamma),
            "delta_minus_gamma": list(self.delta_minus_gamma),
            "steps": [
                {
                    "index": s.index,
                    "type": s.type,
                    "sigma_size": s.sigma_size,
                    "layer_dim": s.layer_dim,
                    "highest_root": list(s.highest_root),
                    "sigma": [list(a) for a in s.sigma],
                }
                for s in self.steps
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TowerReport":
        steps = tuple(
            StepReport(
                index=s["index"],
                type=s["type"],
                sigma_size=s["sigma_size"],
                layer_dim=s["layer_dim"],
                highest_root=tuple(s["highest_root"]),
                sigma=tuple(tuple(a) for a in s["sigma"]),
            )
            for s in data["steps"]
        )
        return cls(
            ambient=data["ambient"],
            r=data["r"],
            steps=steps,
            gamma=tuple(data["gamma"]),
            delta_minus_gamma=tuple(data["delta_minus_gamma"]),
        )


TOWER_REPORT_SCHEMA = {
    "type": "object",
    "required": ["ambient", "r", "gamma", "delta_minus_gamma", "steps"],
    "additionalProperties": False,
    "properties": {
        "ambient": {"type": "string", "pattern": "^[A-G][0-9]+$"},
        "r": {"type": "integer", "minimum": 1},
        "gamma": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "delta_minus_gamma": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "steps": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["index", "type", "sigma_size", "layer_dim", "highest_root", "sigma"],
                "properties": {
                    "index": {"type": "integer", "minimum": 1},
                    "type": {"type": "string", "pattern": "^[A-G][0-9]+$"},
                    "sigma_size": {"enum": [1, 2]},
                    "layer_dim": {"type": "integer", "minimum": 3},
                    "highest_root": {"type": "array", "items": {"type": "integer"}},
                    "sigma": {
                        "type": "array",
                        "items": {"type": "array", "items": {"type": "integer"}},
                    },
                },
            },
        },
    },
}


def parse_type(token: str) -> DynkinType:
    try:
        t = DynkinType.parse(token)
    except RootSystemError as exc:
        raise UsageError(str(exc)) from exc
    if t.is_a1:
        raise UsageError("A1 is excluded: the rank parabolic requires Phi != A1")
    return t


def parse_lambda(spec: str, L, D) -> LinearFunctional:
    """Parse ``rankable:d:c1,...,cd`` or ``coeffs:[c_1,...,c_dim]``."""
    dim = L.dim
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "rankable":
            d_txt, _, scalars_txt = rest.partition(":")
            d = int(d_txt)
            scalars = [exact.parse_rational(s) for s in scalars_txt.split(",")] if scalars_txt else []
            return rankable_functional(L, D, d, scalars)
        if kind == "coeffs":
            body = rest.strip()
            if body.startswith("[") and body.endswith("]"):
                body = body[1:-1]
            values = [exact.parse_rational(s.strip().strip("\"'")) for s in body.split(",") if s.strip()]
            if len(values) != dim:
                raise UsageError(f"coeffs has {len(values)} entries, algebra has dimension {dim}")
            return LinearFunctional(tuple(values))
    except (ValueError, KirillovError) as exc:
        raise UsageError(f"bad lambda spec {spec!r}: {exc}") from exc
    raise UsageError(f"lambda spec must start with 'rankable:' or 'coeffs:', got {spec!r}")


def cmd_tower(args: argparse.Namespace) -> tuple[dict, int]:
    t = parse_type(args.type)
    return TowerReport.from_tower(build_tower(t)).to_json(), 0


def cmd_rtable(args: argparse.Namespace) -> tuple[dict, int]:
    if not 2 <= args.max_rank <= 12:
        raise UsageError("--max-rank must lie in 2..12")
    rows = []
    for t in all_types(args.max_rank, min_rank=2):
        got, want = build_tower(t).r, expected_r(t)
        rows.append({"type": str(t), "r": got, "expected": want, "match": got == want})
    return {"max_rank": args.max_rank, "entries": rows, "all_match": all(r["match"] for r in rows)}, 0


def cmd_orbitdim(args: argparse.Namespace) -> tuple[dict, int]:
    t = parse_type(args.type)
    tw, L, D = tower_and_algebra(t)
    lam = parse_lambda(args.lam, L, D)
    out = {
        "type": str(t),
        "dim": L.dim,
        "lambda": [exact.format_rational(c) for c in lam.coeffs],
        "orbit_dim": orbit_dimension(L, lam),
        "stabilizer_dim": stabilizer_dimension(L, lam),
    }
    try:
        out["rank_class"] = classify_rank(L, tw, lam)
    except KirillovError as exc:
        print(f"error: {exc}", file=sys.stderr)
        out["rank_class"] = None
        return out, 1
    return out, 0


def cmd_verify(args: argparse.Namespace) -> tuple[dict, int]:
    if not 2 <= args.max_rank <= 12:
        raise UsageError("--max-rank must lie in 2..12")
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    seed = args.seed
    if seed is None:
        env = os.environ.get(SEED_ENV)
        try:
            seed = int(env) if env else 0
        except ValueError as exc:
            raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from exc
    names = SUITES if args.suite == "all" else (args.suite,)
    start = time.perf_counter()
    summaries = [run_suite(s, args.max_rank, seed, args.trials, args.full) for s in names]
    for s in summaries:
        status = "ok" if s.ok else f"{len(s.failures)} failure(s)"
        print(f"[{s.suite}] {s.cases_run} cases, {status}, {s.wall_time:.1f}s", file=sys.stderr)
        for f in s.failures:
            print(f"  {f.case}: {f.diagnostic}", file=sys.stderr)
    out = {
        "suite": args.suite,
        "seed": seed,
        "max_rank": args.max_rank,
        "trials": args.trials,
        "summaries": [s.to_dict(args.timing) for s in summaries],
        "passed": all(s.ok for s in summaries),
    }
    if args.timing:
        out["wall_time"] = round(time.perf_counter() - start, 3)
    return out, 0 if out["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heisenrank", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("tower", help="Heisenberg tower of a split simple type")
    sp.add_argument("type", help="type token such as E8 or c5")
    sp.set_defaults(func=cmd_tower)

    sp = sub.add_parser("rtable", help="tower lengths against the closed-form table")
    sp.add_argument("--max-rank", type=int, default=8)
    sp.set_defaults(func=cmd_rtable)

    sp = sub.add_parser("orbitdim", help="coadjoint orbit dimension of a functional")
    sp.add_argument("type")
    sp.add_argument("--lambda", dest="lam", required=True, help="rankable:d:c1,..,cd or coeffs:[...]")
    sp.set_defaults(func=cmd_orbitdim)

    sp = sub.add_parser("verify", help="run invariant suites")
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    sp.add_argument("--max-rank", type=int, default=8)
    sp.add_argument("--seed", type=int, default=None, help=f"defaults to ${SEED_ENV} or 0")
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--full", action="store_true", help="ignore per-suite rank ceilings")
    sp.add_argument("--timing", action="store_true", help="include wall time in the JSON")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result, code = args.func(args)
    except (UsageError, TowerError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    json.dump(result, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

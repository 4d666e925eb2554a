"""Exact rational linear algebra and rational I/O helpers."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = Sequence[Sequence]


def _integer_rows(m: Matrix) -> list[list[int]]:
    rows = []
    for row in m:
        den = 1
        for x in row:
            d = Fraction(x).denominator
            den = den * d // gcd(den, d)
        rows.append([int(Fraction(x) * den) for x in row])
    return rows


def rank(m: Matrix) -> int:
    """Exact rank by fraction-free (Bareiss) elimination.

    Rows are cleared of denominators first; row scaling does not change rank.
    """
    a = [row for row in _integer_rows(m) if any(row)]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        prow = a[r]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - f * prow[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rank_gauss(m: Matrix) -> int:
    """Exact rank by ordinary Gaussian elimination over ``Fraction``.

    Independent of :func:`rank`; used to re-check surprising results.
    """
    a = [[Fraction(x) for x in row] for row in m]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        for i in range(r + 1, nrows):
            f = a[i][c] * inv
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == nrows:
            break
    return r


def float_rank(m: Matrix, rel_tol: float = 1e-8) -> int:
    """Numerical rank: singular values above ``rel_tol`` times the largest."""
    import numpy as np

    arr = np.array([[float(x) for x in row] for row in m], dtype=float)
    if arr.size == 0:
        return 0
    s = np.linalg.svd(arr, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > rel_tol * s[0]))


def nullspace_dim(m: Matrix) -> int:
    return (len(m[0]) if m else 0) - rank(m)


def format_rational(x) -> str:
    """``"p/q"`` in lowest terms with ``q > 0``; integers keep the ``/1``."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(token: str) -> Fraction:
    token = token.strip()
    if not token:
        raise ValueError("empty rational")
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {token!r}") from exc


def random_rational(rng: random.Random, nonzero: bool = True) -> Fraction:
    """Numerator uniform in [-9, 9] (minus 0 when ``nonzero``), denominator in [1, 9]."""
    num = rng.choice([k for k in range(-9, 10) if k or not nonzero])
    return Fraction(num, rng.randint(1, 9))


def random_vector(rng: random.Random, n: int, density: float = 1.0) -> list[Fraction]:
    """Random rational vector; each entry is nonzero with probability ``density``."""
    return [random_rational(rng) if rng.random() < density else Fraction(0) for _ in range(n)]

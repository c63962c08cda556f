"""Exact rational feasibility via phase-one simplex with Bland's rule."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .lattice import as_fraction


def nonnegative_solution(a: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Return some ``x >= 0`` with ``A x = b``, or None if none exists.

    All arithmetic is exact; Bland's rule guarantees termination.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    rows = []
    for row, rhs in zip(a, b):
        row = [as_fraction(x) for x in row]
        rhs = as_fraction(rhs)
        if rhs < 0:
            row, rhs = [-x for x in row], -rhs
        rows.append(row + [Fraction(int(i == len(rows))) for i in range(m)] + [rhs])
    if m == 0:
        return tuple(Fraction(0) for _ in range(n))
    basis = list(range(n, n + m))
    width = n + m
    # reduced costs of the phase-one objective (sum of artificials)
    cost = [-sum((r[j] for r in rows), Fraction(0)) for j in range(n)] + [Fraction(0)] * m
    value = -sum((r[-1] for r in rows), Fraction(0))

    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        best = None
        for i, r in enumerate(rows):
            if r[entering] > 0:
                ratio = r[-1] / r[entering]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:  # unbounded below; cannot happen for phase one
            break
        i = best[1]
        piv = rows[i][entering]
        rows[i] = [x / piv for x in rows[i]]
        for t, r in enumerate(rows):
            if t != i and r[entering] != 0:
                f = r[entering]
                rows[t] = [x - f * y for x, y in zip(r, rows[i])]
        f = cost[entering]
        cost = [c - f * y for c, y in zip(cost, rows[i][:width])]
        value -= f * rows[i][-1]
        basis[i] = entering

    if value != 0:
        return None
    x = [Fraction(0)] * width
    for i, j in enumerate(basis):
        x[j] = rows[i][-1]
    if any(x[n:]):
        return None
    return tuple(x[:n])


def feasible_point(
    dim: int,
    eq: Sequence[tuple[Sequence, object]] = (),
    ge: Sequence[tuple[Sequence, object]] = (),
    free: bool = True,
) -> tuple[Fraction, ...] | None:
    """Find ``x`` in Q^dim with ``<a, x> = b`` for ``eq`` and ``<a, x> >= b`` for ``ge``.

    With ``free=False`` the variables are additionally constrained to be
    nonnegative.
    """
    split = 2 if free else 1
    nvars = dim * split + len(ge)
    rows, rhs = [], []

    def expand(a):
        a = [as_fraction(x) for x in a]
        return a + [-x for x in a] if free else a

    for a, b in eq:
        rows.append(expand(a) + [Fraction(0)] * len(ge))
        rhs.append(b)
    for t, (a, b) in enumerate(ge):
        slack = [Fraction(-1) if s == t else Fraction(0) for s in range(len(ge))]
        rows.append(expand(a) + slack)
        rhs.append(b)
    if not rows:
        return tuple(Fraction(0) for _ in range(dim))
    sol = nonnegative_solution(rows, rhs)
    if sol is None:
        return None
    assert len(sol) == nvars
    if free:
        return tuple(sol[i] - sol[dim + i] for i in range(dim))
    return tuple(sol[:dim])

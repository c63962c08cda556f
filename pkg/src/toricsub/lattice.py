"""Exact integer and rational linear algebra.

Vectors are tuples, matrices are tuples of row tuples. Integer entries are
Python ints (arbitrary precision); rational entries are ``Fraction`` values,
which are always kept in lowest terms with a positive denominator.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotUnimodular, RankDeficient, ZeroVector

IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]
RationalVector = tuple[Fraction, ...]


def as_fraction(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction.

    Floats are accepted and converted exactly (their binary value).
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def as_int(x) -> int:
    if isinstance(x, bool):
        raise TypeError("booleans are not integers")
    if isinstance(x, int):
        return x
    f = as_fraction(x)
    if f.denominator != 1:
        raise ValueError(f"{x!r} is not an integer")
    return f.numerator


def as_int_vector(v: Iterable) -> IntVector:
    return tuple(as_int(x) for x in v)


def as_rational_vector(v: Iterable) -> RationalVector:
    return tuple(as_fraction(x) for x in v)


def as_int_matrix(rows: Iterable[Iterable]) -> IntMatrix:
    m = tuple(as_int_vector(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise DimensionMismatch("ragged matrix")
    return m


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence], ncols: int | None = None) -> tuple:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionMismatch(f"length {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), 0)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = transpose(b)
    if a and len(a[0]) != len(b):
        raise DimensionMismatch("inner dimensions differ")
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in a)


def columns(m: Sequence[Sequence]) -> tuple:
    return transpose(m)


def from_columns(cols: Sequence[Sequence]) -> tuple:
    return transpose(cols)


def primitive_part(v: Sequence[int]) -> IntVector:
    """Divide an integer vector by the gcd of its entries."""
    v = as_int_vector(v)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ZeroVector("the zero vector has no primitive part")
    return tuple(x // g for x in v)


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


def primitive_direction(v: Sequence) -> IntVector:
    """Primitive integer vector pointing along a rational vector."""
    v = as_rational_vector(v)
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    return primitive_part([int(x * den) for x in v])


def normalize_sign(v: Sequence[int]) -> IntVector:
    """Flip ``v`` so its first nonzero entry is positive."""
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over the rationals.

    Returns ``(reduced_rows, pivot_columns)``; zero rows are dropped.
    """
    a = [[as_fraction(x) for x in r] for r in rows]
    n = len(a[0]) if a else (ncols or 0)
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return [tuple(row) for row in a[:r]], pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def rational_nullspace(rows: Sequence[Sequence], ncols: int) -> list[RationalVector]:
    """Basis of ``{x in Q^n : A x = 0}``."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve_rational(a: Sequence[Sequence], b: Sequence) -> RationalVector | None:
    """One rational solution of ``A x = b`` or None when inconsistent."""
    if not a:
        return None if any(b) else ()
    n = len(a[0])
    aug = [list(r) + [bi] for r, bi in zip(a, b)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return tuple(x)


def determinant(m: Sequence[Sequence]):
    """Exact determinant; an int for integer input, a Fraction otherwise."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionMismatch("determinant of a non-square matrix")
    integral = all(isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1) for r in m for x in r)
    a = [[as_fraction(x) for x in r] for r in m]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return 0 if integral else Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return int(det) if integral else det


def unimodular_inverse(q: Sequence[Sequence[int]]) -> IntMatrix:
    """Exact integer inverse of a matrix with determinant +1 or -1."""
    q = as_int_matrix(q)
    n = len(q)
    det = determinant(q)
    if abs(det) != 1:
        raise NotUnimodular(det)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(q)]
    red, _ = rref(aug)
    return tuple(tuple(int(x) for x in row[n:]) for row in red)


def integer_kernel_basis(m: Sequence[Sequence[int]], ncols: int | None = None) -> list[IntVector]:
    """Z-basis of the saturated lattice ``{x in Z^n : M x = 0}``.

    Column operations bring ``M`` to lower echelon form ``M U = [H | 0]``
    with ``U`` unimodular; the trailing columns of ``U`` then span the whole
    integer kernel, not just a finite-index sublattice. Each basis vector
    is primitive and sign-normalized (first nonzero entry positive).

    Raises RankDeficient if the rows of ``M`` are linearly dependent.
    """
    rows = [list(r) for r in as_int_matrix(m)]
    n = len(rows[0]) if rows else ncols
    if n is None:
        raise DimensionMismatch("column count unknown for an empty matrix")
    k = len(rows)
    if k > n:
        raise RankDeficient(f"{k} rows in dimension {n}")
    u = [[int(i == j) for j in range(n)] for i in range(n)]  # u[row][col]

    def swap_cols(a, b):
        for r in rows:
            r[a], r[b] = r[b], r[a]
        for r in u:
            r[a], r[b] = r[b], r[a]

    def sub_col(target, source, q):
        for r in rows:
            r[target] -= q * r[source]
        for r in u:
            r[target] -= q * r[source]

    for i in range(k):
        c = i
        while True:
            nz = [j for j in range(c, n) if rows[i][j] != 0]
            if not nz:
                raise RankDeficient(f"row {i} is dependent on the previous rows")
            p = min(nz, key=lambda j: (abs(rows[i][j]), j))
            if p != c:
                swap_cols(c, p)
            for j in range(c + 1, n):
                if rows[i][j]:
                    sub_col(j, c, rows[i][j] // rows[i][c])
            if all(rows[i][j] == 0 for j in range(c + 1, n)):
                break
    return [normalize_sign(tuple(u[r][j] for r in range(n))) for j in range(k, n)]


def smith_normal_form(a: Sequence[Sequence[int]], ncols: int | None = None):
    """Smith normal form with transforms.

    Returns ``(U, diag, V)`` with ``U`` (m x m) and ``V`` (n x n) unimodular
    and ``U A V`` equal to the m x n matrix carrying ``diag`` (positive,
    each dividing the next) on its leading diagonal and zeros elsewhere.
    """
    d = [list(r) for r in as_int_matrix(a)]
    m = len(d)
    n = len(d[0]) if d else (ncols or 0)
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def row_add(target, source, q):
        d[target] = [x + q * y for x, y in zip(d[target], d[source])]
        u[target] = [x + q * y for x, y in zip(u[target], u[source])]

    def col_add(target, source, q):
        for r in d:
            r[target] += q * r[source]
        for r in v:
            r[target] += q * r[source]

    diag = []
    for t in range(min(m, n)):
        entries = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not entries:
            break
        _, i0, j0 = min(entries)
        row_swap(t, i0)
        col_swap(t, j0)
        while True:
            for i in range(t + 1, m):
                if d[i][t]:
                    row_add(i, t, -(d[i][t] // d[t][t]))
            for j in range(t + 1, n):
                if d[t][j]:
                    col_add(j, t, -(d[t][j] // d[t][t]))
            rest = [(abs(d[i][t]), i, t) for i in range(t + 1, m) if d[i][t]]
            rest += [(abs(d[t][j]), t, j) for j in range(t + 1, n) if d[t][j]]
            if rest:
                _, i0, j0 = min(rest)
                if i0 != t:
                    row_swap(t, i0)
                else:
                    col_swap(t, j0)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % d[t][t]),
                None,
            )
            if bad is None:
                break
            row_add(t, bad, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        diag.append(d[t][t])
    return tuple(map(tuple, u)), tuple(diag), tuple(map(tuple, v))


def is_saturated(vectors: Sequence[Sequence[int]]) -> bool:
    """True iff the vectors are independent and span a saturated lattice.

    Uses the gcd of the maximal minors, which is 1 exactly in that case.
    """
    vecs = as_int_matrix(vectors)
    if not vecs:
        return True
    r, n = len(vecs), len(vecs[0])
    g = 0
    for cols in combinations(range(n), r):
        g = gcd(g, determinant([[v[c] for c in cols] for v in vecs]))
        if g == 1:
            return True
    return False


def integer_coordinates(basis: Sequence[Sequence[int]], x: Sequence[int]) -> tuple[int, ...] | None:
    """Coefficients of ``x`` in the lattice spanned by ``basis``, if integral."""
    if not basis:
        return () if not any(x) else None
    sol = solve_rational(transpose(basis), x)
    if sol is None or any(c.denominator != 1 for c in sol):
        return None
    return tuple(int(c) for c in sol)

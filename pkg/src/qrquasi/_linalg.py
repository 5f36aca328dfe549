"""Small exact linear algebra over the rationals and the integers.

Matrices are lists of rows; entries are ``int`` or ``Fraction``.  Everything
here is sized for ranks of at most a handful, so plain Gaussian elimination is
the right tool.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Vector = tuple
Matrix = list


def frac(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def vec(xs) -> tuple:
    return tuple(frac(x) for x in xs)


def normalize_number(x: Fraction):
    """Return an int when ``x`` is integral, else ``x`` itself."""
    x = frac(x)
    return int(x) if x.denominator == 1 else x


def intvec(xs) -> tuple:
    out = []
    for x in xs:
        x = frac(x)
        if x.denominator != 1:
            raise ValueError(f"{x} is not an integer")
        out.append(int(x))
    return tuple(out)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def add(a, b) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a) -> tuple:
    return tuple(c * x for x in a)


def matvec(m: Matrix, v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in m)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return [[dot(row, col) for col in cols] for row in a]


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)]


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [[frac(x) for x in row] for row in m]
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return len(rref([list(v) for v in vectors])[1])


def nullspace(m: Matrix, ncols: int | None = None) -> list[tuple]:
    """Basis of ``{x : m x = 0}``."""
    if not m:
        n = ncols or 0
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    a, pivots = rref(m)
    n = len(a[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(a, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(m: Matrix, b: Sequence) -> tuple | None:
    """One solution of ``m x = b`` (free variables set to zero), or None."""
    if not m:
        return None if any(frac(x) != 0 for x in b) else ()
    n = len(m[0])
    aug = [list(row) + [frac(bi)] for row, bi in zip(m, b)]
    a, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(a, pivots):
        x[p] = row[n]
    return tuple(x)


def independent_subset(vectors: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal linearly independent subset, chosen greedily."""
    chosen: list[int] = []
    basis: list[list] = []
    for i, v in enumerate(vectors):
        if rank(basis + [list(v)]) > len(basis):
            basis.append(list(v))
            chosen.append(i)
    return chosen


def det(m: Matrix) -> Fraction:
    a = [[frac(x) for x in row] for row in m]
    n = len(a)
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            out = -out
        out *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return out


def primitive(v: Sequence) -> tuple:
    """Scale a nonzero rational vector to a primitive integer vector (same direction)."""
    v = vec(v)
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in ints)


def integer_kernel(rows: Sequence[Sequence], n: int) -> list[tuple]:
    """Basis of the lattice ``{x in Z^n : r . x = 0 for every row r}``.

    Rows may be rational; they are cleared of denominators first.  The
    computation uses unimodular column operations, so the result is a basis
    of the saturated lattice, not just of a finite-index sublattice.
    """
    a = [list(primitive(r)) for r in rows if any(frac(x) != 0 for x in r)]
    u = [[int(i == j) for j in range(n)] for i in range(n)]  # columns of u track ops
    col = 0
    for row in a:
        if col >= n:
            break
        # row after column operations so far
        cur = [sum(row[i] * u[i][j] for i in range(n)) for j in range(n)]
        while True:
            nz = [j for j in range(col, n) if cur[j] != 0]
            if len(nz) <= 1:
                break
            jmin = min(nz, key=lambda j: abs(cur[j]))
            for j in nz:
                if j == jmin:
                    continue
                q = cur[j] // cur[jmin]
                for i in range(n):
                    u[i][j] -= q * u[i][jmin]
                cur[j] -= q * cur[jmin]
        nz = [j for j in range(col, n) if cur[j] != 0]
        if not nz:
            continue
        j = nz[0]
        if j != col:
            for i in range(n):
                u[i][j], u[i][col] = u[i][col], u[i][j]
        col += 1
    return [tuple(u[i][j] for i in range(n)) for j in range(col, n)]


def hermite_basis(generators: Sequence[Sequence[int]], n: int) -> list[tuple]:
    """Row-style Hermite basis of the lattice spanned by integer ``generators``."""
    rows = [list(intvec(g)) for g in generators if any(g)]
    basis: list[list[int]] = []
    col = 0
    while rows and col < n:
        while True:
            nz = [r for r in rows if r[col] != 0]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda r: abs(r[col]))
            new = []
            for r in rows:
                if r is piv or r[col] == 0:
                    new.append(r)
                    continue
                q = r[col] // piv[col]
                new.append([x - q * y for x, y in zip(r, piv)])
            rows = [r for r in new if any(r)]
        nz = [r for r in rows if r[col] != 0]
        if nz:
            piv = nz[0]
            if piv[col] < 0:
                piv = [-x for x in piv]
            rows = [r for r in rows if r[col] == 0]
            basis.append(piv)
        col += 1
    # reduce entries above pivots
    for i, b in enumerate(basis):
        c = next(j for j, x in enumerate(b) if x != 0)
        for k in range(i):
            q = basis[k][c] // b[c]
            if q:
                basis[k] = [x - q * y for x, y in zip(basis[k], b)]
    return [tuple(b) for b in basis]

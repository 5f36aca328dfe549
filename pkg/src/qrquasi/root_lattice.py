"""Weight lattices, root systems and Weyl groups in explicit coordinates.

Weights are plain tuples of ``int``/``Fraction`` in a fixed basis of the
weight lattice, so ``Lambda = Z^rank``.  The inner product is the Gram matrix
of that basis.  Weyl group elements are integer matrices acting on weight
coordinates (column vectors).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _linalg as la
from .errors import NonFiniteSystem, NotDominant

DEFAULT_WEYL_BOUND = 10_000


def is_integral(w: Sequence) -> bool:
    return all(la.frac(x).denominator == 1 for x in w)


@dataclass(frozen=True)
class WeightLattice:
    """``Z^rank`` with a rational, symmetric, positive-definite Gram matrix."""

    rank: int
    gram: tuple

    def __post_init__(self):
        g = tuple(tuple(la.frac(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        if self.rank < 0 or len(g) != self.rank or any(len(r) != self.rank for r in g):
            raise ValueError("gram must be a rank x rank matrix")
        for i in range(self.rank):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise ValueError("gram matrix is not symmetric")
        for n in range(1, self.rank + 1):
            if la.det([list(r[:n]) for r in g[:n]]) <= 0:
                raise ValueError("gram matrix is not positive definite")

    @classmethod
    def standard(cls, rank: int) -> "WeightLattice":
        return cls(rank, tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank)))

    def inner(self, a: Sequence, b: Sequence) -> Fraction:
        return sum(
            (la.frac(a[i]) * self.gram[i][j] * la.frac(b[j])
             for i in range(self.rank) for j in range(self.rank)),
            Fraction(0),
        )

    def norm2(self, a: Sequence) -> Fraction:
        return self.inner(a, a)

    def lower(self, a: Sequence) -> tuple:
        """Coefficient vector ``G a``: the functional ``x -> <a, x>`` in coordinates."""
        return la.matvec(self.gram, a)

    def zero(self) -> tuple:
        return (0,) * self.rank


def _mat_key(m) -> tuple:
    return tuple(tuple(int(x) for x in row) for row in m)


def _mat_mul(a: tuple, b: tuple) -> tuple:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _apply(m: tuple, v: Sequence) -> tuple:
    return tuple(la.normalize_number(sum((row[j] * la.frac(v[j]) for j in range(len(v))), Fraction(0)))
                 for row in m)


@dataclass(frozen=True)
class WeylElement:
    matrix: tuple
    length: int

    def __call__(self, v: Sequence) -> tuple:
        return _apply(self.matrix, v)

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1


@dataclass(frozen=True)
class RootSystem:
    lattice: WeightLattice
    simple_roots: tuple
    positive_roots: tuple
    weyl_elements: tuple
    rho: tuple
    _index: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    @property
    def is_torus(self) -> bool:
        return not self.simple_roots

    def element(self, matrix) -> WeylElement:
        return self._index[_mat_key(matrix)]

    def compose(self, w: WeylElement, w2: WeylElement) -> WeylElement:
        return self._index[_mat_mul(w.matrix, w2.matrix)]

    @property
    def identity(self) -> WeylElement:
        n = self.lattice.rank
        return self._index[tuple(tuple(int(i == j) for j in range(n)) for i in range(n))]

    def is_dominant(self, lam: Sequence) -> bool:
        return all(self.lattice.inner(lam, a) >= 0 for a in self.simple_roots)

    def is_strictly_dominant(self, lam: Sequence) -> bool:
        return all(self.lattice.inner(lam, a) > 0 for a in self.simple_roots)

    def chamber_halfspaces(self) -> list[tuple[tuple, Fraction]]:
        """The closed dominant chamber as ``normal . x <= offset`` rows."""
        return [(tuple(-c for c in self.lattice.lower(a)), Fraction(0)) for a in self.simple_roots]


def reflection_matrix(alpha: Sequence, lattice: WeightLattice) -> tuple:
    """Integer matrix of ``x -> x - 2<x,a>/<a,a> a`` on weight coordinates."""
    a = la.vec(alpha)
    aa = lattice.norm2(a)
    if aa == 0:
        raise ValueError("zero root")
    ga = lattice.lower(a)
    n = lattice.rank
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            x = Fraction(int(i == j)) - 2 * a[i] * ga[j] / aa
            if x.denominator != 1:
                raise ValueError(
                    f"reflection in {tuple(alpha)} does not preserve the weight lattice"
                )
            row.append(int(x))
        rows.append(tuple(row))
    return tuple(rows)


def build_root_system(
    simple_roots: Sequence[Sequence],
    lattice: WeightLattice,
    bound: int = DEFAULT_WEYL_BOUND,
) -> RootSystem:
    """Close the simple reflections into the Weyl group and collect positive roots.

    Lengths are breadth-first distances from the identity in the Cayley graph
    of the simple reflections, which is the Coxeter length.
    """
    simple = tuple(la.intvec(a) for a in simple_roots)
    n = lattice.rank
    if simple and la.rank([list(a) for a in simple]) != len(simple):
        raise ValueError("simple roots must be linearly independent")
    gens = [reflection_matrix(a, lattice) for a in simple]
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    lengths = {ident: 0}
    queue = deque([ident])
    while queue:
        m = queue.popleft()
        for s in gens:
            m2 = _mat_mul(s, m)
            if m2 not in lengths:
                lengths[m2] = lengths[m] + 1
                if len(lengths) > bound:
                    raise NonFiniteSystem(
                        f"reflection closure exceeded {bound} elements"
                    )
                queue.append(m2)

    roots = set()
    for m in lengths:
        for a in simple:
            roots.add(_apply(m, a))
    smat = la.transpose([list(a) for a in simple]) if simple else []
    positive = []
    for r in sorted(roots):
        coeffs = la.solve(smat, r)
        if coeffs is None:
            raise ValueError(f"root {r} is not in the span of the simple roots")
        if all(c >= 0 for c in coeffs):
            positive.append(r)
        elif not all(c <= 0 for c in coeffs):
            raise ValueError(f"root {r} is neither positive nor negative")
    rho = tuple(
        la.normalize_number(sum((la.frac(r[i]) for r in positive), Fraction(0)) / 2)
        for i in range(n)
    )
    elements = tuple(
        WeylElement(m, l) for m, l in sorted(lengths.items(), key=lambda kv: (kv[1], kv[0]))
    )
    index = {w.matrix: w for w in elements}
    return RootSystem(lattice, simple, tuple(positive), elements, rho, index)


def torus(lattice: WeightLattice) -> RootSystem:
    return build_root_system([], lattice)


def shifted_action(w: WeylElement, mu: Sequence, rho: Sequence) -> tuple:
    """``w(mu + rho) - rho``."""
    shifted = w(la.add(la.vec(mu), la.vec(rho)))
    return tuple(la.normalize_number(la.frac(x) - la.frac(r)) for x, r in zip(shifted, rho))


def weyl_numerator(lam: Sequence, rs: RootSystem):
    """Signed spikes ``sum_w (-1)^l(w) t^(w(lam+rho)-rho)`` as a FormalCharacter."""
    from .characters import FormalCharacter

    if not is_integral(lam) or not rs.is_dominant(lam):
        raise NotDominant(f"{tuple(lam)} is not a dominant integral weight")
    coeffs: dict = {}
    for w in rs.weyl_elements:
        mu = shifted_action(w, lam, rs.rho)
        coeffs[mu] = coeffs.get(mu, 0) + w.sign
    return FormalCharacter(coeffs)

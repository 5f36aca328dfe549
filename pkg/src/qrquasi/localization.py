"""Equivariant index characters from isolated fixed-point data.

Conventions
-----------
A fixed point ``p`` carries the weight ``mu`` of the torus on the fibre of the
prequantum line bundle (equal to the moment image) and the list of isotropy
weights on the tangent space.  Tangent weights are recorded in the toric
convention: they point from ``mu(p)`` into the moment image, so for ``CP^1``
with moment image ``[0, 1]`` the point over ``0`` has weight ``+1``.  With
this convention the fixed-point contribution is

    t^(k mu_p) / prod_alpha (1 - t^alpha)

which in the symplectic sign convention reads ``1 / prod (1 - t^(-beta))``
with ``beta = -alpha``.  :attr:`FixedPoint.denominator_weights` returns the
``beta`` list, and :func:`polarize` works on such lists.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import floor
from typing import Callable, Iterable, Sequence

from . import _linalg as la
from .characters import Box, FormalCharacter
from .errors import BoxTooSmall, DegeneratePolarization, InconsistentGKM, NotDominant
from .root_lattice import RootSystem, WeightLattice, is_integral, torus


@dataclass(frozen=True)
class FixedPoint:
    mu: tuple
    tangent_weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "mu", la.intvec(self.mu))
        tw = tuple(la.intvec(w) for w in self.tangent_weights)
        object.__setattr__(self, "tangent_weights", tw)
        if not tw:
            raise ValueError("a fixed point needs at least one tangent weight")
        if any(not any(w) for w in tw):
            raise ValueError("zero tangent weight")

    @property
    def denominator_weights(self) -> tuple:
        return tuple(tuple(-x for x in w) for w in self.tangent_weights)


def _sign_canonical(w: tuple) -> tuple:
    """Representative of ``{w, -w}``: first nonzero entry positive."""
    for x in w:
        if x != 0:
            return w if x > 0 else tuple(-y for y in w)
    return w


@dataclass(frozen=True)
class Edge:
    i: int
    j: int
    weight: tuple


@dataclass(frozen=True)
class FixedPointModel:
    lattice: WeightLattice
    points: tuple
    edges: tuple | None = None
    roots: RootSystem | None = None
    name: str = ""
    metadata: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        r = self.lattice.rank
        for p in self.points:
            if len(p.mu) != r or any(len(w) != r for w in p.tangent_weights):
                raise ValueError("fixed point data has the wrong rank")
        if self.edges is not None:
            edges = tuple(e if isinstance(e, Edge) else Edge(e[0], e[1], la.intvec(e[2]))
                          for e in self.edges)
            object.__setattr__(self, "edges", edges)
            self._check_gkm()
        if self.roots is None:
            object.__setattr__(self, "roots", torus(self.lattice))

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def dim(self) -> int:
        """Real dimension of M (twice the number of tangent weights at a point)."""
        return 2 * len(self.points[0].tangent_weights)

    def _check_gkm(self):
        n = len(self.points)
        incident: dict[int, Counter] = {i: Counter() for i in range(n)}
        for e in self.edges:
            if not (0 <= e.i < n and 0 <= e.j < n) or e.i == e.j:
                raise InconsistentGKM(f"edge {e} has bad endpoints")
            if not any(e.weight):
                raise InconsistentGKM(f"edge {e} has zero weight")
            diff = la.sub(self.points[e.j].mu, self.points[e.i].mu)
            if la.rank([list(diff), list(e.weight)]) > 1:
                raise InconsistentGKM(
                    f"mu difference {diff} of edge ({e.i},{e.j}) is not parallel to {e.weight}"
                )
            key = _sign_canonical(e.weight)
            for end in (e.i, e.j):
                if key not in {_sign_canonical(w) for w in self.points[end].tangent_weights}:
                    raise InconsistentGKM(
                        f"edge weight {e.weight} is not a tangent weight at point {end}"
                    )
                incident[end][key] += 1
        for i, p in enumerate(self.points):
            have = Counter(_sign_canonical(w) for w in p.tangent_weights)
            if have != incident[i]:
                raise InconsistentGKM(
                    f"tangent weights at point {i} are not matched one-to-one by edges"
                )

    def edge_tangent_weight(self, point: int, edge: Edge) -> tuple:
        """The tangent weight at ``point`` that the edge accounts for."""
        other = edge.j if edge.i == point else edge.i
        diff = la.sub(self.points[other].mu, self.points[point].mu)
        cands = [w for w in self.points[point].tangent_weights
                 if _sign_canonical(w) == _sign_canonical(edge.weight)]
        for w in cands:
            if la.dot(w, diff) > 0:
                return w
        return cands[0]


@dataclass(frozen=True)
class Polarization:
    """A vector ``v`` in the Lie algebra pairing nonzero with every weight involved."""

    v: tuple
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "v", la.vec(self.v))

    def check(self, weights: Iterable[Sequence]) -> None:
        for w in weights:
            if la.dot(self.v, w) == 0:
                raise DegeneratePolarization(f"<v, {tuple(w)}> = 0 for v = {self.v}")

    @classmethod
    def for_model(cls, model: FixedPointModel, seed: int = 0) -> "Polarization":
        """Draw small random rationals until the vector is generic for the model."""
        rng = random.Random(seed)
        weights = _model_weights(model)
        for _ in range(10_000):
            v = tuple(Fraction(rng.randint(-1000, 1000), 997) for _ in range(model.rank))
            pol = cls(v, seed)
            try:
                pol.check(weights)
            except DegeneratePolarization:
                continue
            return pol
        raise DegeneratePolarization("could not draw a generic polarization")


def _model_weights(model: FixedPointModel) -> list[tuple]:
    ws = [w for p in model.points for w in p.tangent_weights]
    if model.roots is not None:
        ws.extend(model.roots.positive_roots)
    return ws


def polarize(weights: Sequence[Sequence], v: Polarization | Sequence):
    """Rewrite ``1 / prod (1 - t^(-a))`` as ``sign * t^shift * prod 1/(1 - t^b)``.

    Every generator ``b`` is strictly ``v``-positive.  Factors with
    ``<v, a> < 0`` expand directly with generator ``-a``; factors with
    ``<v, a> > 0`` use ``1/(1 - t^-a) = -t^a / (1 - t^a)``.
    """
    vv = v.v if isinstance(v, Polarization) else la.vec(v)
    rank = len(vv)
    sign = 1
    shift = [0] * rank
    gens = []
    for a in weights:
        a = la.intvec(a)
        s = la.dot(vv, a)
        if s == 0:
            raise DegeneratePolarization(f"<v, {a}> = 0")
        if s > 0:
            sign = -sign
            shift = [x + y for x, y in zip(shift, a)]
            gens.append(a)
        else:
            gens.append(tuple(-x for x in a))
    return sign, tuple(shift), gens


def _small_vectors(rank: int, radius: int):
    vs = [v for v in itertools.product(range(-radius, radius + 1), repeat=rank) if any(v)]
    vs.sort(key=lambda v: (max(abs(x) for x in v), sum(abs(x) for x in v), v))
    return vs


@lru_cache(maxsize=None)
def _positive_functional(gens: tuple) -> tuple:
    """An integer vector strictly positive on every generator."""
    rank = len(gens[0])
    for radius in (1, 2, 4, 8, 16):
        for v in _small_vectors(rank, radius):
            if all(la.dot(v, g) > 0 for g in gens):
                return v
    raise ValueError(f"generators {gens} are not strictly positive on a common vector")


def kostant_partition(generators: Sequence[Sequence[int]], target: Sequence[int],
                      v: Sequence | None = None) -> int:
    """Number of ways to write ``target`` as a ``Z>=0`` combination of ``generators``.

    Generators are counted as a list: repeated entries are distinct parts.
    The count is memoised per (generator multiset, target).
    """
    gens = tuple(sorted(la.intvec(g) for g in generators))
    target = la.intvec(target)
    if not gens:
        return int(not any(target))
    if v is not None:
        v = la.vec(v)
        if not all(la.dot(v, g) > 0 for g in gens):
            raise ValueError("generators must be strictly positive on v")
    return _kostant(gens, target)


@lru_cache(maxsize=None)
def _kostant(gens: tuple, target: tuple) -> int:
    if len(gens) == 1:
        return int(_multiple_of(target, gens[0]))
    v = _positive_functional(gens)
    level = la.dot(v, target)
    if level < 0:
        return 0
    g, rest = gens[0], gens[1:]
    top = floor(level / la.dot(v, g))
    total = 0
    t = target
    for _ in range(top + 1):
        total += _kostant(rest, t)
        t = tuple(x - y for x, y in zip(t, g))
    return total


def _multiple_of(target: tuple, g: tuple) -> bool:
    """True iff ``target = m g`` for an integer ``m >= 0``."""
    m = None
    for x, y in zip(target, g):
        if y == 0:
            if x != 0:
                return False
            continue
        if x % y:
            return False
        q = x // y
        if q < 0 or (m is not None and q != m):
            return False
        m = q
    return True


def naive_partition_count(generators: Sequence[Sequence[int]], target: Sequence[int]) -> int:
    """Brute-force enumeration over bounded exponent vectors (test oracle)."""
    gens = [la.intvec(g) for g in generators]
    target = la.intvec(target)
    if not gens:
        return int(not any(target))
    v = _positive_functional(tuple(sorted(gens)))
    level = la.dot(v, target)
    if level < 0:
        return 0
    bounds = [floor(level / la.dot(v, g)) for g in gens]
    count = 0
    for ms in itertools.product(*(range(b + 1) for b in bounds)):
        s = tuple(sum(m * g[i] for m, g in zip(ms, gens)) for i in range(len(target)))
        count += s == target
    return count


def _expansions(model: FixedPointModel, v: Polarization):
    v.check(_model_weights(model))
    return [(p.mu,) + polarize(p.denominator_weights, v) for p in model.points]


def index_multiplicity(model: FixedPointModel, k: int, lam: Sequence[int],
                       v: Polarization | None = None) -> int:
    """Coefficient of ``t^lam`` in the equivariant index of ``L^k``."""
    v = v or Polarization.for_model(model)
    return _index_at(_expansions(model, v), k, la.intvec(lam))


def _index_at(expansions, k: int, lam: tuple) -> int:
    total = 0
    for mu, sign, shift, gens in expansions:
        target = tuple(l - k * m - s for l, m, s in zip(lam, mu, shift))
        total += sign * kostant_partition(gens, target)
    return total


def index_character(model: FixedPointModel, k: int, box: Box,
                    v: Polarization | None = None) -> FormalCharacter:
    v = v or Polarization.for_model(model)
    ex = _expansions(model, v)
    return FormalCharacter({lam: _index_at(ex, k, lam) for lam in box})


def _root_product(rs: RootSystem) -> list[tuple[int, tuple]]:
    """Signed spikes of ``prod_{alpha > 0} (1 - t^-alpha)``."""
    out = []
    for subset in itertools.product((0, 1), repeat=len(rs.positive_roots)):
        w = [0] * rs.lattice.rank
        for bit, a in zip(subset, rs.positive_roots):
            if bit:
                w = [x - y for x, y in zip(w, a)]
        out.append((-1 if sum(subset) % 2 else 1, tuple(w)))
    return out


def _root_padding(rs: RootSystem) -> tuple[list[int], list[int]]:
    lo = [sum(min(0, a[i]) for a in rs.positive_roots) for i in range(rs.lattice.rank)]
    hi = [sum(max(0, a[i]) for a in rs.positive_roots) for i in range(rs.lattice.rank)]
    return lo, hi


def multiplicity_function(model: FixedPointModel, rs: RootSystem | None = None,
                          v: Polarization | None = None) -> Callable[[int, Sequence[int]], int]:
    """Pointwise ``(k, lam) -> m(k, lam)``: the index convolved with the root product."""
    rs = rs or model.roots
    v = v or Polarization.for_model(model)
    ex = _expansions(model, v)
    spikes = _root_product(rs)

    def m(k: int, lam: Sequence[int]) -> int:
        lam = la.intvec(lam)
        return sum(s * _index_at(ex, k, tuple(x - y for x, y in zip(lam, w)))
                   for s, w in spikes)

    return m


def q_multiplicities(model: FixedPointModel, rs: RootSystem | None, k: int, box: Box,
                     v: Polarization | None = None) -> FormalCharacter:
    """``m(k, .)`` on ``box`` shrunk by the root-product padding.

    ``box`` is the region where the index is evaluated; the product with
    ``prod (1 - t^-alpha)`` reaches from ``lam`` to ``lam - sum(S)`` for subsets
    ``S`` of positive roots, so only the shrunk box is fully determined.
    """
    rs = rs or model.roots
    v = v or Polarization.for_model(model)
    lo, hi = _root_padding(rs)
    # lam - sum(S) in box  <=>  lam in [box.lo + hi, box.hi + lo]
    inner = Box(tuple(l + h for l, h in zip(box.lo, hi)),
                tuple(u + l for u, l in zip(box.hi, lo)))
    if inner.empty:
        raise BoxTooSmall(f"box {box} is smaller than the root padding")
    index = index_character(model, k, box, v)
    spikes = FormalCharacter({w: s for s, w in _root_product(rs)})
    return (index * spikes).restrict(inner)


def dominant_multiplicity(model: FixedPointModel, rs: RootSystem | None, k: int,
                          lam: Sequence[int], v: Polarization | None = None) -> int:
    """Multiplicity of the irreducible with highest weight ``lam`` in the index of ``L^k``."""
    rs = rs or model.roots
    if not is_integral(lam) or not rs.is_dominant(lam):
        raise NotDominant(f"{tuple(lam)} is not dominant")
    return multiplicity_function(model, rs, v)(k, lam)


def oracle_direction(model: FixedPointModel) -> tuple:
    """Deterministic, well-conditioned integer direction generic for all tangent weights."""
    weights = [w for p in model.points for w in p.tangent_weights]
    best, best_score = None, None
    for u in _small_vectors(model.rank, 3):
        vals = [abs(la.dot(u, w)) for w in weights]
        if min(vals) == 0:
            continue
        score = Fraction(min(vals), max(abs(x) for x in u))
        if best_score is None or score > best_score:
            best, best_score = u, score
    if best is None:
        raise DegeneratePolarization("no generic oracle direction with entries in [-3, 3]")
    return best


def truncated_series_oracle(model: FixedPointModel, k: int, box: Box) -> FormalCharacter:
    """Index character on ``box`` by multiplying out truncated geometric series.

    Each ``1/(1 - t^a)`` is expanded in the regime where the oracle direction
    ``u`` is positive: ``sum_{m>=0} t^(m a)`` if ``<u,a> > 0``, otherwise
    ``-sum_{m>=1} t^(-m a)``.  All series terms have nonnegative ``u``-level, so
    dropping terms above the highest level in the (translated) box is exact.
    """
    u = oracle_direction(model)
    total: dict = {}
    if box.empty:
        return FormalCharacter()
    corners = list(itertools.product(*zip(box.lo, box.hi)))
    for p in model.points:
        base = tuple(k * x for x in p.mu)
        budget = max(la.dot(u, c) for c in corners) - la.dot(u, base)
        if budget < 0:
            continue
        poly = {tuple(0 for _ in base): 1}
        for a in p.tangent_weights:
            s = la.dot(u, a)
            if s > 0:
                step, first, sign = a, 0, 1
            else:
                step, first, sign = tuple(-x for x in a), 1, -1
            lvl = abs(s)
            series = []
            m = first
            while m * lvl <= budget:
                series.append((tuple(m * x for x in step), sign, m * lvl))
                m += 1
            new: dict = {}
            for e, c in poly.items():
                le = la.dot(u, e)
                for te, ts, tl in series:
                    if le + tl > budget:
                        break
                    key = tuple(x + y for x, y in zip(e, te))
                    new[key] = new.get(key, 0) + c * ts
            poly = new
        for e, c in poly.items():
            lam = tuple(x + y for x, y in zip(e, base))
            if lam in box:
                total[lam] = total.get(lam, 0) + c
    return FormalCharacter(total)


def clear_caches() -> None:
    _kostant.cache_clear()
    _positive_functional.cache_clear()

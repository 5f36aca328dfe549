"""Quasi-polynomials on ``Z x Lambda``: representation, exact fitting, rays.

A quasi-polynomial is stored as a residue table modulo ``N`` (one polynomial
per residue class of ``(k, lambda) mod N``) together with the coarsest period
lattice ``Gamma'`` (containing ``N Z^n``) under which the table is invariant.
Polynomials are dicts from exponent tuples to Fractions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, lcm
from typing import Callable, Iterator, Sequence

from . import _linalg as la
from .errors import NotInRegion, NotQuasiPolynomial
from .polyhedra import RationalPolytope, _s

Poly = dict  # exponent tuple -> Fraction

DEFAULT_HORIZON = 30
MAX_HORIZON = 240
SAMPLE_BUDGET = 40_000  # horizon extension stops once this many points are cached
REFINE_LIMIT = 5000  # largest residue table we try to coarsen


# ---- regions ----------------------------------------------------------------

@dataclass(frozen=True)
class ConeRegion:
    """``C_p = {(t, t tau) : t > 0, tau in p}`` for a rational polytope ``p``."""

    base_polytope: RationalPolytope

    @property
    def rank(self) -> int:
        return self.base_polytope.ambient_rank

    def contains(self, k: int, lam: Sequence) -> bool:
        if k <= 0:
            return False
        return la.scale(Fraction(1, k), la.vec(lam)) in self.base_polytope

    def lattice_points(self, k: int) -> list[tuple]:
        if k <= 0:
            return []
        p = self.base_polytope
        if p.ambient_rank == 0:
            return [()]
        verts = [la.scale(k, v) for v in p.vertices]
        lo = [ceil(min(v[i] for v in verts)) for i in range(p.ambient_rank)]
        hi = [floor(max(v[i] for v in verts)) for i in range(p.ambient_rank)]
        eqs = p.affine_hull.equations()
        hs = p.halfspaces
        out = []
        for lam in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
            if all(la.dot(n, lam) == k * c for n, c in eqs) and \
                    all(la.dot(n, lam) <= k * c for n, c in hs):
                out.append(lam)
        return out

    def points(self, horizon: int) -> Iterator[tuple[int, tuple]]:
        for k in range(1, horizon + 1):
            for lam in self.lattice_points(k):
                yield k, lam


@dataclass(frozen=True)
class RayDomain:
    """The positive multiples of ``step`` as a domain in ``Z`` (no lambda variables)."""

    step: int = 1

    rank = 0

    def contains(self, k: int, lam: Sequence = ()) -> bool:
        return k > 0 and k % self.step == 0

    def lattice_points(self, k: int) -> list[tuple]:
        return [()] if self.contains(k) else []

    def points(self, horizon: int) -> Iterator[tuple[int, tuple]]:
        for k in range(self.step, horizon + 1, self.step):
            yield k, ()


# ---- polynomials ----------------------------------------------------------------

def monomials(n: int, degree: int) -> list[tuple]:
    out = [e for e in itertools.product(range(degree + 1), repeat=n) if sum(e) <= degree]
    out.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    return out


def _monomial_value(e: tuple, x: tuple) -> int:
    v = 1
    for xi, ei in zip(x, e):
        if ei:
            v *= xi ** ei
    return v


def poly_eval(poly: Poly, x: Sequence) -> Fraction:
    x = tuple(x)
    return sum((c * _monomial_value(e, x) for e, c in poly.items()), Fraction(0))


def poly_degree(poly: Poly) -> int:
    return max((sum(e) for e, c in poly.items() if c), default=0)


def _clean(poly: Poly) -> Poly:
    return {e: Fraction(c) for e, c in sorted(poly.items()) if c}


# ---- the quasi-polynomial type --------------------------------------------------

@dataclass(frozen=True)
class QuasiPolynomial:
    ambient_rank: int
    modulus: int
    table: dict = field(repr=False)    # residue mod N -> Poly, every residue present
    period_lattice: tuple = ()         # Hermite basis rows generating Gamma'
    degree_bound: int = 0
    domain_step: int = 1               # k restricted to multiples of this (rays)

    def __post_init__(self):
        if not self.period_lattice:
            n, N = self.ambient_rank, self.modulus
            basis = tuple(tuple(N * int(i == j) for j in range(n)) for i in range(n))
            object.__setattr__(self, "period_lattice", basis)
        if la.det([list(r) for r in self.period_lattice]) == 0:
            raise ValueError("period lattice is degenerate")

    def __call__(self, k: int, lam: Sequence = ()) -> Fraction:
        x = (int(k),) + tuple(int(v) for v in lam)
        if len(x) != self.ambient_rank:
            raise ValueError(f"expected {self.ambient_rank} coordinates, got {len(x)}")
        res = tuple(v % self.modulus for v in x)
        return poly_eval(self.table.get(res, {}), x)

    @property
    def period_matrix(self) -> list[list[int]]:
        """Columns generate the period lattice."""
        return la.transpose([list(r) for r in self.period_lattice]) if self.period_lattice else []

    @property
    def index(self) -> int:
        """Index of the period lattice: the number of cosets."""
        return abs(int(la.det([list(r) for r in self.period_lattice])))

    @property
    def degree(self) -> int:
        return max((poly_degree(p) for p in self.table.values()), default=0)

    @property
    def period(self) -> int:
        """Smallest ``N`` with ``N Z^n`` inside the period lattice."""
        for n in range(1, self.modulus + 1):
            if self.modulus % n == 0 and all(
                    self._in_lattice(tuple(n * int(i == j) for j in range(self.ambient_rank)))
                    for i in range(self.ambient_rank)):
                return n
        return self.modulus

    def _in_lattice(self, v: tuple) -> bool:
        sol = la.solve(la.transpose([list(r) for r in self.period_lattice]), v)
        return sol is not None and all(x.denominator == 1 for x in sol)

    def cosets(self) -> list[tuple[tuple, Poly]]:
        """One ``(representative, polynomial)`` pair per coset of the period lattice."""
        seen: list[tuple] = []
        out = []
        for res in sorted(self.table):
            if any(self._in_lattice(la.intvec(la.sub(res, r))) for r in seen):
                continue
            seen.append(res)
            out.append((res, self.table[res]))
        return out

    @property
    def coset_polys(self) -> dict:
        return dict(self.cosets())

    def to_json(self) -> dict:
        return {
            "ambient_rank": self.ambient_rank,
            "modulus": self.modulus,
            "period_matrix": self.period_matrix,
            "degree_bound": self.degree_bound,
            "domain_step": self.domain_step,
            "variables": ["k"] + [f"lambda{i + 1}" for i in range(self.ambient_rank - 1)],
            "cosets": [
                {"rep": list(rep),
                 "monomial_coefficients": [[list(e), _s(c)] for e, c in sorted(poly.items())]}
                for rep, poly in self.cosets()
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "QuasiPolynomial":
        n, N = int(doc["ambient_rank"]), int(doc["modulus"])
        cols = [la.intvec(r) for r in doc["period_matrix"]]
        basis = tuple(la.hermite_basis(la.transpose([list(c) for c in cols]), n)) if cols else ()
        reps = [(tuple(c["rep"]), {tuple(e): la.frac(v) for e, v in c["monomial_coefficients"]})
                for c in doc["cosets"]]
        shell = cls(n, N, {}, basis, int(doc.get("degree_bound", 0)), int(doc.get("domain_step", 1)))
        table = {}
        for res in itertools.product(range(N), repeat=n):
            for rep, poly in reps:
                if shell._in_lattice(la.intvec(la.sub(res, rep))):
                    table[res] = poly
                    break
            else:
                raise ValueError(f"residue {res} is in no listed coset")
        return cls(n, N, table, basis, shell.degree_bound, shell.domain_step)


# ---- refinement ---------------------------------------------------------------

def _refine(n: int, N: int, table: dict) -> tuple[dict, tuple]:
    """Coarsen ``N Z^n`` to the largest lattice under which ``table`` is invariant.

    ``table`` may omit residues that never occur in the domain; those act as
    wildcards and are filled in from their coset.
    """
    gens = [tuple(N * int(i == j) for j in range(n)) for i in range(n)]
    if N == 1 or N ** n > REFINE_LIMIT:
        full = {r: table.get(r, {}) for r in itertools.product(range(N), repeat=n)}
        return full, tuple(la.hermite_basis(gens, n))
    keys = list(table)

    def shift(c, v):
        return tuple((a + b) % N for a, b in zip(c, v))

    def invariant(v):
        return all(table[shift(c, v)] == table[c] for c in keys if shift(c, v) in table)

    group = {(0,) * n}
    for v in itertools.product(range(N), repeat=n):
        if v in group or not invariant(v):
            continue
        new = set(group)
        frontier = list(group)
        while frontier:
            g = frontier.pop()
            h = shift(g, v)
            if h not in new:
                new.add(h)
                frontier.append(h)
        if all(invariant(h) for h in new - group):
            group = new
            gens.append(v)
    full = {}
    for r in itertools.product(range(N), repeat=n):
        poly = {}
        for h in sorted(group):
            s = shift(r, h)
            if s in table:
                poly = table[s]
                break
        full[r] = poly
    return full, tuple(la.hermite_basis(gens, n))


# ---- fitting --------------------------------------------------------------------

class _Samples:
    """Sampler values on region points, computed once and extended on demand."""

    def __init__(self, sampler, region):
        self.sampler = sampler
        self.region = region
        self.horizon = 0
        self.values: dict = {}

    def extend(self, horizon: int, budget: int | None = None) -> None:
        for k in range(self.horizon + 1, horizon + 1):
            if budget is not None and len(self.values) >= budget:
                return
            for lam in self.region.lattice_points(k):
                v = self.sampler(k, lam)
                if la.frac(v).denominator != 1:
                    raise NotQuasiPolynomial(0, 0, f"sampler returned non-integer {v} at {(k, lam)}")
                self.values[(k,) + tuple(lam)] = int(v)
            self.horizon = k


def _fit_class(points: list[tuple], values: dict, mons: list[tuple]):
    """Fit one residue class; returns (poly, held-out points) or None."""
    echelon: list[tuple[int, list]] = []
    chosen = []
    for x in points:
        row = [Fraction(_monomial_value(e, x)) for e in mons]
        red = list(row)
        for piv, b in echelon:
            if red[piv]:
                f = red[piv] / b[piv]
                red = [p - f * q for p, q in zip(red, b)]
        nz = next((i for i, v in enumerate(red) if v), None)
        if nz is None:
            continue
        echelon.append((nz, red))
        chosen.append(x)
        if len(chosen) == len(mons):
            break
    a = [[Fraction(_monomial_value(e, x)) for e in mons] for x in chosen]
    sol = la.solve(a, [values[x] for x in chosen]) if chosen else ()
    if sol is None:
        return None
    poly = _clean(dict(zip(mons, sol)))
    chosen_set = set(chosen)
    held = [x for x in points if x not in chosen_set]
    return poly, len(chosen), held


def fit(sampler: Callable[[int, tuple], int], region, degree_bound: int,
        period_bound: int, horizon: int = DEFAULT_HORIZON) -> QuasiPolynomial:
    """Smallest period ``N``, then smallest degree ``D``, that fits and validates.

    For each residue class mod ``N`` the lowest-``k`` points building full rank
    are interpolated exactly; every other sampled point of the class up to the
    horizon is held out and must match.  The horizon is extended when a class
    has fewer held-out points than fitting points.
    """
    n = 1 + region.rank
    samples = _Samples(sampler, region)
    samples.extend(horizon)
    for N in range(1, period_bound + 1):
        for D in range(degree_bound + 1):
            qp = _try_fit(samples, n, N, D, horizon)
            if qp is not None:
                return qp
    raise NotQuasiPolynomial(period_bound, degree_bound)


def _try_fit(samples: _Samples, n: int, N: int, D: int, horizon: int):
    mons = monomials(n, D)
    h = horizon
    while True:
        if h > samples.horizon:
            samples.extend(h, SAMPLE_BUDGET)
            if samples.horizon < h:
                return None  # too expensive to validate this candidate
        classes: dict = {}
        for x in sorted(samples.values):
            if x[0] <= h:
                classes.setdefault(tuple(v % N for v in x), []).append(x)
        table = {}
        short = False
        for res, pts in classes.items():
            got = _fit_class(pts, samples.values, mons)
            if got is None:
                return None
            poly, used, held = got
            if len(held) < used:
                short = True
            if any(poly_eval(poly, x) != samples.values[x] for x in held):
                return None
            table[res] = poly
        if not short:
            break
        if h >= MAX_HORIZON:
            return None
        h *= 2
    full, basis = _refine(n, N, table)
    qp = QuasiPolynomial(n, N, full, basis, D, getattr(samples.region, "step", 1))
    for x, v in samples.values.items():
        val = qp(x[0], x[1:])
        if val.denominator != 1 or val != v:
            raise AssertionError(f"fitted value {val} at {x} disagrees with sample {v}")
    return qp


# ---- rays and comparison --------------------------------------------------------

def ray_step(xi: Sequence) -> int:
    """``n_xi``: least positive integer with ``n_xi * xi`` integral."""
    return lcm(1, *(la.frac(x).denominator for x in xi))


def restrict_to_ray(qp_or_sampler, xi: Sequence, region: ConeRegion | None = None,
                    degree_bound: int | None = None, period_bound: int = 12,
                    horizon: int = DEFAULT_HORIZON) -> QuasiPolynomial:
    """``f_xi(k) = f(k, k xi)`` on ``n_xi Z_{>0}`` as a one-variable quasi-polynomial."""
    xi = la.vec(xi)
    if region is not None and xi not in region.base_polytope:
        raise NotInRegion(f"{tuple(xi)} is not in the region")
    step = ray_step(xi)
    if isinstance(qp_or_sampler, QuasiPolynomial):
        qp = qp_or_sampler
        if qp.ambient_rank != 1 + len(xi):
            raise ValueError("ray has the wrong rank")
        M = step * qp.modulus
        table = {}
        for r in range(0, M, step):
            k0 = r or M
            lam = tuple(int(k0 * x) for x in xi)
            src = qp.table[tuple(v % qp.modulus for v in (k0,) + lam)]
            poly: dict = {}
            for e, c in src.items():
                coeff = c
                for x, ei in zip(xi, e[1:]):
                    coeff *= x ** ei
                d = (sum(e),)
                poly[d] = poly.get(d, Fraction(0)) + coeff
            table[(r,)] = _clean(poly)
        full, basis = _refine(1, M, table)
        return QuasiPolynomial(1, M, full, basis, qp.degree_bound, step)
    sampler = qp_or_sampler
    d = degree_bound if degree_bound is not None else 3
    return fit(lambda k, _: sampler(k, tuple(int(k * x) for x in xi)), RayDomain(step),
               d, period_bound, horizon)


def equals(a: QuasiPolynomial, b: QuasiPolynomial, region=None) -> bool:
    """Exact comparison on a determining set of region points.

    Uses every region point with ``k <= L (D + 2)`` where ``L`` is the common
    modulus and ``D`` the larger degree, so each coset of the common
    refinement meets at least ``D + 1`` values along ``k``.
    """
    if a.ambient_rank != b.ambient_rank:
        raise ValueError("different ambient ranks")
    if region is None:
        if a.ambient_rank != 1:
            raise ValueError("a region is required above one variable")
        region = RayDomain(lcm(a.domain_step, b.domain_step))
    L = lcm(a.modulus, b.modulus, getattr(region, "step", 1))
    D = max(a.degree, b.degree)
    for k, lam in region.points(L * (D + 2)):
        if a(k, lam) != b(k, lam):
            return False
    return True

"""The reduced side in dimension zero, and certificates comparing both sides.

Torus elements are rotation vectors ``q`` in ``Q^r / Z^r``; ``g = exp(2 pi i q)``
acts on ``t^lambda`` by ``e^(2 pi i <q, lambda>)`` (coordinate pairing).  A
character of a finite abelian group averages to 1 if it is trivial and to 0
otherwise, so each orbifold point contributes an indicator and no complex
arithmetic is needed.

Lift used for ``gL``: at a toric fixed point ``p`` the group ``Gamma`` fixes
every point of the open orbit, and it acts on the fibre of ``L`` over ``p`` by
the weight ``mu_p``; since ``Gamma`` acts trivially on all tangent weights at
``p``, that phase ``<q, mu_p> mod 1`` is the same at every fixed point and is
the phase on the whole line bundle, in particular over the reduced level.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import _linalg as la
from .errors import CheckFailed, InconsistentGKM, NotToricModel, NotWeaklyRegular, QRError
from .localization import FixedPointModel, Polarization, multiplicity_function
from .polyhedra import _s
from .root_lattice import RootSystem


def _mod1(x) -> Fraction:
    x = la.frac(x)
    return x - (x.numerator // x.denominator)


def _qnorm(q: Sequence) -> tuple:
    return tuple(_mod1(x) for x in q)


@dataclass(frozen=True)
class OrbifoldPoint:
    gL_phase: tuple                  # one entry in Q/Z per element of the group
    normal_data: tuple = ()


@dataclass(frozen=True)
class ReducedLevelData:
    xi: tuple
    group: tuple                     # elements q in Q^r / Z^r, identity first
    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "xi", la.vec(self.xi))
        grp = tuple(_qnorm(q) for q in self.group)
        object.__setattr__(self, "group", grp)
        pts = tuple(OrbifoldPoint(tuple(_mod1(x) for x in p.gL_phase), p.normal_data)
                    for p in self.points)
        object.__setattr__(self, "points", pts)
        self._validate()

    def _validate(self):
        grp = self.group
        if not grp:
            raise QRError("the stabilizer group is empty")
        if len(set(grp)) != len(grp):
            raise QRError("repeated group elements")
        index = {q: i for i, q in enumerate(grp)}
        zero = (Fraction(0),) * len(self.xi)
        if zero not in index:
            raise QRError("the group must contain the identity")
        for a, b in itertools.product(grp, repeat=2):
            if _qnorm(la.add(a, b)) not in index:
                raise QRError(f"group not closed: {a} + {b}")
        for p in self.points:
            if len(p.gL_phase) != len(grp):
                raise QRError("gL has the wrong number of entries")
            for a, b in itertools.product(range(len(grp)), repeat=2):
                c = index[_qnorm(la.add(grp[a], grp[b]))]
                if _mod1(p.gL_phase[a] + p.gL_phase[b]) != p.gL_phase[c]:
                    raise QRError("gL is not a homomorphism")

    @property
    def d(self) -> int:
        return len(self.group)

    @property
    def exponent(self) -> int:
        """Least common multiple of the element orders."""
        return lcm(1, *(x.denominator for q in self.group for x in q))

    def to_json(self) -> dict:
        return {
            "xi": [_s(x) for x in self.xi],
            "group": [[_s(x) for x in q] for q in self.group],
            "points": [{"gL": [_s(x) for x in p.gL_phase]} for p in self.points],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ReducedLevelData":
        try:
            return cls(la.vec(doc["xi"]), tuple(la.vec(q) for q in doc["group"]),
                       tuple(OrbifoldPoint(la.vec(p["gL"])) for p in doc["points"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise QRError(f"invalid reduced level document: {exc}") from exc


def _toric_check(model: FixedPointModel) -> None:
    r = model.rank
    for i, p in enumerate(model.points):
        if len(p.tangent_weights) != r or la.rank([list(w) for w in p.tangent_weights]) != r:
            raise NotToricModel(f"point {i} does not carry a basis of {r} tangent weights")
        w = la.transpose([list(x) for x in p.tangent_weights])
        for q in model.points:
            c = la.solve(w, la.sub(q.mu, p.mu))
            if any(x < 0 for x in c):
                raise NotToricModel(f"moment image is not in the tangent cone at point {i}")


def _kernel_group(weights: Sequence[Sequence]) -> set:
    """``{q in Q^r/Z^r : <w, q> in Z for all w}`` for a basis of weights."""
    r = len(weights)
    n = abs(int(la.det([list(w) for w in weights])))
    out = set()
    for c in itertools.product(range(n), repeat=r):
        q = tuple(Fraction(x, n) for x in c)
        if all(la.dot(w, q).denominator == 1 for w in weights):
            out.add(q)
    return out


def derive_level_data(model: FixedPointModel, xi: Sequence, delta=None, components=None) -> ReducedLevelData:
    """Reduced data of a toric model at a weakly regular level ``xi``."""
    from .moment_geometry import enumerate_components, moment_polytope, weakly_regular

    xi = la.vec(xi)
    delta = delta if delta is not None else moment_polytope(model)
    components = components if components is not None else enumerate_components(model)
    if not weakly_regular(xi, delta, components):
        raise NotWeaklyRegular(f"{tuple(xi)} is not a weakly regular value")
    if not model.roots.is_torus:
        raise NotToricModel("reduced data is only derived for torus actions; pass it explicitly")
    _toric_check(model)
    # anchor: the fixed point nearest to xi
    lat = model.lattice
    order = sorted(range(len(model.points)),
                   key=lambda i: (lat.norm2(la.sub(xi, model.points[i].mu)), i))
    anchor = model.points[order[0]]
    group = _kernel_group(anchor.tangent_weights)
    for i in order[1:]:
        if _kernel_group(model.points[i].tangent_weights) != group:
            raise InconsistentGKM(f"generic stabilizer differs at point {i}")
    elems = sorted(group)
    phases = tuple(_mod1(la.dot(q, anchor.mu)) for q in elems)
    for p in model.points:
        if tuple(_mod1(la.dot(q, p.mu)) for q in elems) != phases:
            raise QRError("the stabilizer acts differently on L at different fixed points")
    return ReducedLevelData(xi, tuple(elems), (OrbifoldPoint(phases),))


def kawasaki_point_sum(data: ReducedLevelData, k: int, lam: Sequence[int]) -> int:
    """Dimension-zero orbifold index: one indicator per point."""
    total = 0
    for p in data.points:
        if all(_mod1(k * ph - la.dot(q, lam)) == 0 for q, ph in zip(data.group, p.gL_phase)):
            total += 1
    return total


@dataclass
class QRCertificate:
    model: str
    xi: tuple
    mode: str
    grid: dict
    comparisons: list = field(default_factory=list)   # dicts with label, k, lambda, left, right
    mismatches: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "FAIL" if self.mismatches else "PASS"

    @property
    def left(self) -> list:
        return [c["left"] for c in self.comparisons]

    @property
    def right(self) -> list:
        return [c["right"] for c in self.comparisons]

    def add(self, label: str, k: int, lam, left, right) -> None:
        row = {"label": label, "k": k, "lambda": [_s(x) for x in lam],
               "left": _s(left), "right": _s(right)}
        self.comparisons.append(row)
        if left != right:
            self.mismatches.append(row)

    def to_json(self) -> dict:
        return {
            "model": self.model,
            "xi": None if self.xi is None else [_s(x) for x in self.xi],
            "mode": self.mode,
            "grid": self.grid,
            "verdict": self.verdict,
            "comparisons": self.comparisons,
            "mismatches": self.mismatches,
            "details": self.details,
        }

    def table(self) -> str:
        lines = [f"{self.mode} check on {self.model}: {self.verdict}",
                 f"{'label':<12} {'k':>3} {'lambda':<12} {'left':>6} {'right':>6}"]
        for c in self.comparisons:
            lam = ",".join(str(x) for x in c["lambda"])
            flag = "" if c["left"] == c["right"] else "  <-- mismatch"
            lines.append(f"{c['label']:<12} {c['k']:>3} {lam:<12} {c['left']!s:>6} {c['right']!s:>6}{flag}")
        return "\n".join(lines)


MODES = ("point-case", "fit-case", "vanishing")


def level_data_from_metadata(model: FixedPointModel) -> ReducedLevelData | None:
    levels = model.metadata.get("reduced_levels") or []
    return ReducedLevelData.from_json(levels[0]) if levels else None


def qr_check(model: FixedPointModel, rs: RootSystem | None, xi: Sequence | None, k_max: int,
             mode: str, level: ReducedLevelData | None = None, gamma: Sequence | None = None,
             v: Polarization | None = None, period_bound: int = 12,
             degree_bound: int | None = None) -> QRCertificate:
    """Compare the two sides of [Q,R]=0 on a grid; raises CheckFailed on any mismatch."""
    from .moment_geometry import chamber_touches_zero, construct_p, moment_polytope, weakly_regular
    from .quasipoly import fit

    rs = rs if rs is not None else model.roots
    v = v or Polarization.for_model(model)
    if mode not in MODES:
        raise QRError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
    name = model.name or "model"
    if mode == "vanishing":
        delta = moment_polytope(model, rs)
        if (0,) * model.rank in delta:
            raise QRError("0 is in the moment polytope; the vanishing check does not apply")
        cert = QRCertificate(name, None, mode, {"k": [1, k_max], "lambda": "0"})
        m = multiplicity_function(model, rs, v)
        for k in range(1, k_max + 1):
            cert.add("m(k,0)", k, (0,) * model.rank, m(k, (0,) * model.rank), 0)
        cert.details["delta"] = delta.to_json()
        return _finish(cert)

    con = construct_p(model, rs, gamma)
    xi = la.vec(xi)
    if not weakly_regular(xi, con.delta, con.components):
        raise NotWeaklyRegular(f"{tuple(xi)} is not a weakly regular value")
    if level is None:
        level = level_data_from_metadata(model)
    if level is None:
        level = derive_level_data(model, xi, con.delta, con.components)
    details = {
        "construction": con.to_json(),
        "level": level.to_json(),
        "xi_chamber_touches_zero": chamber_touches_zero(xi, con.delta, con.components),
        "polarization": [_s(x) for x in v.v],
    }
    if mode == "point-case":
        cert = QRCertificate(name, xi, mode, {"k": [1, k_max], "lambda": "C_p lattice points"},
                             details=details)
        m = multiplicity_function(model, rs, v)
        for k in range(1, k_max + 1):
            for lam in con.region.lattice_points(k):
                cert.add("point", k, lam, m(k, lam), kawasaki_point_sum(level, k, lam))
        return _finish(cert)

    # fit-case
    dbound = degree_bound if degree_bound is not None else model.dim // 2 + 1
    m = multiplicity_function(model, rs, v)
    qp = fit(m, con.region, dbound, period_bound, horizon=max(30, k_max))
    zero = (0,) * model.rank
    cert = QRCertificate(name, xi, mode, {"k": [1, k_max], "lambda": "0"}, details=details)
    cert.add("qp(1,0)", 1, zero, qp(1, zero), kawasaki_point_sum(level, 1, zero))
    for k in range(1, k_max + 1):
        cert.add("m(k,0)", k, zero, m(k, zero), qp(k, zero))
    cert.add("period|exp", 0, (), int(level.exponent % qp.period == 0), 1)
    cert.add("degree<=", 0, (), int(qp.degree <= model.dim // 2), 1)
    details["quasi_polynomial"] = qp.to_json()
    return _finish(cert)


def _finish(cert: QRCertificate) -> QRCertificate:
    if cert.mismatches:
        raise CheckFailed(cert)
    return cert

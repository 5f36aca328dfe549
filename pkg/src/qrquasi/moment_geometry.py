"""Moment polytope, fixed-locus components and the cone on which m is quasi-polynomial.

Components of fixed loci of subtori are read off the GKM graph: for each
subspace ``S`` spanned by edge-weight directions, the subtorus with Lie algebra
``ann(S)`` fixes exactly the edges with weight in ``S``, and the connected
components of that subgraph are the components of its fixed set.

The polytope ``p`` is cut out of the affine hull ``I`` of the moment polytope
by one half-space per contributing component, after choosing a small generic
``gamma``.  Genericity is replaced by three checks that can be decided
exactly; they are returned with the chosen ``gamma``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _linalg as la
from .errors import EmptyP, GammaSearchExhausted, InconsistentGKM, ZeroNotInDelta
from .localization import FixedPointModel, _sign_canonical, _small_vectors
from .polyhedra import (AffineSubspace, EmptyPolytope, RationalPolytope,
                        UnboundedPolytope, _canonical_halfspace)
from .quasipoly import ConeRegion
from .root_lattice import RootSystem


def moment_polytope(model: FixedPointModel, rs: RootSystem | None = None) -> RationalPolytope:
    """The moment polytope ``Delta``.

    For a torus this is the hull of the fixed-point moment images.  For a
    nonabelian group it is that hull cut by the closed dominant chamber, unless
    the model declares ``metadata["moment_polytope"]`` (needed when the cut hull
    is strictly larger, as for a coadjoint orbit).  :func:`kirwan_check`
    compares either answer with the support of the multiplicities.
    """
    rs = rs if rs is not None else model.roots
    hull = RationalPolytope.from_points(p.mu for p in model.points)
    if rs is None or rs.is_torus:
        return hull
    declared = model.metadata.get("moment_polytope")
    if declared:
        return RationalPolytope.from_points(la.vec(v) for v in declared)
    return hull.intersect(rs.chamber_halfspaces())


def kirwan_check(model: FixedPointModel, rs: RootSystem | None = None, k_max: int = 4) -> bool:
    """Does ``Delta`` equal the hull of ``lambda / k`` over the support of ``m_G(k, .)``, ``k <= k_max``?"""
    rs = rs if rs is not None else model.roots
    return moment_polytope(model, rs).same_set(_support_hull(model, rs, k_max))


def _support_hull(model: FixedPointModel, rs: RootSystem, k_max: int) -> RationalPolytope:
    from .characters import Box
    from .localization import multiplicity_function

    m = multiplicity_function(model, rs)
    pts = []
    for k in range(1, k_max + 1):
        box = Box.around([la.scale(k, p.mu) for p in model.points])
        pts.extend(la.scale(Fraction(1, k), lam) for lam in box
                   if rs.is_dominant(lam) and m(k, lam) != 0)
    if not pts:
        raise InconsistentGKM(f"no dominant weight occurs for k <= {k_max}")
    return RationalPolytope.from_points(pts)


def principal_hull(delta: RationalPolytope) -> tuple[AffineSubspace, list[tuple]]:
    """Affine hull ``I`` of ``delta`` and an integer basis of its annihilator ``t_I``."""
    hull = delta.affine_hull
    basis = la.integer_kernel(hull.direction_basis, hull.ambient_rank)
    return hull, basis


@dataclass(frozen=True)
class ComponentDatum:
    """A connected component of the fixed set of some subtorus."""

    vertex_set: tuple
    subtorus_basis: tuple          # integer basis of t_C
    weight_span: tuple             # basis of the span of internal edge weights
    affine_hull: AffineSubspace    # A_C
    normal_weights: tuple          # wt(nu_C), symplectic sign convention
    hull: RationalPolytope         # mu(C)

    @property
    def dim(self) -> int:
        return self.affine_hull.dim


def _span_key(vectors: Sequence[Sequence]) -> tuple:
    if not vectors:
        return ()
    a, piv = la.rref([list(v) for v in vectors])
    return tuple(tuple(r) for r in a[: len(piv)])


def enumerate_components(model: FixedPointModel) -> list[ComponentDatum]:
    if model.edges is None:
        raise InconsistentGKM("component enumeration needs GKM edges")
    r = model.rank
    directions = sorted({_sign_canonical(la.primitive(e.weight)) for e in model.edges})
    spans = {}
    for size in range(len(directions) + 1):
        for subset in itertools.combinations(directions, size):
            key = _span_key(subset)
            spans.setdefault(key, subset)
    seen = {}
    for key, subset in spans.items():
        span_rows = [list(v) for v in subset]

        def in_span(w, rows=span_rows):
            return bool(rows) and la.rank(rows + [list(w)]) == la.rank(rows)

        edges = [e for e in model.edges if in_span(e.weight)]
        for verts in _connected_components(len(model.points), edges):
            internal = [e for e in edges if e.i in verts]
            wspan = _span_key([e.weight for e in internal])
            ident = (tuple(sorted(verts)), wspan)
            if ident in seen:
                continue
            seen[ident] = _make_component(model, sorted(verts), internal, wspan, r)
    return [seen[k] for k in sorted(seen, key=lambda k: (-len(k[0]), k[0], k[1]))]


def _connected_components(n: int, edges) -> list[set]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        parent[find(e.i)] = find(e.j)
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), set()).add(i)
    return list(groups.values())


def _make_component(model, verts, internal, wspan, r) -> ComponentDatum:
    v0 = verts[0]
    remaining = list(model.points[v0].tangent_weights)
    for e in internal:
        if v0 in (e.i, e.j):
            remaining.remove(model.edge_tangent_weight(v0, e))
    t_c = la.integer_kernel([e.weight for e in internal], r) if internal else \
        [tuple(int(i == j) for j in range(r)) for i in range(r)]
    mus = [model.points[i].mu for i in verts]
    return ComponentDatum(
        vertex_set=tuple(verts),
        subtorus_basis=tuple(t_c),
        weight_span=wspan,
        affine_hull=AffineSubspace.hull(mus),
        normal_weights=tuple(tuple(-x for x in w) for w in remaining),
        hull=RationalPolytope.from_points(mus),
    )


def _segment_meets(sub: AffineSubspace, end: Sequence) -> bool:
    """Does the half-open segment ``(0, end]`` meet the affine subspace?"""
    end = la.vec(end)
    s_value = None
    for n, c in sub.equations():
        a = la.dot(n, end)
        if a == 0:
            if c != 0:
                return False
            continue
        s = c / a
        if s_value is not None and s != s_value:
            return False
        s_value = s
    if s_value is None:
        return True  # the whole line through 0 and end lies in sub
    return 0 < s_value <= 1


def weakly_regular(xi: Sequence, delta: RationalPolytope,
                   components: Sequence[ComponentDatum]) -> bool:
    """``xi`` in the relative interior of ``delta`` and off every wall ``A_C`` properly inside ``I``."""
    xi = la.vec(xi)
    if not delta.in_relative_interior(xi):
        return False
    I = delta.affine_hull
    for c in components:
        if c.dim < I.dim and I.contains_subspace(c.affine_hull) and xi in c.affine_hull:
            return False
    return True


def chamber_touches_zero(xi: Sequence, delta: RationalPolytope,
                         components: Sequence[ComponentDatum]) -> bool:
    """Is ``xi`` in a weakly regular chamber whose closure contains 0?

    Sufficient test: ``xi`` is weakly regular and the segment ``(0, xi]`` crosses
    no wall, so the whole segment stays in one chamber.
    """
    if not weakly_regular(xi, delta, components):
        return False
    I = delta.affine_hull
    if (0,) * I.ambient_rank not in delta:
        return False
    for c in components:
        if c.dim < I.dim and I.contains_subspace(c.affine_hull) and _segment_meets(c.affine_hull, xi):
            return False
    return True


@dataclass(frozen=True)
class GammaChoice:
    gamma: tuple
    gamma_I: tuple
    checks: dict


def gamma_checks(gamma: Sequence, delta: RationalPolytope,
                 components: Sequence[ComponentDatum], rs: RootSystem) -> dict:
    """Evaluate the decidable conditions a usable ``gamma`` must satisfy."""
    g = la.vec(gamma)
    lat = rs.lattice
    I = delta.affine_hull
    g_I = I.project(g, lat.gram)
    out = {"dominant": rs.is_torus or rs.is_strictly_dominant(g)}
    norm_ok = True
    for c in components:
        if (0,) * lat.rank not in c.affine_hull:
            a = c.affine_hull.nearest_to_origin(lat.gram)
            if not lat.norm2(g) < lat.norm2(a):
                norm_ok = False
    out["short"] = norm_ok
    out["chamber"] = _chamber_ok(g_I, delta, components)
    out["generic"] = all(
        c.affine_hull.project(g, lat.gram) != g_I
        for c in components if not c.affine_hull.same_as(I)
    )
    return out


def _chamber_ok(g_I, delta, components) -> bool:
    if delta.dim == 0:
        return delta.in_relative_interior(g_I)
    return chamber_touches_zero(g_I, delta, components)


def _gamma_directions(delta: RationalPolytope, rank: int) -> list[tuple]:
    dirs = []
    c = delta.centroid()
    if any(c):
        dirs.append(c)
        for u in _small_vectors(rank, 1):
            dirs.append(la.add(c, la.scale(Fraction(1, 5), u)))
    small = sorted(_small_vectors(rank, 2),
                   key=lambda u: (max(abs(x) for x in u), sum(abs(x) for x in u), tuple(-x for x in u)))
    dirs.extend(la.vec(u) for u in small)
    return dirs


def choose_gamma(delta: RationalPolytope, components: Sequence[ComponentDatum],
                 rs: RootSystem, max_halvings: int = 24) -> GammaChoice:
    """Sweep ``eps * u`` over a fixed direction list with shrinking ``eps``."""
    rank = rs.lattice.rank
    if (0,) * rank not in delta:
        raise ZeroNotInDelta("0 is not in the moment polytope")
    dirs = _gamma_directions(delta, rank)
    eps = Fraction(1, 4)
    for _ in range(max_halvings):
        for u in dirs:
            g = la.scale(eps, u)
            checks = gamma_checks(g, delta, components, rs)
            if all(checks.values()):
                return GammaChoice(g, delta.affine_hull.project(g, rs.lattice.gram), checks)
        eps /= 2
    raise GammaSearchExhausted("no gamma passed all checks; pass one explicitly")


def validate_gamma(gamma, delta, components, rs) -> GammaChoice:
    g = la.vec(gamma)
    checks = gamma_checks(g, delta, components, rs)
    return GammaChoice(g, delta.affine_hull.project(g, rs.lattice.gram), checks)


@dataclass(frozen=True)
class HalfspaceCertificate:
    component: ComponentDatum
    gamma_C: tuple
    tau_C: tuple
    sigma_C: tuple
    tau_sigma: Fraction
    contributes: bool          # gamma_C lies in mu(C)
    principal: bool            # the distinguished component with A_C = I
    halfspace: tuple | None    # (normal, offset): normal . xi <= offset
    unmatched_roots: tuple = ()

    def to_json(self) -> dict:
        from .polyhedra import _s

        return {
            "vertices": list(self.component.vertex_set),
            "A_C": self.component.affine_hull.to_json(),
            "gamma_C": [_s(x) for x in self.gamma_C],
            "tau_C": [_s(x) for x in self.tau_C],
            "sigma_C": [_s(x) for x in self.sigma_C],
            "tau_sigma": _s(self.tau_sigma),
            "contributes": self.contributes,
            "principal": self.principal,
            "halfspace": None if self.halfspace is None else {
                "normal": [_s(x) for x in self.halfspace[0]],
                "offset": _s(self.halfspace[1]),
            },
            "unmatched_roots": [list(a) for a in self.unmatched_roots],
        }


def component_halfspaces(components: Sequence[ComponentDatum], gamma: Sequence,
                         rs: RootSystem, delta: RationalPolytope) -> list[HalfspaceCertificate]:
    lat = rs.lattice
    g = la.vec(gamma)
    I = delta.affine_hull
    g_I = I.project(g, lat.gram)
    out = []
    for c in components:
        g_c = c.affine_hull.project(g, lat.gram)
        tau = la.sub(g_c, g)
        principal = c.affine_hull.same_as(I) and g_I in c.hull
        contributes = g_c in c.hull
        sigma, unmatched = _sigma(c, tau, rs)
        ts = lat.inner(tau, sigma)
        hs = None
        if contributes and not principal and any(tau):
            hs = _canonical_halfspace(lat.lower(tau), lat.inner(tau, g_c))
        out.append(HalfspaceCertificate(c, g_c, tau, sigma, ts, contributes, principal, hs,
                                        tuple(unmatched)))
    return out


def _sigma(c: ComponentDatum, tau: tuple, rs: RootSystem):
    """Sum of the normal weights pairing positively with ``tau``, root copies removed."""
    lat = rs.lattice
    weights = [la.vec(w) for w in c.normal_weights]
    span = [list(v) for v in c.weight_span]
    unmatched = []
    for a in rs.positive_roots:
        if lat.inner(tau, a) <= 0:
            continue
        for i, d in enumerate(weights):
            diff = la.sub(d, a)
            if not any(diff) or (span and la.rank(span + [list(diff)]) == len(span)):
                del weights[i]
                break
        else:
            unmatched.append(a)
    sigma = (Fraction(0),) * lat.rank
    for d in weights:
        if lat.inner(tau, d) > 0:
            sigma = la.add(sigma, d)
    return sigma, unmatched


@dataclass(frozen=True)
class PConstruction:
    """Everything needed to re-derive ``p`` and the cone over it."""

    delta: RationalPolytope
    I: AffineSubspace
    t_I_basis: tuple
    components: tuple
    gamma: GammaChoice
    certificates: tuple
    p: RationalPolytope
    region: ConeRegion
    clipped_to_delta: bool

    @property
    def halfspaces(self) -> list[tuple]:
        return [c.halfspace for c in self.certificates if c.halfspace is not None]

    def to_json(self) -> dict:
        from .polyhedra import _s

        return {
            "delta": self.delta.to_json(),
            "I": self.I.to_json(),
            "t_I_basis": [list(b) for b in self.t_I_basis],
            "gamma": [_s(x) for x in self.gamma.gamma],
            "gamma_I": [_s(x) for x in self.gamma.gamma_I],
            "gamma_checks": dict(sorted(self.gamma.checks.items())),
            "components": [c.to_json() for c in self.certificates],
            "p": self.p.to_json(),
            "clipped_to_delta": self.clipped_to_delta,
        }


def polytope_p(I: AffineSubspace, certificates: Sequence[HalfspaceCertificate],
               delta: RationalPolytope) -> tuple[RationalPolytope, bool]:
    """``I`` cut by the component half-spaces; clipped to ``delta`` only if needed.

    Returns the polytope and whether clipping was applied.  Clipping only ever
    shrinks the polytope, which keeps quasi-polynomiality on its cone.
    """
    hs = [c.halfspace for c in certificates if c.halfspace is not None]
    clipped = False
    try:
        p = RationalPolytope.from_halfspaces(hs, I)
        if not delta.contains_polytope(p):
            raise UnboundedPolytope("not inside delta")
    except UnboundedPolytope:
        clipped = True
        try:
            p = RationalPolytope.from_halfspaces(hs + list(delta.halfspaces), I)
        except EmptyPolytope as exc:
            raise EmptyP(str(exc)) from exc
    except EmptyPolytope as exc:
        raise EmptyP(str(exc)) from exc
    zero = (0,) * I.ambient_rank
    if zero not in p:
        raise EmptyP("0 is not in p; choose another gamma")
    if p.dim != delta.dim:
        raise EmptyP(f"p has dimension {p.dim}, delta has {delta.dim}; choose another gamma")
    return p, clipped


def construct_p(model: FixedPointModel, rs: RootSystem | None = None,
                gamma: Sequence | None = None) -> PConstruction:
    """Moment polytope, components, gamma, half-spaces, ``p`` and its cone."""
    rs = rs if rs is not None else model.roots
    delta = moment_polytope(model, rs)
    I, t_I = principal_hull(delta)
    comps = enumerate_components(model)
    if (0,) * model.rank not in delta:
        raise ZeroNotInDelta("0 is not in the moment polytope")
    if gamma is None:
        choice = choose_gamma(delta, comps, rs)
    else:
        choice = validate_gamma(gamma, delta, comps, rs)
        if not all(choice.checks.values()):
            failed = [k for k, v in choice.checks.items() if not v]
            raise GammaSearchExhausted(f"gamma {tuple(gamma)} fails checks: {failed}")
    certs = component_halfspaces(comps, choice.gamma, rs, delta)
    p, clipped = polytope_p(I, certs, delta)
    return PConstruction(delta, I, tuple(t_I), tuple(comps), choice, tuple(certs), p,
                         ConeRegion(p), clipped)

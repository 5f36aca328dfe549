"""Example models and the JSON model document format.

Every generator returns a :class:`FixedPointModel`; ``a*b`` names build the
product of two generators on the direct-sum lattice.  Documents store numbers
as integers or ``"p/q"`` strings.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from fractions import Fraction
from typing import Callable

from . import _linalg as la
from .errors import QRError, UnknownExample
from .localization import Edge, FixedPoint, FixedPointModel
from .polyhedra import _s
from .root_lattice import WeightLattice, build_root_system, torus


def _model(name, rank, points, edges, simple=(), gram=None, metadata=None) -> FixedPointModel:
    lat = WeightLattice(rank, gram) if gram is not None else WeightLattice.standard(rank)
    rs = build_root_system(simple, lat) if simple else torus(lat)
    return FixedPointModel(lat, tuple(FixedPoint(mu, tw) for mu, tw in points),
                           tuple(Edge(i, j, tuple(w)) for i, j, w in edges), rs, name,
                           metadata or {})


def cp1() -> FixedPointModel:
    return _model("cp1", 1, [((0,), [(1,)]), ((1,), [(-1,)])], [(0, 1, (1,))])


def cp1_shifted() -> FixedPointModel:
    """CP^1 with L-weights 1 and 2, so the moment polytope [1, 2] misses 0."""
    return _model("cp1-shifted", 1, [((1,), [(1,)]), ((2,), [(-1,)])], [(0, 1, (1,))])


def cp2() -> FixedPointModel:
    pts = [((0, 0), [(1, 0), (0, 1)]),
           ((1, 0), [(-1, 0), (-1, 1)]),
           ((0, 1), [(0, -1), (1, -1)])]
    return _model("cp2", 2, pts, [(0, 1, (1, 0)), (0, 2, (0, 1)), (1, 2, (-1, 1))])


def s2_symmetric() -> FixedPointModel:
    return _model("s2-symmetric", 1, [((-1,), [(1,)]), ((1,), [(-1,)])], [(0, 1, (1,))])


def s2_weight2() -> FixedPointModel:
    """Rotation of S^2 at speed 2 with moment polytope [-1, 1]."""
    return _model("s2-weight2", 1, [((-1,), [(2,)]), ((1,), [(-2,)])], [(0, 1, (2,))])


def a1_orbit() -> FixedPointModel:
    """The coadjoint orbit CP^1 of SU(2) through the fundamental weight.

    Weights are written in the fundamental-weight basis: the simple root is 2
    and the Gram matrix is 1/2.  Its moment polytope is the single point 1,
    smaller than the fixed-point hull cut by the chamber, so it is declared.
    """
    return _model("a1-orbit", 1, [((1,), [(-2,)]), ((-1,), [(2,)])], [(0, 1, (2,))],
                  simple=[(2,)], gram=[[Fraction(1, 2)]], metadata={"moment_polytope": [["1"]]})


def p1xp1_su2_diagonal() -> FixedPointModel:
    m = diagonal_product(a1_orbit(), a1_orbit(), "p1xp1-su2-diagonal")
    # The level set near 0 is one point with stabilizer the centre of SU(2),
    # acting trivially on L; this is not a toric model so the reduced data
    # is recorded here rather than derived.
    return dataclasses.replace(m, metadata={"reduced_levels": [{
        "xi": ["1/2"], "group": [["0"], ["1/2"]], "points": [{"gL": ["0", "0"]}],
    }]})


def p1xp1_weight2() -> FixedPointModel:
    return product(cp1(), s2_weight2(), "p1xp1-weight2")


def p1xp1_weight2_unshifted() -> FixedPointModel:
    """Same space with the second factor's moment map moved to [0, 2]."""
    s = _model("s2-weight2-up", 1, [((0,), [(2,)]), ((2,), [(-2,)])], [(0, 1, (2,))])
    return product(cp1(), s, "p1xp1-weight2-unshifted")


GENERATORS: dict[str, Callable[[], FixedPointModel]] = {
    "cp1": cp1,
    "cp1-shifted": cp1_shifted,
    "cp2": cp2,
    "s2-symmetric": s2_symmetric,
    "s2-weight2": s2_weight2,
    "a1-orbit": a1_orbit,
    "p1xp1-su2-diagonal": p1xp1_su2_diagonal,
    "p1xp1-weight2": p1xp1_weight2,
}

# the models every acceptance sweep runs over
CORE_NAMES = ("cp1", "cp1-shifted", "cp2", "s2-symmetric", "a1-orbit",
              "p1xp1-su2-diagonal", "p1xp1-weight2")


def _block(a, b):
    ra, rb = len(a), len(b)
    return [list(a[i]) + [0] * rb for i in range(ra)] + [[0] * ra + list(b[i]) for i in range(rb)]


def product(a: FixedPointModel, b: FixedPointModel, name: str | None = None) -> FixedPointModel:
    """``M_a x M_b`` acted on by the product group (direct-sum weight lattice)."""
    ra, rb = a.rank, b.rank
    za, zb = (0,) * ra, (0,) * rb
    lat = WeightLattice(ra + rb, _block(a.lattice.gram, b.lattice.gram))
    simple = [tuple(r) + zb for r in a.roots.simple_roots] + [za + tuple(r) for r in b.roots.simple_roots]
    rs = build_root_system(simple, lat) if simple else torus(lat)
    nb = len(b.points)
    points = []
    for p in a.points:
        for q in b.points:
            tw = [tuple(w) + zb for w in p.tangent_weights] + [za + tuple(w) for w in q.tangent_weights]
            points.append(FixedPoint(p.mu + q.mu, tw))
    edges = []
    for e in a.edges or ():
        for j in range(nb):
            edges.append(Edge(e.i * nb + j, e.j * nb + j, tuple(e.weight) + zb))
    for i in range(len(a.points)):
        for e in b.edges or ():
            edges.append(Edge(i * nb + e.i, i * nb + e.j, za + tuple(e.weight)))
    return FixedPointModel(lat, tuple(points), tuple(edges), rs, name or f"{a.name}*{b.name}")


def diagonal_product(a: FixedPointModel, b: FixedPointModel, name: str | None = None) -> FixedPointModel:
    """``M_a x M_b`` with the diagonal action of a common group."""
    if a.lattice != b.lattice or a.roots.simple_roots != b.roots.simple_roots:
        raise ValueError("diagonal product needs the same lattice and roots")
    nb = len(b.points)
    points = [FixedPoint(la.intvec(la.add(p.mu, q.mu)), p.tangent_weights + q.tangent_weights)
              for p in a.points for q in b.points]
    edges = []
    for e in a.edges or ():
        for j in range(nb):
            edges.append(Edge(e.i * nb + j, e.j * nb + j, e.weight))
    for i in range(len(a.points)):
        for e in b.edges or ():
            edges.append(Edge(i * nb + e.i, i * nb + e.j, e.weight))
    return FixedPointModel(a.lattice, tuple(points), tuple(edges), a.roots, name)


def example_names() -> list[str]:
    return sorted(GENERATORS)


def get_example(name: str) -> FixedPointModel:
    """Generator by name; ``a*b`` is the product of two examples."""
    if "*" in name:
        parts = name.split("*")
        model = get_example(parts[0])
        for p in parts[1:]:
            model = product(model, get_example(p), None)
        return model
    try:
        return GENERATORS[name]()
    except KeyError:
        raise UnknownExample(f"unknown example {name!r}; known: {', '.join(example_names())}") from None


def _num(x):
    return _s(x)


def model_to_document(model: FixedPointModel) -> dict:
    doc = {
        "lattice": {"rank": model.rank, "gram": [[_num(x) for x in row] for row in model.lattice.gram]},
        "fixed_points": [
            {"mu": list(p.mu), "tangent_weights": [list(w) for w in p.tangent_weights]}
            for p in model.points
        ],
        "metadata": dict(model.metadata),
    }
    if model.roots is not None and model.roots.simple_roots:
        doc["roots"] = {"simple": [list(a) for a in model.roots.simple_roots]}
    if model.edges is not None:
        doc["edges"] = [[e.i, e.j, list(e.weight)] for e in model.edges]
    if model.name:
        doc["metadata"].setdefault("name", model.name)
    return doc


def model_from_document(doc: dict) -> FixedPointModel:
    try:
        lat_doc = doc["lattice"]
        rank = int(lat_doc["rank"])
        gram = lat_doc.get("gram")
        lat = WeightLattice(rank, [[la.frac(x) for x in row] for row in gram]) if gram \
            else WeightLattice.standard(rank)
        simple = (doc.get("roots") or {}).get("simple") or []
        rs = build_root_system([la.intvec(a) for a in simple], lat) if simple else torus(lat)
        points = tuple(FixedPoint(la.intvec(p["mu"]), tuple(la.intvec(w) for w in p["tangent_weights"]))
                       for p in doc["fixed_points"])
        edges = doc.get("edges")
        if edges is not None:
            edges = tuple(Edge(int(i), int(j), la.intvec(w)) for i, j, w in edges)
        meta = doc.get("metadata") or {}
        model = FixedPointModel(lat, points, edges, rs, str(meta.get("name", "")), dict(meta))
    except QRError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise QRError(f"invalid model document: {exc}") from exc
    return model


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def document_hash(doc) -> str:
    return hashlib.sha256(json.dumps(doc, sort_keys=True).encode("utf-8")).hexdigest()

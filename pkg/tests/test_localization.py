from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrquasi.characters import Box, FormalCharacter
from qrquasi.corpus import CORE_NAMES
from qrquasi.errors import BoxTooSmall, DegeneratePolarization, InconsistentGKM, NotDominant
from qrquasi.localization import (Edge, FixedPoint, FixedPointModel, Polarization,
                                  dominant_multiplicity, index_character, index_multiplicity,
                                  kostant_partition, naive_partition_count, polarize,
                                  q_multiplicities, truncated_series_oracle)
from qrquasi.root_lattice import WeightLattice, weyl_numerator


def test_polarize_examples():
    assert polarize([(-1,)], (1,)) == (1, (0,), [(1,)])
    assert polarize([(1,)], (1,)) == (-1, (1,), [(1,)])
    eps = Fraction(1, 100)
    assert polarize([(1, 0), (-1, 2)], (1, eps)) == (-1, (1, 0), [(1, 0), (1, -2)])
    with pytest.raises(DegeneratePolarization):
        polarize([(0, 1)], (1, 0))


def _series(weights, v, box):
    """Multiply back: expand sign * t^shift * prod 1/(1-t^b) and times prod (1 - t^-a)."""
    sign, shift, gens = polarize(weights, v)
    expansion = {lam: sign * kostant_partition(gens, tuple(l - s for l, s in zip(lam, shift)))
                 for lam in box}
    prod = FormalCharacter({(0,) * box.rank: 1})
    for a in weights:
        prod = prod * FormalCharacter({(0,) * box.rank: 1, tuple(-x for x in a): -1})
    return prod * FormalCharacter(expansion)


def test_polarize_contract_multiplies_back_to_one():
    v = (Fraction(3, 7), Fraction(1, 11))
    weights = [(1, 0), (-1, 2), (0, -1)]
    box = Box((-6, -6), (6, 6))
    out = _series(weights, v, box)
    # away from the truncation edge the product is exactly 1
    inner = Box((-2, -2), (2, 2))
    assert out.restrict(inner) == FormalCharacter({(0, 0): 1})


def test_kostant_examples():
    assert kostant_partition([(1,)], (3,)) == 1
    assert kostant_partition([(1,), (1,)], (2,)) == 3
    assert kostant_partition([(1, 0), (0, 1), (1, 1)], (1, 1)) == 2
    assert kostant_partition([(1,), (2,)], (-1,)) == 0
    assert kostant_partition([], (0, 0)) == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(-2, 3)).filter(lambda g: g[0] > 0),
                min_size=1, max_size=4),
       st.tuples(st.integers(0, 10), st.integers(-10, 10)))
def test_kostant_matches_enumeration(gens, target):
    assert kostant_partition(gens, target) == naive_partition_count(gens, target)


def test_gkm_validation():
    lat = WeightLattice.standard(1)
    pts = (FixedPoint((0,), [(1,)]), FixedPoint((1,), [(-1,)]))
    FixedPointModel(lat, pts, [Edge(0, 1, (1,))])
    with pytest.raises(InconsistentGKM):
        FixedPointModel(lat, pts, [Edge(0, 1, (2,))])
    with pytest.raises(InconsistentGKM):
        FixedPointModel(lat, pts, [])
    with pytest.raises(ValueError):
        FixedPoint((0,), [(0,)])


def test_cp1_k3(corpus):
    m = corpus("cp1")
    char = index_character(m, 3, Box((-2,), (6,)))
    assert dict(char) == {(0,): 1, (1,): 1, (2,): 1, (3,): 1}
    assert index_multiplicity(m, 3, (40,)) == 0


def test_cp2_k2(corpus):
    m = corpus("cp2")
    char = index_character(m, 2, Box((-1, -1), (3, 3)))
    assert char.total() == 6
    assert set(char) == {(a, b) for a in range(3) for b in range(3) if a + b <= 2}


@pytest.mark.parametrize("name", ["cp1", "cp2", "s2-symmetric", "cp1*cp2"])
def test_toric_support_is_dilated_polytope(corpus, name):
    from qrquasi.moment_geometry import moment_polytope

    m = corpus(name)
    delta = moment_polytope(m)
    for k in (1, 2, 3):
        box = Box.around([tuple(k * x for x in p.mu) for p in m.points], pad=1)
        char = index_character(m, k, box)
        expect = {lam for lam in box if tuple(Fraction(x, k) for x in lam) in delta}
        assert dict(char) == {lam: 1 for lam in expect}


def test_weight2_product_has_parity_support(corpus):
    m = corpus("p1xp1-weight2")
    for k in (1, 2, 3):
        char = index_character(m, k, Box((-1, -k - 1), (k + 1, k + 1)))
        expect = {(a, b): 1 for a in range(k + 1) for b in range(-k, k + 1) if (b - k) % 2 == 0}
        assert dict(char) == expect


def test_oracle_examples(corpus):
    assert dict(truncated_series_oracle(corpus("cp1"), 3, Box((-1,), (5,)))) == {(i,): 1 for i in range(4)}
    assert truncated_series_oracle(corpus("cp2"), 2, Box((-1, -1), (3, 3))).total() == 6
    assert dict(truncated_series_oracle(corpus("cp1"), 0, Box((-2,), (2,)))) == {(0,): 1}


def test_polarization_is_checked(corpus):
    with pytest.raises(DegeneratePolarization):
        index_character(corpus("cp2"), 1, Box((0, 0), (1, 1)), Polarization((1, 1)))


def test_q_multiplicities_torus_equals_index(corpus):
    m = corpus("cp2")
    box = Box((-1, -1), (3, 3))
    assert q_multiplicities(m, m.roots, 2, box) == index_character(m, 2, box)


def test_a1_orbit_is_weyl_numerator(corpus):
    m = corpus("a1-orbit")
    for k in range(0, 6):
        box = Box((-k - 6,), (k + 6,))
        q = q_multiplicities(m, m.roots, k, box)
        assert dict(q) == dict(weyl_numerator((k,), m.roots))
    assert dominant_multiplicity(m, m.roots, 5, (5,)) == 1
    assert dominant_multiplicity(m, m.roots, 5, (3,)) == 0
    with pytest.raises(NotDominant):
        dominant_multiplicity(m, m.roots, 5, (-3,))
    with pytest.raises(BoxTooSmall):
        q_multiplicities(m, m.roots, 1, Box((0,), (1,)))


def _clebsch_gordan(k):
    """Multiplicities of V_j in V_k (x) V_k, j in the fundamental-weight coordinate."""
    return {j: 1 for j in range(0, 2 * k + 1, 2)}


def test_su2_diagonal_clebsch_gordan(corpus):
    m = corpus("p1xp1-su2-diagonal")
    for k in range(1, 6):
        got = {lam: dominant_multiplicity(m, m.roots, k, (lam,)) for lam in range(0, 2 * k + 3)}
        assert {j: v for j, v in got.items() if v} == _clebsch_gordan(k)


@pytest.mark.parametrize("name", CORE_NAMES)
def test_polarization_independence_small(corpus, name):
    m = corpus(name)
    box = Box.around([tuple(3 * x for x in p.mu) for p in m.points], pad=1)
    chars = {index_character(m, 3, box, Polarization.for_model(m, seed)) for seed in (1, 2, 3)}
    assert len(chars) == 1


def test_random_polarizations_differ():
    from qrquasi.corpus import cp2

    vs = {Polarization.for_model(cp2(), s).v for s in range(3)}
    assert len(vs) == 3

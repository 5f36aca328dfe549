from fractions import Fraction

import pytest

from qrquasi.errors import NonFiniteSystem, NotDominant
from qrquasi.root_lattice import (WeightLattice, build_root_system, shifted_action, torus,
                                  weyl_numerator)

A1 = WeightLattice(1, [[Fraction(1, 2)]])
A2 = WeightLattice(2, [[2, -1], [-1, 2]])  # simple-root coordinates, Cartan gram


@pytest.fixture(scope="module")
def a1():
    return build_root_system([(2,)], A1)


@pytest.fixture(scope="module")
def a2():
    return build_root_system([(1, 0), (0, 1)], A2)


def test_lattice_rejects_bad_gram():
    with pytest.raises(ValueError):
        WeightLattice(2, [[1, 2], [0, 1]])
    with pytest.raises(ValueError):
        WeightLattice(2, [[1, 2], [2, 1]])


def test_a1_closure(a1):
    assert a1.positive_roots == ((2,),)
    assert len(a1.weyl_elements) == 2
    assert a1.rho == (1,)


def test_torus_is_trivial():
    rs = torus(WeightLattice.standard(2))
    assert rs.positive_roots == ()
    assert len(rs.weyl_elements) == 1
    assert rs.rho == (0, 0)
    assert rs.identity.length == 0


def test_a2_closure(a2):
    assert len(a2.positive_roots) == 3
    assert len(a2.weyl_elements) == 6
    assert max(w.length for w in a2.weyl_elements) == 3
    assert a2.rho == (1, 1)


def test_b2_and_g2_sizes():
    b2 = build_root_system([(1, -1), (0, 1)], WeightLattice.standard(2))
    assert (len(b2.positive_roots), len(b2.weyl_elements)) == (4, 8)
    g2 = build_root_system([(1, 0), (0, 1)], WeightLattice(2, [[2, -3], [-3, 6]]))
    assert (len(g2.positive_roots), len(g2.weyl_elements)) == (6, 12)


def test_non_crystallographic_input_is_rejected():
    # simple reflections that do not preserve the lattice
    with pytest.raises(ValueError):
        build_root_system([(1, 0), (0, 1)], WeightLattice(2, [[2, -1], [-1, 3]]))
    # a lattice-preserving group under a definite form is finite, so the
    # bound is what guards against runaway closure
    with pytest.raises(NonFiniteSystem):
        build_root_system([(1, 0), (0, 1)], A2, bound=4)


def test_group_closed_under_composition_and_inverse(a2):
    for w in a2.weyl_elements:
        assert any(a2.compose(w, u) == a2.identity for u in a2.weyl_elements)
        for u in a2.weyl_elements:
            a2.compose(w, u)  # raises KeyError if not closed


def test_elements_permute_roots(a2):
    roots = set(a2.positive_roots) | {tuple(-x for x in r) for r in a2.positive_roots}
    for w in a2.weyl_elements:
        assert {w(r) for r in roots} == roots


def test_shifted_action_examples(a1):
    s = a1.weyl_elements[1]
    assert shifted_action(a1.identity, (5,), a1.rho) == (5,)
    assert shifted_action(s, (0,), a1.rho) == (-2,)
    for lam in range(-4, 5):
        assert shifted_action(s, (lam,), a1.rho) == (-lam - 2,)


def test_shifted_action_is_an_action(a2):
    for w in a2.weyl_elements:
        for u in a2.weyl_elements:
            for mu in [(0, 0), (2, -1), (-3, 4)]:
                lhs = shifted_action(w, shifted_action(u, mu, a2.rho), a2.rho)
                assert lhs == shifted_action(a2.compose(w, u), mu, a2.rho)


def test_weyl_numerator_examples(a1):
    assert dict(weyl_numerator((3,), a1)) == {(3,): 1, (-5,): -1}
    assert dict(weyl_numerator((0,), a1)) == {(0,): 1, (-2,): -1}
    t = torus(WeightLattice.standard(2))
    assert dict(weyl_numerator((1, -4), t)) == {(1, -4): 1}
    with pytest.raises(NotDominant):
        weyl_numerator((-1,), a1)


def test_weyl_numerator_properties(a2):
    for lam in [(0, 0), (1, 1), (2, 1), (1, 2), (3, 3)]:
        m = weyl_numerator(lam, a2)
        assert len(m) == 6
        assert m[lam] == 1
        dominant = [mu for mu in m if a2.is_dominant(mu)]
        assert dominant == [lam]
        for mu in list(m):
            for w in a2.weyl_elements:
                assert m[shifted_action(w, mu, a2.rho)] == w.sign * m[mu]

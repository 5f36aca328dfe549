from fractions import Fraction

import pytest

from qrquasi.corpus import cp1, cp2
from qrquasi.errors import NotInRegion, NotQuasiPolynomial
from qrquasi.localization import multiplicity_function
from qrquasi.moment_geometry import construct_p
from qrquasi.polyhedra import RationalPolytope
from qrquasi.quasipoly import (ConeRegion, QuasiPolynomial, RayDomain, equals, fit,
                               restrict_to_ray)

half = Fraction(1, 2)


def region(*pts):
    return ConeRegion(RationalPolytope.from_points(pts))


def test_region_membership():
    r = region((-1,), (1,))
    assert r.contains(3, (-3,)) and not r.contains(3, (4,)) and not r.contains(0, (0,))
    assert r.lattice_points(2) == [(-2,), (-1,), (0,), (1,), (2,)]
    tri = region((0, 0), (half, 0), (0, half))
    assert tri.lattice_points(2) == [(0, 0), (0, 1), (1, 0)]


def test_constant_one():
    qp = fit(lambda k, lam: 1, region((-1,), (1,)), 2, 4)
    assert (qp.period, qp.degree) == (1, 0)
    assert qp.coset_polys == {(0, 0): {(0, 0): 1}}


def test_floor_half_on_a_ray():
    qp = fit(lambda k, lam: k // 2 + 1, RayDomain(), 2, 4)
    assert qp.period == 2
    polys = qp.coset_polys
    assert polys[(0,)] == {(0,): 1, (1,): half}
    assert polys[(1,)] == {(0,): half, (1,): half}


def test_cp1_multiplicity_fit():
    qp = fit(multiplicity_function(cp1()), region((0,), (1,)), 2, 4)
    assert (qp.period, qp.degree) == (1, 0) and qp(7, (3,)) == 1


def test_ehrhart_of_a_triangle():
    # lattice points of k * (triangle with vertices 0, (1/2,0), (0,1/2)) in the plane
    tri = RationalPolytope.from_points([(0, 0), (half, 0), (0, half)])
    count = lambda k, lam: len(ConeRegion(tri).lattice_points(k))
    qp = fit(count, RayDomain(), 3, 4)
    assert qp.period == 2 and qp.degree == 2
    for k in range(1, 40):
        m = k // 2
        assert qp(k) == (m + 1) * (m + 2) // 2


def test_not_quasi_polynomial():
    with pytest.raises(NotQuasiPolynomial):
        fit(lambda k, lam: 2 ** k, RayDomain(), 2, 3)


def test_fit_reproduces_every_point_to_horizon():
    m = multiplicity_function(cp2())
    con = construct_p(cp2())
    qp = fit(m, con.region, 2, 2)
    for k, lam in con.region.points(30):
        assert qp(k, lam) == m(k, lam)


def test_json_round_trip():
    qp = fit(lambda k, lam: (k + lam[0]) // 2, region((-1,), (1,)), 2, 4)
    again = QuasiPolynomial.from_json(qp.to_json())
    assert again.to_json() == qp.to_json()
    for k in range(1, 10):
        for lam in range(-k, k + 1):
            assert again(k, (lam,)) == qp(k, (lam,))


def test_period_lattice_is_refined():
    # depends on k + lambda mod 2 only: index 2, not 4
    qp = fit(lambda k, lam: (k + lam[0]) % 2, region((-1,), (1,)), 1, 4)
    assert qp.modulus == 2 and qp.index == 2 and len(qp.cosets()) == 2


def test_restrict_to_ray_examples():
    r = region((-1,), (1,))
    qp = fit(lambda k, lam: 1, r, 1, 2)
    f0 = restrict_to_ray(qp, (0,), r)
    assert f0.domain_step == 1 and f0(5) == 1
    g = restrict_to_ray(fit(multiplicity_function(cp1()), region((0,), (1,)), 1, 2), (half,))
    assert g.domain_step == 2 and all(g(k) == 1 for k in range(2, 20, 2))
    con = construct_p(cp2())
    f = restrict_to_ray(multiplicity_function(cp2()), (Fraction(1, 3), Fraction(1, 3)), con.region)
    assert f.domain_step == 3 and f(9) == 1
    with pytest.raises(NotInRegion):
        restrict_to_ray(qp, (2,), r)


def test_restrict_qp_agrees_with_sampler_on_ray():
    samp = lambda k, lam: (k + lam[0]) // 2 + lam[0]
    r = region((-1,), (1,))
    qp = fit(samp, r, 2, 4)
    xi = (Fraction(1, 3),)
    f = restrict_to_ray(qp, xi, r)
    g = restrict_to_ray(samp, xi, r)
    assert equals(f, g)
    for k in range(3, 60, 3):
        assert f(k) == samp(k, (k // 3,))


def test_equals_examples():
    one = fit(lambda k, lam: 1, RayDomain(), 1, 1)
    assert equals(one, one)
    table = {(0,): {(0,): Fraction(1)}, (1,): {(0,): Fraction(1)}}
    periodic_one = QuasiPolynomial(1, 2, table)
    assert equals(one, periodic_one)
    floor_half = fit(lambda k, lam: k // 2 + 1, RayDomain(), 2, 4)
    assert not equals(one, floor_half)
    assert equals(floor_half, floor_half)

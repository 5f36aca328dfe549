import cmath
from fractions import Fraction

import pytest

from qrquasi.corpus import cp1, cp1_shifted, cp2, p1xp1_su2_diagonal, p1xp1_weight2, \
    p1xp1_weight2_unshifted
from qrquasi.errors import CheckFailed, NotToricModel, NotWeaklyRegular, QRError
from qrquasi.reduction import (OrbifoldPoint, ReducedLevelData, derive_level_data,
                               kawasaki_point_sum, qr_check)

half, third = Fraction(1, 2), Fraction(1, 3)


def _character_sum(data, k, lam):
    """The averaged root-of-unity sum, in floating point, as an independent check."""
    total = 0
    for p in data.points:
        s = sum(cmath.exp(2j * cmath.pi * float(k * ph - sum(q_i * l for q_i, l in zip(q, lam))))
                for q, ph in zip(data.group, p.gL_phase))
        total += s / data.d
    return total


def test_cp1_trivial_group():
    data = derive_level_data(cp1(), (half,))
    assert data.d == 1 and data.group == ((0,),)
    assert all(kawasaki_point_sum(data, k, (l,)) == 1 for k in range(1, 5) for l in range(-3, 4))


def test_weight2_group():
    data = derive_level_data(p1xp1_weight2_unshifted(), (half, 1))
    assert data.d == 2 and (0, half) in data.group


def test_weight2_parity_law():
    data = derive_level_data(p1xp1_weight2(), (half, third))
    assert data.points[0].gL_phase == (0, half)
    for k in range(1, 7):
        for l2 in range(-6, 7):
            assert kawasaki_point_sum(data, k, (0, l2)) == int((k - l2) % 2 == 0)


def test_explicit_z3_passthrough():
    data = ReducedLevelData((0,), ((0,), (third,), (2 * third,)), (OrbifoldPoint((0, 0, 0)),))
    assert ReducedLevelData.from_json(data.to_json()) == data
    for k in range(1, 4):
        for lam in range(-6, 7):
            assert kawasaki_point_sum(data, k, (lam,)) == int(lam % 3 == 0)


@pytest.mark.parametrize("k", range(1, 7))
def test_indicator_matches_character_sum(k):
    datas = [derive_level_data(p1xp1_weight2(), (half, third)),
             ReducedLevelData((0,), ((0,), (third,), (2 * third,)),
                              (OrbifoldPoint((0, third, 2 * third)), OrbifoldPoint((0, 0, 0))))]
    for data in datas:
        r = len(data.xi)
        for lam in [(x,) * r for x in range(-4, 5)]:
            z = _character_sum(data, k, lam)
            assert abs(z - kawasaki_point_sum(data, k, lam)) < 1e-9


def test_level_data_validation():
    with pytest.raises(QRError):
        ReducedLevelData((0,), ((half,),), (OrbifoldPoint((0,)),))  # no identity
    with pytest.raises(QRError):
        ReducedLevelData((0,), ((0,), (third,)), (OrbifoldPoint((0, 0)),))  # not closed
    with pytest.raises(QRError):
        ReducedLevelData((0,), ((0,), (half,)), (OrbifoldPoint((0, third)),))  # not a homomorphism


def test_kawasaki_periodicity():
    data = derive_level_data(p1xp1_weight2(), (half, third))
    e = data.exponent
    for k in range(1, 5):
        for lam in [(0, -1), (1, 2), (2, 3)]:
            v = kawasaki_point_sum(data, k, lam)
            assert 0 <= v <= len(data.points)
            assert kawasaki_point_sum(data, k + e, (lam[0] + e, lam[1] - e)) == v


def test_derive_errors():
    with pytest.raises(NotWeaklyRegular):
        derive_level_data(cp1(), (1,))
    with pytest.raises(NotToricModel):
        derive_level_data(p1xp1_su2_diagonal(), (half,))


def test_vanishing_check():
    cert = qr_check(cp1_shifted(), None, None, 20, "vanishing")
    assert cert.verdict == "PASS" and len(cert.comparisons) == 20
    with pytest.raises(QRError):
        qr_check(cp1(), None, None, 5, "vanishing")


def test_su2_fit_case():
    cert = qr_check(p1xp1_su2_diagonal(), None, (half,), 20, "fit-case")
    assert cert.verdict == "PASS"
    rows = [c for c in cert.comparisons if c["label"] == "m(k,0)"]
    assert [c["left"] for c in rows] == [1] * 20
    assert cert.details["xi_chamber_touches_zero"]


def test_point_case_z2():
    cert = qr_check(p1xp1_weight2(), None, (half, third), 8, "point-case")
    assert cert.verdict == "PASS"
    assert {c["left"] for c in cert.comparisons} == {0, 1}


def test_wrong_level_data_is_caught():
    bad = ReducedLevelData((half, third), ((0, 0), (0, half)), (OrbifoldPoint((0, 0)),))
    with pytest.raises(CheckFailed) as info:
        qr_check(p1xp1_weight2(), None, (half, third), 4, "point-case", level=bad)
    assert info.value.certificate.verdict == "FAIL"
    assert info.value.certificate.mismatches


def test_certificate_table_renders():
    cert = qr_check(cp2(), None, (third, third), 2, "point-case")
    text = cert.table()
    assert "PASS" in text and text.count("\n") == len(cert.comparisons) + 1

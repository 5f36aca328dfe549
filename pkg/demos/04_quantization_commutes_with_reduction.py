"""Both sides of [Q,R]=0 on three models.

The left side comes from localization; the right side is a finite character
sum over the stabilizer at a reduced level of dimension zero.
"""

from fractions import Fraction

from qrquasi import derive_level_data, get_example, qr_check

half, third = Fraction(1, 2), Fraction(1, 3)

cert = qr_check(get_example("cp1-shifted"), None, None, 20, "vanishing")
print("cp1-shifted, 0 outside the polytope:", cert.verdict)

w2 = get_example("p1xp1-weight2")
level = derive_level_data(w2, (half, third))
print("Z/2 example, stabilizer", level.to_json()["group"], "phases", level.to_json()["points"])
cert = qr_check(w2, None, (half, third), 6, "point-case", level=level)
print(cert.table().splitlines()[0], f"({len(cert.comparisons)} lattice points)")

cert = qr_check(get_example("p1xp1-su2-diagonal"), None, (half,), 20, "fit-case")
print("SU(2) diagonal:", cert.verdict, "- first rows:")
print("\n".join(cert.table().splitlines()[1:5]))

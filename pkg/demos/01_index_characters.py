"""Equivariant index characters from fixed-point data.

Expands the fixed-point formula for CP^2 with partition functions, checks it
against a brute-force series expansion, and shows the SU(2) multiplicities of
the diagonal action on CP^1 x CP^1 (Clebsch-Gordan).
"""

from qrquasi import Box, dominant_multiplicity, get_example, index_character, truncated_series_oracle

cp2 = get_example("cp2")
for k in range(4):
    box = Box((-1, -1), (k + 1, k + 1))
    char = index_character(cp2, k, box)
    assert char == truncated_series_oracle(cp2, k, box)
    # the lattice points of the dilated simplex, each once
    print(f"CP^2, k={k}: {char.total()} weights, e.g. {char.support[:4]}")

diag = get_example("p1xp1-su2-diagonal")
for k in range(1, 5):
    mult = {lam: dominant_multiplicity(diag, diag.roots, k, (lam,)) for lam in range(2 * k + 1)}
    print(f"V_{k} x V_{k} contains V_j for j in", [j for j, v in mult.items() if v])

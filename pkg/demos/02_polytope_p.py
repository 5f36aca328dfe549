"""The polytope p: components of fixed loci, gamma, and one half-space per component."""

from qrquasi import construct_p, get_example

for name in ("s2-symmetric", "cp2", "p1xp1-su2-diagonal"):
    con = construct_p(get_example(name))
    print(f"{name}: gamma = {[str(x) for x in con.gamma.gamma]}, "
          f"{len(con.components)} components")
    for cert in con.certificates:
        if cert.halfspace is None:
            continue
        n, c = cert.halfspace
        print(f"   vertices {cert.component.vertex_set}: {[str(x) for x in n]} . xi <= {c}"
              f"   <tau, sigma> = {cert.tau_sigma}")
    print("   p has vertices", [tuple(str(x) for x in v) for v in con.p.vertices])

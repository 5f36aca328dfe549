"""Fitting the multiplicity function on the cone over p, and restricting to rays."""

from fractions import Fraction

from qrquasi import construct_p, fit, get_example, multiplicity_function, restrict_to_ray

model = get_example("p1xp1-weight2")
con = construct_p(model)
m = multiplicity_function(model)
qp = fit(m, con.region, degree_bound=2, period_bound=6)
print("period", qp.period, "degree", qp.degree)
for rep, poly in qp.cosets():
    print("  coset", rep, {k: str(v) for k, v in poly.items()})

xi = (Fraction(1, 2), Fraction(1, 3))
ray = restrict_to_ray(qp, xi, con.region)
print(f"on the ray through {[str(x) for x in xi]}: k in {ray.domain_step}Z, values",
      [int(ray(k)) for k in range(ray.domain_step, 8 * ray.domain_step, ray.domain_step)])

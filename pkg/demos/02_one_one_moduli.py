"""Odd quadratic maps on a 1|1 space.

a psi^{12}_1 + b psi^{11}_2 squares to zero exactly when ab = 0, and up to
rescaling the basis there are two nonzero structures.
"""

from liext import GradedSpace, Poly, is_codifferential, psi
from liext.extension import torus_moduli

space = GradedSpace.create("eo")
params = ("a", "b")
a, b = Poly.var(params, "a"), Poly.var(params, "b")

d = psi(space, (1, 2), 1, a) + psi(space, (1, 1), 2, b)
res = is_codifferential(d)
print("d =", d)
print("[d, d] coefficients:", [str(c) for c in res.coefficients()])

for cls in torus_moduli(space):
    print("class:", cls)

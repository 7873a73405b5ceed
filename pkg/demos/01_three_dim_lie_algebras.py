"""Codifferentials on a 0|3 space: which quadratic maps are Lie brackets.

Run: python3 demos/01_three_dim_lie_algebras.py
"""

from liext import GradedSpace, is_codifferential, jacobi_check, psi, bracket
from liext.problem import load_problem
from liext.cli import bundled_fixtures

space = GradedSpace.create("ooo")

# sl2 written as a coderivation: [e1,e2]=e3 and its cyclic shifts
d3 = psi(space, (1, 2), 3) + psi(space, (2, 3), 1) + psi(space, (3, 1), 2)
print("d3 =", d3)
print("[d3, d3] =", bracket(d3, d3))
print("Jacobi by direct evaluation:", jacobi_check(d3))

# a map that is not a bracket: the obstruction tells you which identity breaks
bad = psi(space, (1, 2), 1) + psi(space, (1, 3), 2)
res = is_codifferential(bad)
print("\nbad =", bad)
print("codifferential?", res.ok, " obstruction:", res.obstruction)

# the whole moduli list is a fixture; d(l:m) stays a codifferential symbolically
pf = load_problem(bundled_fixtures() / "ex454.json")
for name in ("d1", "d2", "d3", "dlm"):
    c = pf.cochain(name)
    print(f"{name:4} {str(c):45} codifferential: {bool(is_codifferential(c))}")

"""Extensions of <v1, v2> with [v1, v2] = v1 by a one dimensional module <v3>.

The module structure is lam = b psi^{23}_3.  The cocycle tau = psi^{12}_3 can be
removed by a change of splitting except at b = -1, where the double
cohomology jumps from 0 to 1.
"""

from fractions import Fraction

from liext import Cochain, ExtensionData, GradedSpace, psi
from liext.cohomology import Slice, double_cohomology, hom_m
from liext.extension import apply_beta, semidirect_witness_check, verify_extension

space = GradedSpace.create("ooo", module=[3])
tau = psi(space, (1, 2), 3)
c02 = Slice.of(hom_m(0, 2), parity=1)

for b in (-1, 0, 2, 7):
    delta, lam = psi(space, (1, 2), 1), psi(space, (2, 3), 3, b)
    h = double_cohomology(Cochain(space), delta + lam, c02)
    print(f"b = {b:2}: dim H^(0,2) = {h.dim}, tau is {'a nonzero class' if not h.class_is_zero(tau) else 'a coboundary'}")

# at b = 2 find the change of splitting by hand: beta = x phi^1_3 with x = -c/(1 + b)
b, c = Fraction(2), Fraction(5)
e = ExtensionData.from_parts(space, delta=psi(space, (1, 2), 1), lam=psi(space, (2, 3), 3, b), psi=tau * c)
print("\nextension conditions hold:", verify_extension(e).ok)
beta = Cochain(space, {((0,), 2): -c / (1 + b)})
print("beta =", beta, " semidirect:", semidirect_witness_check(e, beta))
print("after the change of splitting:\n" + str(apply_beta(e, beta)))

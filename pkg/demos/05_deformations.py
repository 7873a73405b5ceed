"""Infinitesimal deformations of delta = psi^{12}_1, lam = b psi^{23}_3, psi = c psi^{12}_3.

The count of parameters is the dimension of the triple cohomology on C^{1,1}
plus that on C^{0,2}.
"""

from liext import ExtensionData, GradedSpace, psi
from liext.deformation import check_infinitesimal_deformation, classify_deformations, construct_zeta

space = GradedSpace.create("ooo", module=[3])


def ext(b, c):
    return ExtensionData.from_parts(space, delta=psi(space, (1, 2), 1), lam=psi(space, (2, 3), 3, b), psi=psi(space, (1, 2), 3, c))


for b, c in ((2, 0), (-1, 0), (-1, 1)):
    rep = classify_deformations(ext(b, c))
    print(f"b = {b:2}, c = {c}: {rep.parameters} parameter(s), dims {rep.dims}")

# eta = r psi^{13}_3 + s psi^{23}_3: the first condition forces r = 0
e = ext(-1, 0)
eta = psi(space, (1, 3), 3, 1) + psi(space, (2, 3), 3, 1)
print("\ncond1 for r = s = 1:", check_infinitesimal_deformation(e, eta, eta * 0).cond1)
print("zeta for eta = psi^{23}_3:", construct_zeta(e, psi(space, (2, 3), 3)).zeta)

"""The 5-dimensional extension with M = <v1, v2, v3> and W = <v4, v5>.

First the extension conditions, whose residuals cut out b2 = b3 = a14 = 0 and
a16 (a17 - 1) = 0.  Then the a17 = 1 branch: for a16 = 0 the cocycle
tau = psi^{45}_1 gives a non-semidirect extension.
"""

from liext.cli import bundled_fixtures
from liext.cohomology import Slice, double_cohomology, hom_m
from liext.extension import semidirect_witness_check, verify_extension
from liext.problem import load_problem

pf = load_problem(bundled_fixtures() / "ex457.json")
report = verify_extension(pf.extension())
print("residual coefficients:")
for c in report.constraints():
    print("  ", c)

tau_file = load_problem(bundled_fixtures() / "ex457_tau.json")
for a19 in (0, 1, 2):
    q = tau_file.at({"a16": 0, "a19": a19, "b1": 1})
    e = q.extension()
    h = double_cohomology(e.mu, e.delta + e.lam, Slice.of(hom_m(0, 2), parity=1))
    print(f"a16 = 0, a19 = {a19}: dim H = {h.dim}, class of tau = {[str(x) for x in h.coordinates(e.psi)]}")

# with a16 = 1 the quadratic term of the beta action removes tau
q = tau_file.at({"a16": 1, "a19": 2, "b1": 1})
print("a16 = 1: semidirect via beta = -phi^5_3:", semidirect_witness_check(q.extension(), q.cochain("unit")))

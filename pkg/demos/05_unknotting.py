"""
Unknotting index: search, certificates and the family theorems
==============================================================

``search_min`` tries costs (n, m) in dictionary order and returns the first
plan it can certify, next to the invariant lower bound.  When the two meet
the value belongs to the knot and not just the diagram.
"""

import json

from vkindex import FamilySpec, UnknottingPlan, certify, parse_gauss_code, search_min, verify_theorem
from vkindex.families import d_qr_regime

vt = parse_gauss_code("O1+O2+U1+U2+")
rep = search_min(vt)
print("virtual trefoil:", rep.interval, rep.level)
print(json.dumps(rep.certificate.to_json())[:120], "...")

cert = certify(vt, UnknottingPlan(change=[2]))
print("plan change={2}:", cert.cost, "verifies:", cert.verify())

# every regime of the piecewise formula
for n, p, q, r in [(3, 7, 0, 2), (2, 5, 1, 0), (3, 7, 4, 0), (2, 9, 5, 0)]:
    report = verify_theorem(FamilySpec("D_qr", n=n, p=p, q=q, r=r))
    print(f"D_qr({n},{p},{q},{r}) {d_qr_regime(n, q, r):>9}: {report.summary()}")

for spec in [FamilySpec("K_lower", m=2, p=7), FamilySpec("D_npm", n=2, p=9, m=1),
             FamilySpec("LinkFamily", k=3, n=2, m=2, p=3)]:
    print(verify_theorem(spec).summary())

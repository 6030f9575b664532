"""
Diagram families
================

Each generator returns a diagram and the profile it is supposed to have.
The profile is checked when the diagram is built; a mismatch raises.
"""

from vkindex import FamilySpec, distinguish, generate, single_virtualization_scan
from vkindex.invariants import writhe_vector

d, prof = generate(FamilySpec("K_upper", m=2, p=3))
print("K_upper(2,3):", writhe_vector(d), "U =", prof.unknotting_index, "plan:", prof.plan_change)

d, prof = generate(FamilySpec("K_lower", m=1, p=5))
print("K_lower(1,5):", writhe_vector(d), "U =", prof.unknotting_index)

# virtualize each crossing once; only d leaves a symmetric vector needing m changes
for row in single_virtualization_scan(m=1, p=5):
    print(f"  {row.label:>3} case {row.case} {row.writhe} bound {row.lower_bound}")

d, prof = generate(FamilySpec("D_qr", n=3, p=5, q=0, r=0))
print("D_qr(3,5,0,0) c indices:", prof.by_class("c"))

d, prof = generate(FamilySpec("D_npm", n=2, p=9, m=2))
print("D_npm(2,9,2):", d.num_chords, "crossings, U =", prof.unknotting_index)

d, prof = generate(FamilySpec("LinkFamily", k=4, n=2, m=1, p=3))
print("link:", d.num_components, "components, span", prof.span, "U =", prof.unknotting_index)

print(distinguish(FamilySpec("K_upper", m=2, p=3), FamilySpec("K_upper", m=2, p=5)))
print(distinguish(FamilySpec("D_npm", n=1, p=7, m=1), FamilySpec("D_npm", n=1, p=9, m=1)))

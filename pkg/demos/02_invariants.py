"""
Index, writhe vector and lower bounds
=====================================

The index of a chord counts the signed endpoints met walking from its under
endpoint to its over endpoint.  ``J_n`` sums the signs of the chords of index
n.  A crossing change flips one index, so ``J_n - J_-n`` only moves under
virtualization; this gives the lower bound on the unknotting index.
"""

from vkindex import (
    affine_index_polynomial,
    indices,
    lower_bound_knot,
    lower_bound_link,
    minimal_crossing_check,
    parse_gauss_code,
    span_total,
    writhe_vector,
)

vt = parse_gauss_code("O1+O2+U1+U2+")
print("indices:", indices(vt))
print("writhe vector:", writhe_vector(vt))
print("affine index polynomial:", affine_index_polynomial(vt))
print("lower bound:", lower_bound_knot(vt))

rep = minimal_crossing_check(vt)
print("minimal:", rep.minimal, "crossing number", rep.crossing_number)

# an asymmetric writhe vector forces a virtualization
k = parse_gauss_code("O1+O2+U1+O3-U2+U3-")
w = writhe_vector(k)
print(w, "symmetric" if w.is_symmetric() else "asymmetric", "->", lower_bound_knot(k))

# links: span counts linking crossings that cannot be removed by changes
link = parse_gauss_code("O1+O2+|U1+U2+")
print("span:", span_total(link).total, "bound:", lower_bound_link(link))

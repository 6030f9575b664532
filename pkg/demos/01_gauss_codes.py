"""
Gauss codes and diagrams
========================

A diagram is one word per component.  Each crossing is a chord with an over
(``O``) and an under (``U``) endpoint and a sign.  Virtual crossings leave no
trace, so virtualizing a crossing deletes its chord.
"""

from vkindex import crossing_change, parse_gauss_code, serialize, to_json, virtualize

# the virtual trefoil: two positive crossings, interleaved
vt = parse_gauss_code("O1+O2+U1+U2+")
print("chords:", vt.num_chords, "components:", vt.num_components)

# canonical form forgets rotation and chord names
same = parse_gauss_code("U7+U3+O7+O3+")
print(serialize(vt), "==", serialize(same), same.is_isomorphic(vt))

# a crossing change swaps O/U and flips the sign
print("changed:", serialize(crossing_change(vt, 1), canonical=False))
print("virtualized:", serialize(virtualize(vt, 2), canonical=False))

# links separate components with "|"; empty components are trivial circles
hopf = parse_gauss_code("O1+U2+|U1+O2+|")
print(hopf.num_components, "components, linking chords", hopf.linking_chords())
print(to_json(hopf)["components"][0])

# parse errors say where they happened
try:
    parse_gauss_code("O1+U3")
except ValueError as exc:
    print("error:", exc)

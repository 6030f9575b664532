"""
Reidemeister moves and triviality search
========================================

Moves act directly on Gauss codes.  ``is_trivial`` answers "yes" with a
replayable trace or "inconclusive"; it never claims a knot is nontrivial.
Invariants do that.
"""

from vkindex import Budget, find_moves, flat_is_trivial, greedy_simplify, is_trivial, parse_gauss_code
from vkindex.moves import trace_to_json

d = parse_gauss_code("O1+O2-U2-U1+")  # a kink nested in a kink
for m in find_moves(d):
    print(m.kind, m.site)
trace = greedy_simplify(d)
print("greedy steps:", len(trace), "left:", trace.final.num_chords)

# closure of the braid s1 s2 s1 s2^-1 s1^-1 s2^-1: nothing cancels until an R3
braid = parse_gauss_code("O1+O2+O4-O5-|U1+O3+U4-O6-|U2+U3+U5-U6-")
print("reducing moves:", [m.kind for m in find_moves(braid) if m.kind != "R3"])
res = is_trivial(braid)
print("verdict:", res.verdict, "moves:", [m.kind for m in res.trace.steps])
print("trace replays:", res.trace.replays())

# the virtual trefoil cannot be unknotted, so the search stays inconclusive
vt = parse_gauss_code("O1+O2+U1+U2+")
print("virtual trefoil:", is_trivial(vt, Budget(2, 64, 2000)).verdict)
# its flat shadow is trivial, since a flat crossing change is free
print("flat shadow:", flat_is_trivial(vt).verdict)

print(trace_to_json(trace)["steps"][0])

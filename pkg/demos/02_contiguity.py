"""
Contiguity classes of simplicial maps
=====================================

Decide whether two maps lie in one contiguity class and replay the chain.
"""

from tcx import (
    SimplicialMap,
    class_contains_constant,
    identity,
    is_contiguous,
    same_contiguity_class,
    verify_chain,
)
from tcx.complex import constant_map, generated_subcomplex
from tcx.io import load_fixture

H = load_fixture("hollow_triangle")

# Rotating the triangle is not contiguous to the identity: edge ab goes to bc.
rot = SimplicialMap(H, H, (1, 2, 0))
print("identity ~c rotation:", is_contiguous(identity(H), rot))

# The identity cannot be moved to a constant map: the search exhausts the class.
d = same_contiguity_class(identity(H), constant_map(H, H, 0))
print("identity ~ constant:", d.verdict, f"({d.states_explored} states)")

# A path of two edges can be pulled to a point.
path = generated_subcomplex(H, [H.simplex("ab"), H.simplex("ac")])
d = class_contains_constant(path.inclusion)
print("path inclusion ~ constant:", d.verdict)
for m in d.chain:
    print("  ", m.as_names())
print("chain replays:", bool(verify_chain(d.chain, start=path.inclusion)))

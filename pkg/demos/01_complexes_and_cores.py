"""
Complexes, dominated vertices and cores
=======================================

Build a few small complexes, strip dominated vertices, and compare strong
homotopy types.
"""

from tcx import core, is_strongly_collapsible, normalize, same_strong_homotopy_type, strong_expansion
from tcx.io import load_fixture, serialize

# A complex is given by its facets; duplicates and non-maximal sets vanish.
K = normalize([["a", "b"], ["b", "c"], ["a", "c"], ["a", "b"]])
print(serialize(K, "the hollow triangle"))

# The cone over it collapses to a point, one dominated vertex at a time.
cone = load_fixture("cone")
c = core(cone)
for v, d in c.sequence:
    print(f"delete {cone.labels[v]}, dominated by {cone.labels[d]}")
print("cone strongly collapsible:", is_strongly_collapsible(cone))

# The hollow triangle has no dominated vertex: it is its own core.
print("hollow triangle is a core:", core(K).core == K)

# Figure 1 is a triangulated disc that is still not strongly collapsible.
fig = load_fixture("figure1")
print("figure1 strongly collapsible:", is_strongly_collapsible(fig))

# A strong expansion adds a dominated vertex; the strong homotopy type stays.
E = strong_expansion(K, seed=3)
print(serialize(E, "an expansion"))
phi, psi = same_strong_homotopy_type(K, E)
print("K -> E:", phi.as_names())
print("E -> K:", psi.as_names())

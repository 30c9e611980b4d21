"""
Simplicial LS category and discrete topological complexity
==========================================================

Compute scat and TC_n as intervals with replayable certificates.
"""

import json

from tcx import SearchBudget, power, scat, tc, verify_cover
from tcx.io import certificate_to_json, load_fixture

budget = SearchBudget(max_states=1_000_000, max_millis=20_000)
H = load_fixture("hollow_triangle")

s = scat(H, budget)
print(s, "-", s.refutation["detail"])
for el in s.certificate.elements:
    print("  categorical:", [H.names(g) for g in el.generators])

# TC_2 covers the 9 facets of the square by 2-Farber subcomplexes.
t = tc(H, 2, budget)
print(t, "-", t.refutation["detail"])
print("certificate verifies:", bool(verify_cover(H, 2, t.certificate)))

# It sits between scat(K) and scat(K^2).
s2 = scat(power(H, 2).underlying, budget, name="scat(K^2)")
print(s2)

# Certificates are plain JSON with vertex names.
print(json.dumps(certificate_to_json(s.certificate))[:200], "...")

# The disc of figure 1: scat is 1, so TC_2 is at least 1.
fig = load_fixture("figure1")
print(scat(fig, budget))
print(tc(fig, 2, SearchBudget(1_000_000, 10_000)))

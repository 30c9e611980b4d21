"""
Checking the inequalities between scat and TC_n
===============================================

Run the inequality suite on the bundled fixtures and print each comparison.
Values left open by the budget are compared as intervals.
"""

from tcx import SearchBudget, inequality_suite
from tcx.io import load_fixture

budget = SearchBudget(max_states=1_000_000, max_millis=5_000)

for name in ["full_triangle", "hollow_triangle", "figure1"]:
    K = load_fixture(name)
    report = inequality_suite(K, n_max=2, budget=budget)
    print(f"== {name} (collapsible: {report.collapsible})")
    for q in report.quantities.values():
        print(f"   {q}  [{q.status}]")
    for check in report.checks:
        print("  ", check.line())
    print()

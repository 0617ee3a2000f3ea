"""Candidate-slope reports for every goal on one layered solid torus.

    python3 demos/candidate_slopes.py
"""

from dehnkit.layered import build_lst
from dehnkit.reports import GOALS, candidates

tri = build_lst("3/7").tri
for goal in GOALS:
    report = candidates(tri, goal)
    print(f"[{goal}]")
    for c in report.candidates:
        kinds = ", ".join(sorted({p.kind for p in c.provenance}))
        print(f"  {c.pq:>6}  {tuple(c.slope)}  {kinds}")
    for note in report.notes:
        print("  note:", note)
    for caveat in report.caveats:
        print("  external:", caveat)

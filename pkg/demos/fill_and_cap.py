"""Dehn fill a layered solid torus along its own meridian and along another
slope, then cap surfaces off inside the filling.

    python3 demos/fill_and_cap.py
"""

from dehnkit.filling import cap_surface, fill, line_of, lst_vertex_link
from dehnkit.layered import build_lst
from dehnkit.normal import summarize

base = build_lst("2/5")

# along the meridian the capped meridian disk is a sphere
f = fill(base.tri, base.meridian)
sphere = summarize(f.tri, cap_surface(f, base.meridian_disk))
print(f"fill along {base.meridian}: {f.tri.size} tetrahedra")
print("  capped meridian disk:", sphere.describe(), "separating:", sphere.separating)

# the boundary-parallel disk caps to the link of the vertex for any slope
g = fill(base.tri, "1/1")
link = cap_surface(g, lst_vertex_link(base))
print("fill along 1/1, capped vertex link:", summarize(g.tri, link).describe())

print("slopes at distance one from 2/5:", line_of((2, 5), 6))

"""Build a few layered solid tori and look at their meridian disks.

    python3 demos/layered_tori.py
"""

from dehnkit import torus as tc
from dehnkit.layered import build_lst, classify_planar
from dehnkit.normal import summarize

for target in ["2/1", "1/0", "3/7", "-5/8"]:
    lst = build_lst(target)
    disk = summarize(lst.tri, lst.meridian_disk)
    print(f"{target:>5}: {lst.t} tetrahedra, layers {list(lst.layers)}")
    print(f"       descent {' -> '.join(map(str, lst.descent))}")
    print(f"       meridian {lst.meridian}, intersections {tc.to_intersections(lst.meridian)}")
    print(f"       disk weight {disk.weight}, {disk.describe()}")

# every connected planar surface up to 8t pieces is a meridian disk,
# a boundary-parallel disk, or an annulus
audit = classify_planar(build_lst("3/7"))
for pc in audit.classes:
    if not pc.witness.is_planar:
        continue
    print(pc.kind, tuple(pc.witness.boundary[0]), "weight", pc.witness.weight)
print("audit ok:", audit.ok)

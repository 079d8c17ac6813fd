"""Print the Schur decompositions of H_{k,1} for Comm, Assoc and Lie.

Computed on the dihedral side; pass --graph to also decompose the graph
complexes directly (slower).
"""
import sys

from hairy.complex import hairy_decomposition
from hairy.dihedral import HD, factory, hd_decomposition
from hairy.rep import format_decomposition

GRAPH = "--graph" in sys.argv

for op, top in (("comm", 5), ("assoc", 4), ("lie", 4)):
    print(f"# {op}")
    alg = factory(op, max_grading=top)
    for d in range(1, top + 1):
        for k in range(1, d + 1):
            dec = hd_decomposition(alg, HD, k - 1, d)
            if not dec:
                continue
            line = f"k={k} degree={d}  {format_decomposition(dec)}"
            if GRAPH and d <= 4:
                other = hairy_decomposition(op, d, 1, k)
                line += "  graph: " + ("same" if other == dec else format_decomposition(other))
            print(line)

"""Two looped Lie vertices joined by three edges, evaluated for n = 1..4."""
from hairy.maps import evaluate_assembly, two_loops_three_edges
from hairy.symp import SymplecticSpace

g, zetas = two_loops_three_edges()
for n in range(1, 5):
    print(n, evaluate_assembly(zetas, g, SymplecticSpace(n)))

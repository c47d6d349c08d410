"""
Schema trees and their homology
===============================

A tree with exponent r at each node presents a group whose presentation
complex has diagonal boundary map, so H2 vanishes and H1 is the direct sum of
the Z/r. Open leaves stand for free generators.
"""

import random

from jplus import JSet
from jplus.formats import format_tree, parse_tree
from jplus.gamma import random_tree, schema_homology, schema_presentation, universal_truncation
from jplus.presentations import homology

ALL, NONE = JSet.all(), JSet.empty()

t = parse_tree("(4 (2) (4))")
P = schema_presentation(t, ALL)
print(P.gens)
for rho in P.relators:
    print("  ", rho)
print("integral:", schema_homology(t, ALL, NONE))
print("rational:", schema_homology(t, ALL))

# truncation with open leaves leaves free rank behind
t_open = parse_tree("(4 (open) (open))")
print(format_tree(t_open), schema_homology(t_open, ALL, NONE))

# only 2-numbers are allowed when J = {2}
try:
    schema_presentation(parse_tree("(6)"), JSet.of([2]))
except ValueError as exc:
    print("rejected:", exc)

# a batch of random trees
rng = random.Random(0)
trees = [random_tree(rng, [1, 2, 3, 4, 8, 9]) for _ in range(20)]
for tr in trees[:5]:
    H1, H2 = schema_homology(tr, ALL, NONE)
    print(f"{tr.size():3} nodes  H1 = {H1}  H2 rank = {H2}")

U = universal_truncation(trees, ALL)
h = homology(U, NONE)
print(f"free product of 20 trees: {len(U.gens)} generators, {len(h.H1.torsion)} cyclic factors "
      f"in H1 (largest Z/{max(h.H1.torsion)}), H2 rank = {h.H2_rank}")

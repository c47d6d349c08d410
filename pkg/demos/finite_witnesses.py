"""
Witness graphs in finite groups
===============================

An element lies in the radical exactly when it carries a witness graph: each
node's power times a product of commutators of other nodes is trivial.
"""

from jplus import JSet
from jplus.catalog import named_group
from jplus.gamma import check_witness, unfold, witness_from_subgroup, witnessed_subgroup

G = named_group("SL(2,3)")
J = JSet.of([2])
W = witnessed_subgroup(G, J)
print(G.name, "witnessed subgroup for J = {2}: order", W.order)

# an element of order 4: its square is a commutator, so the graph needs pairs
orders = G.element_orders()
s = next(a for a in W.members if orders[a] == 4)
g = witness_from_subgroup(G, J, s)
for v, node in enumerate(g.nodes):
    print(f"  node {v}: {G.labels[node.element]:>24}  r = {node.r}  pairs = {node.pairs}")
print("valid:", check_witness(G, g, J))

# relabel the nodes: validity does not depend on the numbering
perm = list(reversed(range(len(g.nodes))))
print("valid after relabelling:", check_witness(G, g.reindexed(perm), J))

tree, images = unfold(g, 2)
print("unfolded to depth 2:", tree.size(), "tree nodes")

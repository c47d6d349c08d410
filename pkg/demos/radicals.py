"""
Radicals and nullification of finite groups
===========================================

For a set J of primes the radical is the largest normal subgroup whose
abelianization is J-torsion. Three independent computations are compared.
"""

from jplus import JSet
from jplus.catalog import catalog, named_group
from jplus.fingroup import (
    abelianization, brute_force_radical, derived_series, gamma_radical, nullification,
)
from jplus.gamma import witnessed_subgroup

J_VALUES = ["none", "2", "3", "2,3", "all"]

G = named_group("S4")
print(G.name, "order", G.order)
for text in J_VALUES:
    J = JSet.parse(text)
    R = gamma_radical(G, J)
    Q = nullification(G, J)
    print(f"  J = {text:5}  radical order {R.order:3}  quotient order {Q.order:3}  Q^ab = {abelianization(Q)}")

# the descending chain for J = none is the derived series
print("derived series of S4:", [N.order for N in derived_series(G)])

# SL(2,3): for J = {2} the radical is the quaternion subgroup, leaving a cyclic quotient of order 3
H = named_group("SL(2,3)")
for text in J_VALUES:
    print(f"  SL(2,3), J = {text:5}: radical order {gamma_radical(H, JSet.parse(text)).order}")

# agreement across the whole catalog
disagree = 0
for G in catalog():
    for text in J_VALUES:
        J = JSet.parse(text)
        a = gamma_radical(G, J).members
        b = brute_force_radical(G, J).members
        c = witnessed_subgroup(G, J).members
        disagree += not (a == b == c)
print(len(catalog()), "groups,", len(J_VALUES), "prime sets, disagreements:", disagree)

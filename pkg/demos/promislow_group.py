"""
The Promislow group
===================

Two generators, two relations, abelianization Z/4 + Z/4. Rationally it is
acyclic, and the identities x^4 = [x^2, y^-1] and y^-4 = [x^-1, y^2] can be
checked by free reduction alone.
"""

from pathlib import Path

import jplus
from jplus.formats import parse_cert, parse_grp, parse_wit, resolve_witness
from jplus.gamma import check_witness, unfold
from jplus.presentations import presentation_complex

data = Path(jplus.__file__).parent / "data"
P = parse_grp((data / "promislow.grp").read_text())
print(P.name, P.gens, [str(r) for r in P.relators])

# the boundary map of the presentation complex: rows are generators, columns relators
d2 = presentation_complex(P).d2
print("d2 =", d2.to_rows())

for J in ["none", "2", "3", "all"]:
    h = jplus.homology(P, jplus.JSet.parse(J))
    print(f"J = {J:4}  H1 = {h.H1}  H2 rank = {h.H2_rank}")

# certificates: products of conjugated relators that freely reduce to the claim
for name in ["promislow_x4", "promislow_y4", "promislow_x4_bad"]:
    cert = parse_cert((data / f"{name}.cert").read_text())
    print(name, cert.claim, "->", jplus.check_certificate(P, cert))

# a cyclic witness graph; every node relation is backed by one of the certificates
spec = parse_wit((data / "promislow_phi.wit").read_text())
phi = resolve_witness(spec, P, data)
for v, node in enumerate(phi.nodes):
    print(f"  node {v}: ({node.element})^{node.r} with pairs {node.pairs}")
print("witness valid:", check_witness(P, phi, jplus.JSet.all()))

# unfolding the graph gives a finite piece of the schema tree it encodes
tree, images = unfold(phi, 3)
print("unfolded tree has", tree.size(), "nodes, r values", sorted({n.r for _, n in tree.walk() if n.r}))
